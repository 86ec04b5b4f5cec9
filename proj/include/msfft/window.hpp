#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "msfft/fft.hpp"

namespace msfft {

// Time-domain filter whose frequency response is ~1 on the pass band
// |i| <= L/2, <= delta beyond |i| >= L, and bounded by 1+delta in the
// transition band. Built as a frequency-domain boxcar smoothed by a
// Gaussian; the time support w is the smallest odd length whose
// truncation still passes the three-band check.
struct FlatWindow {
    int64_t n = 0;        // signal length
    int64_t b = 0;        // bucket count
    int64_t l_width = 0;  // pass width L = n/b
    int64_t w = 0;        // time support (odd)
    double delta = 0.0;   // leakage bound
    double eps = 0.0;         // L/n
    double eps_prime = 0.0;   // L/(2n)
    // Real symmetric taps, g_time[(w-1)/2 + t] = G_t for |t| <= (w-1)/2.
    std::vector<double> g_time;

    // Frequency response at integer i (mod n); real because the filter
    // is real and even. Matches dft_dense of the zero-padded taps.
    double response_at(int64_t i) const;
};

// Constructs and verifies a window. Throws std::invalid_argument when the
// parameters are out of range or no support w <= n-1 passes the band check.
FlatWindow design_flat_window(int64_t n, int64_t b, double delta);

// Response accessor used by bucket prediction and value estimation.
cplx window_response(const FlatWindow& win, int64_t i);

// Process-wide cache keyed by (n, b, delta); construction happens once,
// lookups are synchronized.
std::shared_ptr<const FlatWindow> get_flat_window(int64_t n, int64_t b, double delta);

}  // namespace msfft
