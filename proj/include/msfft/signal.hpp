#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "msfft/fft.hpp"

namespace msfft {

// Length-n complex time-domain signal, n a power of two >= 4.
struct ComplexSignal {
    int64_t n = 0;
    std::vector<cplx> samples;

    void validate() const;
};

// Sparse frequency-domain description: position -> coefficient.
// Serves both as ground truth for generated signals and as the
// transform output.
struct SparseSpectrum {
    int64_t n = 0;
    std::map<int64_t, cplx> entries;

    void validate() const;
};

struct EvalMetrics {
    int64_t l0_err = 0;           // coefficients off by more than 1e-6
    double l1_err = 0.0;          // mean absolute coefficient error (per k)
    double l2_err = 0.0;          // RMS coefficient error (per k)
    double runtime_ms = 0.0;
    int64_t samples_used = 0;     // distinct time indices read
    double sample_fraction = 0.0; // samples_used / n
};

// Forward transform with the 1/n factor: out_i = (1/n) sum_j x_j w^{ij},
// w = e^{-2pi i/n}. O(n log n).
std::vector<cplx> dft_dense(const ComplexSignal& x);

// Exact inverse of dft_dense (unnormalized inverse kernel).
ComplexSignal idft_dense(const std::vector<cplx>& spectrum);

// Literal O(n^2) evaluation of the same sum, n <= 1024. Reference for
// the fast path.
std::vector<cplx> dft_naive(const ComplexSignal& x);

// x_j = sum_{(f,c)} c w^{-jf}, so dft_dense(synthesize(s)) reproduces s
// on its support and ~0 elsewhere.
ComplexSignal synthesize(const SparseSpectrum& spec);

// k distinct positions drawn uniformly without replacement, unit-magnitude
// coefficients with uniform random phase.
SparseSpectrum random_sparse_spectrum(int64_t n, int64_t k, class Rng& rng);

// Signal + ground truth for the spectrum above. Deterministic per seed.
std::pair<ComplexSignal, SparseSpectrum> generate_test_signal(int64_t n, int64_t k,
                                                              uint64_t seed);

// Adds complex white Gaussian noise scaled so the realized time-domain
// power ratio matches snr_db exactly. +infinity returns x unchanged.
ComplexSignal add_awgn(const ComplexSignal& x, double snr_db, uint64_t seed);

// Error metrics over the union of supports; absent entries read as zero.
// l1 = (1/k) sum |d|, l2 = sqrt((1/k) sum |d|^2), l0 = #{|d| > 1e-6}.
EvalMetrics error_metrics(const SparseSpectrum& truth, const SparseSpectrum& estimate,
                          int64_t k);

}  // namespace msfft
