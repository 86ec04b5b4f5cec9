#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msfft/locate.hpp"
#include "msfft/signal.hpp"

namespace msfft {

struct PhaseErrorSample {
    double dphi = 0.0;  // circular distance, in [0, pi]
    double log10_dphi = 0.0;
};

struct PhaseErrorHistogram {
    double snr_db = 0.0;
    int64_t n = 0, k = 0, l_width = 0;
    int64_t trials = 0;
    // Mass per 0.1-wide log10 bin over [-6, 1); out-of-range samples are
    // clamped into the edge bins so the masses sum to 1.
    std::vector<double> bin_mass;
    double p50 = 0.0, p99 = 0.0, max = 0.0;

    static constexpr double kBinLo = -6.0;
    static constexpr double kBinWidth = 0.1;
    static constexpr int kBinCount = 70;
    static double bin_center(int i) { return kBinLo + kBinWidth * (i + 0.5); }
};

// One accepted trial with everything the locator-side experiments need.
struct PhaseTrial {
    double dphi = 0.0;
    int64_t u = 0;        // true permuted position of the isolated tone
    int64_t bucket = 0;
    cplx y0, y_tau;
    int64_t tau = 0;
    double measured_phi = 0.0;
    double true_phi = 0.0;
};

// Draws a K-tone signal with noise at snr_db, bucketizes at tau = 0 and
// tau = round(n/L), and measures the phase error of a bucket holding
// exactly one tone. Returns nullopt when b random bucket picks find no
// isolated tone (caller retries).
std::optional<PhaseTrial> sample_phase_trial(int64_t n, int64_t k, int64_t b,
                                             double snr_db, Rng& rng);

std::optional<PhaseErrorSample> sample_phase_error(int64_t n, int64_t k, int64_t b,
                                                   double snr_db, Rng& rng);

// Accepted-trial histograms per SNR, deterministic per seed.
std::vector<PhaseErrorHistogram> run_phase_experiment(int64_t n, int64_t k, int64_t b,
                                                      const std::vector<double>& snr_list,
                                                      int64_t trials, uint64_t seed);

}  // namespace msfft
