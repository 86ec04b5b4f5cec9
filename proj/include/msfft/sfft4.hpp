#pragma once

#include <cstdint>
#include <vector>

#include "msfft/bucketize.hpp"
#include "msfft/locate.hpp"
#include "msfft/signal.hpp"

namespace msfft {

// Per-iteration bookkeeping: expected residual sparsity and bucket count
// halve as recovery progresses, spectrum estimates accumulate.
struct IterationState {
    int m = 1;
    int64_t k_m = 0;
    int64_t b_m = 0;
    double delta = 1e-8;
    SparseSpectrum accumulated;

    // Plan executed by the latest iteration (for audit/tests).
    int64_t sigma_m = 1;
    std::vector<int64_t> tau_plan;
    int64_t w_m = 0;
    int stages_m = 0;

    // Running totals across iterations.
    int64_t samples_round_sum = 0;  // sum of (R_m + 1) * w_m
    double runtime_ms = 0.0;
};

struct TransformStats {
    int64_t samples_used = 0;       // distinct time indices read
    int64_t samples_round_sum = 0;  // per-round cost, no cross-round dedup
    double sample_fraction = 0.0;   // samples_used / n
    double runtime_ms = 0.0;
    int iterations = 0;
    int64_t b_first = 0;
    std::vector<int> stage_counts;  // R_m per iteration
};

struct SfftResult {
    SparseSpectrum spectrum;
    TransformStats stats;
};

// Coefficient estimate from the tau=0 bucket value of a located tone.
// Throws when |G_{iL-u}| < 0.5, i.e. the location fell outside the
// bucket's pass region.
cplx estimate_value(cplx y0_bucket, int64_t u, const FlatWindow& win);

// One encode / subtract-known / locate / estimate pass. Returns the tones
// found this iteration and folds them into state.accumulated.
SparseSpectrum run_iteration(const ComplexSignal& x, IterationState& state,
                             const MultiscaleConfig& cfg, Rng& rng,
                             SampleTracker* tracker = nullptr);

// Initial bucket count: smallest power of two >= 4K capped at n/4, then
// halved until the window construction is feasible at this delta.
int64_t initial_bucket_count(int64_t n, int64_t k, double delta);

// Full transform: iterates with the halving schedule, prunes to the K
// largest coefficients. Deterministic for fixed (x, k, cfg, seed, delta).
SfftResult sfft4(const ComplexSignal& x, int64_t k, const MultiscaleConfig& cfg,
                 uint64_t seed, double delta = 1e-8);

}  // namespace msfft
