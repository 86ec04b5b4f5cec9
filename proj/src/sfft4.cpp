#include "msfft/sfft4.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace msfft {

namespace {

int64_t ceil_log2(int64_t k) {
    int64_t r = 0;
    while ((int64_t{1} << r) < k) ++r;
    return r;
}

int64_t next_bucket_count(int64_t b_m) {
    constexpr int64_t kBucketFloor = 32;
    return b_m > kBucketFloor ? b_m / 2 : b_m;
}

}  // namespace

cplx estimate_value(cplx y0_bucket, int64_t u, const FlatWindow& win) {
    // Divisor G_{iL-u} for the owning bucket i = round(u/L); the offset is
    // evaluated mod n, so the unreduced bucket index works directly.
    const int64_t i = static_cast<int64_t>(std::floor(
        static_cast<double>(u) / static_cast<double>(win.l_width) + 0.5));
    const double g = win.response_at(i * win.l_width - u);
    if (std::fabs(g) < 0.5)
        throw std::domain_error("estimate_value: located position outside the pass region");
    return y0_bucket / g;
}

SparseSpectrum run_iteration(const ComplexSignal& x, IterationState& state,
                             const MultiscaleConfig& cfg, Rng& rng,
                             SampleTracker* tracker) {
    cfg.validate();
    x.validate();
    const int64_t n = x.n;
    const auto win = get_flat_window(n, state.b_m, state.delta);
    const int64_t l_width = win->l_width;

    // Permutation plan: fresh sigma, tau = 0 plus one offset per stage.
    PermutationParams base = random_params(n, rng, 0);
    const int stages = stage_count(static_cast<double>(l_width), cfg);
    std::vector<int64_t> taus{0};
    double len = static_cast<double>(l_width);
    for (int s = 0; s < stages; ++s) {
        taus.push_back(tau_schedule(len, n));
        len *= (cfg.q + 1.0) / static_cast<double>(cfg.l);
    }

    state.sigma_m = base.sigma;
    state.tau_plan = taus;
    state.w_m = win->w;
    state.stages_m = stages;

    // Encode, then remove the contribution of everything already known.
    std::vector<BucketSet> rounds;
    rounds.reserve(taus.size());
    for (int64_t tau : taus) {
        PermutationParams p = base;
        p.tau = tau;
        BucketSet set = bucketize(x, *win, p, tracker);
        if (!state.accumulated.entries.empty())
            set = subtract(set, predict_buckets(state.accumulated, *win, p));
        rounds.push_back(std::move(set));
    }
    state.samples_round_sum += static_cast<int64_t>(taus.size()) * win->w;

    // Residual buckets worth decoding: the largest tau=0 magnitudes above
    // a relative floor tied to the k_m-th largest.
    const int64_t budget = std::min(state.k_m, state.b_m);
    std::vector<int64_t> order(static_cast<size_t>(state.b_m));
    std::iota(order.begin(), order.end(), 0);
    const auto& y0 = rounds[0].values;
    std::stable_sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
        return std::abs(y0[static_cast<size_t>(a)]) > std::abs(y0[static_cast<size_t>(b)]);
    });
    const double kth = std::abs(y0[static_cast<size_t>(order[static_cast<size_t>(budget - 1)])]);
    const double threshold = 0.2 * kth;

    SparseSpectrum found;
    found.n = n;
    for (int64_t rank = 0; rank < budget; ++rank) {
        const int64_t bucket = order[static_cast<size_t>(rank)];
        if (!(std::abs(y0[static_cast<size_t>(bucket)]) > threshold)) continue;
        const auto outcome = locate_frequency(bucket, rounds, cfg, *win);
        if (!outcome) continue;  // empty or aliased; later iterations retry
        const int64_t u = outcome->u;
        cplx value;
        try {
            value = estimate_value(y0[static_cast<size_t>(bucket)], u, *win);
        } catch (const std::domain_error&) {
            continue;
        }
        const int64_t f = (base.sigma_inv * u) % n;
        found.entries[f] += value;
    }

    for (const auto& [f, c] : found.entries) state.accumulated.entries[f] += c;
    state.accumulated.n = n;

    // Halving schedule for the next round of work.
    state.k_m = (state.k_m + 1) / 2;
    state.b_m = next_bucket_count(state.b_m);
    ++state.m;
    return found;
}

int64_t initial_bucket_count(int64_t n, int64_t k, double delta) {
    int64_t b = 4;
    while (b < 4 * k) b *= 2;
    b = std::min(b, n / 4);
    b = std::max<int64_t>(b, 4);
    for (;;) {
        try {
            get_flat_window(n, b, delta);
            return b;
        } catch (const std::invalid_argument&) {
            if (b <= 4) throw;
            b /= 2;
        }
    }
}

SfftResult sfft4(const ComplexSignal& x, int64_t k, const MultiscaleConfig& cfg,
                 uint64_t seed, double delta) {
    x.validate();
    cfg.validate();
    if (k < 1 || k > x.n / 8) throw std::invalid_argument("sfft4: need 1 <= K <= n/8");

    const int64_t n = x.n;
    const int iter_cap = static_cast<int>(ceil_log2(k)) + 2;

    IterationState state;
    state.k_m = k;
    state.b_m = initial_bucket_count(n, k, delta);
    state.delta = delta;
    state.accumulated.n = n;

    // Resolve every window in the schedule up front so construction never
    // lands inside the timed region.
    {
        int64_t b = state.b_m;
        for (int m = 0; m < iter_cap; ++m) {
            get_flat_window(n, b, delta);
            b = next_bucket_count(b);
        }
    }

    SfftResult result;
    result.stats.b_first = state.b_m;
    SampleTracker tracker(n);
    Rng rng(seed);

    const auto t0 = std::chrono::steady_clock::now();
    for (int m = 0; m < iter_cap && state.k_m >= 1; ++m) {
        run_iteration(x, state, cfg, rng, &tracker);
        result.stats.stage_counts.push_back(state.stages_m);
        ++result.stats.iterations;
    }
    const auto t1 = std::chrono::steady_clock::now();

    // K-sparse contract: keep the K strongest accumulated coefficients.
    std::vector<std::pair<int64_t, cplx>> entries(state.accumulated.entries.begin(),
                                                  state.accumulated.entries.end());
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::abs(a.second) > std::abs(b.second);
    });
    if (static_cast<int64_t>(entries.size()) > k) entries.resize(static_cast<size_t>(k));

    result.spectrum.n = n;
    for (const auto& [f, c] : entries) result.spectrum.entries[f] = c;

    result.stats.samples_used = tracker.distinct;
    result.stats.samples_round_sum = state.samples_round_sum;
    result.stats.sample_fraction =
        static_cast<double>(tracker.distinct) / static_cast<double>(n);
    result.stats.runtime_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return result;
}

}  // namespace msfft
