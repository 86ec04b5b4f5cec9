#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msfft/fft.hpp"
#include "msfft/rng.hpp"
#include "msfft/signal.hpp"
#include "msfft/window.hpp"

namespace msfft {

// Spectrum permutation parameters: x'_j = x_{sigma (j - tau) mod n}.
// sigma odd guarantees invertibility for power-of-two n.
struct PermutationParams {
    int64_t sigma = 1;
    int64_t sigma_inv = 1;
    int64_t tau = 0;
};

// One bucketization round: b filtered spectrum values plus the
// permutation that produced them and the exact sample cost.
struct BucketSet {
    int64_t n = 0;
    int64_t b = 0;
    std::vector<cplx> values;
    PermutationParams params;
    int64_t samples_read = 0;
};

// Tracks distinct time indices touched across rounds of one transform.
struct SampleTracker {
    std::vector<uint8_t> seen;
    int64_t distinct = 0;

    explicit SampleTracker(int64_t n) : seen(static_cast<size_t>(n), 0) {}
    void touch(int64_t idx) {
        if (!seen[static_cast<size_t>(idx)]) {
            seen[static_cast<size_t>(idx)] = 1;
            ++distinct;
        }
    }
};

// Inverse of sigma modulo n (extended Euclid); sigma must be odd.
int64_t mod_inverse(int64_t sigma, int64_t n);

// sigma uniform over odd residues in [1, n); tau uniform in [0, n)
// unless overridden by the caller's schedule.
PermutationParams random_params(int64_t n, Rng& rng,
                                std::optional<int64_t> tau_override = std::nullopt);

// Folds the w filter taps against the permuted signal and takes a
// b-point transform; reads exactly w distinct time indices of x.
BucketSet bucketize(const ComplexSignal& x, const FlatWindow& win,
                    const PermutationParams& params, SampleTracker* tracker = nullptr);

// Same fold driven by an arbitrary sample accessor (index -> value);
// used where materializing the signal would dominate the cost. The
// accessor is invoked exactly once per filter tap, in increasing tap
// order, so stateful stepping evaluators are safe.
template <class Sampler>
BucketSet bucketize_fn(int64_t n, Sampler&& sample, const FlatWindow& win,
                       const PermutationParams& params) {
    const int64_t b = win.b;
    const int64_t h = (win.w - 1) / 2;
    std::vector<cplx> fold(b, cplx(0.0, 0.0));
    for (int64_t t = -h; t <= h; ++t) {
        int64_t src = ((t - params.tau) % n + n) % n;
        src = (params.sigma * src) % n;
        const int64_t bin = ((t % b) + b) % b;
        fold[bin] += win.g_time[h + t] * sample(src);
    }
    fft_radix2(fold, -1);
    const double scale = 1.0 / static_cast<double>(n);
    for (cplx& v : fold) v *= scale;

    BucketSet out;
    out.n = n;
    out.b = b;
    out.values = std::move(fold);
    out.params = params;
    out.samples_read = win.w;
    return out;
}

// Forward model of one bucketization round for already-known tones:
// each tone lands in its owning bucket and the two neighbours its
// transition leakage can reach. Reads no signal samples.
BucketSet predict_buckets(const SparseSpectrum& known, const FlatWindow& win,
                          const PermutationParams& params);

// Elementwise a - b; rounds must share geometry and permutation.
BucketSet subtract(const BucketSet& a, const BucketSet& b_set);

// Bucket index owning permuted position u: round(u/L) mod b, ties
// rounded away from zero.
int64_t bucket_of(int64_t u, int64_t l_width, int64_t b);

}  // namespace msfft
