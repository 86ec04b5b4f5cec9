#include "msfft/bucketize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msfft {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit_root(int64_t n, int64_t exponent) {
    // e^{-2pi i exponent / n}, exponent reduced mod n.
    int64_t e = exponent % n;
    if (e < 0) e += n;
    const double a = -kTwoPi * static_cast<double>(e) / static_cast<double>(n);
    return cplx(std::cos(a), std::sin(a));
}
}  // namespace

int64_t mod_inverse(int64_t sigma, int64_t n) {
    if (n < 2 || !is_pow2(static_cast<uint64_t>(n)))
        throw std::invalid_argument("mod_inverse: n must be a power of two");
    if (sigma % 2 == 0) throw std::invalid_argument("mod_inverse: sigma must be odd");

    int64_t r0 = n, r1 = ((sigma % n) + n) % n;
    int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    // r0 == gcd == 1 for odd sigma.
    return ((t0 % n) + n) % n;
}

PermutationParams random_params(int64_t n, Rng& rng, std::optional<int64_t> tau_override) {
    if (n < 4 || !is_pow2(static_cast<uint64_t>(n)))
        throw std::invalid_argument("random_params: bad n");
    PermutationParams p;
    p.sigma = 2 * static_cast<int64_t>(rng.below(static_cast<uint64_t>(n / 2))) + 1;
    p.sigma_inv = mod_inverse(p.sigma, n);
    p.tau = tau_override ? *tau_override
                         : static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
    return p;
}

BucketSet bucketize(const ComplexSignal& x, const FlatWindow& win,
                    const PermutationParams& params, SampleTracker* tracker) {
    if (x.n != win.n) throw std::invalid_argument("bucketize: signal/window size mismatch");
    auto set = bucketize_fn(
        x.n,
        [&](int64_t idx) {
            if (tracker) tracker->touch(idx);
            return x.samples[static_cast<size_t>(idx)];
        },
        win, params);
    return set;
}

int64_t bucket_of(int64_t u, int64_t l_width, int64_t b) {
    // u in [0, n); u/L is exact in double for power-of-two L.
    const int64_t i = static_cast<int64_t>(
        std::floor(static_cast<double>(u) / static_cast<double>(l_width) + 0.5));
    return ((i % b) + b) % b;
}

BucketSet predict_buckets(const SparseSpectrum& known, const FlatWindow& win,
                          const PermutationParams& params) {
    if (known.n != win.n) throw std::invalid_argument("predict_buckets: size mismatch");
    const int64_t n = win.n;
    const int64_t b = win.b;
    const int64_t l_width = win.l_width;

    BucketSet out;
    out.n = n;
    out.b = b;
    out.values.assign(static_cast<size_t>(b), cplx(0.0, 0.0));
    out.params = params;
    out.samples_read = 0;

    for (const auto& [f, c] : known.entries) {
        const int64_t u = (params.sigma * f) % n;
        const int64_t i = static_cast<int64_t>(
            std::floor(static_cast<double>(u) / static_cast<double>(l_width) + 0.5));
        const cplx rot = unit_root(n, params.tau * u);
        for (int64_t j = i - 1; j <= i + 1; ++j) {
            const double g = win.response_at(j * l_width - u);
            out.values[static_cast<size_t>(((j % b) + b) % b)] += g * c * rot;
        }
    }
    return out;
}

BucketSet subtract(const BucketSet& a, const BucketSet& b_set) {
    if (a.b != b_set.b || a.n != b_set.n || a.params.sigma != b_set.params.sigma ||
        a.params.tau != b_set.params.tau)
        throw std::invalid_argument("subtract: bucket sets are not from the same round");
    BucketSet out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b_set.values[i];
    return out;
}

}  // namespace msfft
