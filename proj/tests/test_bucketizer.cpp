#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "msfft/bucketize.hpp"
#include "msfft/rng.hpp"
#include "msfft/signal.hpp"
#include "msfft/window.hpp"

using namespace msfft;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx root_of_unity(int64_t n, int64_t exponent) {
    int64_t e = exponent % n;
    if (e < 0) e += n;
    const double a = -kTwoPi * static_cast<double>(e) / static_cast<double>(n);
    return cplx(std::cos(a), std::sin(a));
}

ComplexSignal random_signal(int64_t n, uint64_t seed) {
    Rng rng(seed);
    ComplexSignal x;
    x.n = n;
    x.samples.resize(static_cast<size_t>(n));
    for (auto& v : x.samples) v = cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    return x;
}

// Literal matrix pipeline: scale -> shift -> window -> fold -> B-point
// transform, each stage applied as the stated matrix. The B-point DFT
// keeps the 1/n normalization of the full-length convention.
std::vector<cplx> matrix_pipeline(const ComplexSignal& x, const FlatWindow& win,
                                  const PermutationParams& p) {
    const int64_t n = x.n, b = win.b;
    // P_sigma
    std::vector<cplx> v1(static_cast<size_t>(n));
    for (int64_t j = 0; j < n; ++j)
        v1[static_cast<size_t>(j)] = x.samples[static_cast<size_t>((p.sigma * j) % n)];
    // S_tau
    std::vector<cplx> v2(static_cast<size_t>(n));
    for (int64_t j = 0; j < n; ++j)
        v2[static_cast<size_t>(j)] = v1[static_cast<size_t>(((j - p.tau) % n + n) % n)];
    // Q_L (diagonal window taps, zero off the support)
    const int64_t h = (win.w - 1) / 2;
    std::vector<double> g(static_cast<size_t>(n), 0.0);
    g[0] = win.g_time[static_cast<size_t>(h)];
    for (int64_t t = 1; t <= h; ++t) {
        g[static_cast<size_t>(t)] = win.g_time[static_cast<size_t>(h + t)];
        g[static_cast<size_t>(n - t)] = win.g_time[static_cast<size_t>(h - t)];
    }
    for (int64_t j = 0; j < n; ++j) v2[static_cast<size_t>(j)] *= g[static_cast<size_t>(j)];
    // U_L
    std::vector<cplx> v3(static_cast<size_t>(b), cplx(0, 0));
    for (int64_t j = 0; j < n; ++j) v3[static_cast<size_t>(j % b)] += v2[static_cast<size_t>(j)];
    // F_B with the 1/n factor
    std::vector<cplx> out(static_cast<size_t>(b), cplx(0, 0));
    for (int64_t i = 0; i < b; ++i) {
        cplx acc(0, 0);
        for (int64_t j = 0; j < b; ++j) acc += v3[static_cast<size_t>(j)] * root_of_unity(b, i * j);
        out[static_cast<size_t>(i)] = acc / static_cast<double>(n);
    }
    return out;
}

}  // namespace

TEST_CASE("mod_inverse: reference values and exhaustive check") {
    CHECK(mod_inverse(1, 64) == 1);
    CHECK(mod_inverse(3, 8) == 3);
    CHECK(mod_inverse(5, 16) == 13);
    for (int64_t sigma = 1; sigma < 256; sigma += 2)
        CHECK((sigma * mod_inverse(sigma, 256)) % 256 == 1);
    CHECK_THROWS_AS(mod_inverse(4, 16), std::invalid_argument);
}

TEST_CASE("random_params: determinism, oddness, rough uniformity") {
    Rng a(99), b(99);
    const auto pa = random_params(1024, a);
    const auto pb = random_params(1024, b);
    CHECK(pa.sigma == pb.sigma);
    CHECK(pa.tau == pb.tau);

    Rng rng(123);
    std::vector<int64_t> counts(512, 0);
    const int64_t draws = 10000;
    for (int64_t i = 0; i < draws; ++i) {
        const auto p = random_params(1024, rng);
        CHECK(p.sigma % 2 == 1);
        CHECK((p.sigma * p.sigma_inv) % 1024 == 1);
        ++counts[static_cast<size_t>((p.sigma - 1) / 2)];
    }
    // Chi-square against uniform over the 512 odd residues; 588.4 is the
    // 99th percentile for 511 degrees of freedom.
    const double expected = static_cast<double>(draws) / 512.0;
    double chi2 = 0;
    for (int64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 588.4);
}

TEST_CASE("tau override is honored") {
    Rng rng(5);
    const auto p = random_params(4096, rng, 17);
    CHECK(p.tau == 17);
}

TEST_CASE("bucketize: zero signal gives zero buckets, samples_read = w") {
    const auto win = get_flat_window(1024, 32, 1e-6);
    ComplexSignal x;
    x.n = 1024;
    x.samples.assign(1024, cplx(0, 0));
    Rng rng(7);
    const auto set = bucketize(x, *win, random_params(1024, rng));
    CHECK(set.samples_read == win->w);
    for (const cplx& v : set.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("bucketize equals the literal matrix pipeline") {
    struct Geometry { int64_t n, b; };
    for (const Geometry g : {Geometry{64, 8}, Geometry{256, 16}, Geometry{1024, 32}}) {
        const auto win = get_flat_window(g.n, g.b, 1e-6);
        Rng rng(1000 + g.n);
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_signal(g.n, 500 + static_cast<uint64_t>(trial));
            const auto params = random_params(g.n, rng);
            const auto fast = bucketize(x, *win, params);
            const auto slow = matrix_pipeline(x, *win, params);
            for (int64_t i = 0; i < g.b; ++i)
                CHECK(std::abs(fast.values[static_cast<size_t>(i)] -
                               slow[static_cast<size_t>(i)]) < 1e-9);
        }
    }
}

TEST_CASE("single tone lands in its bucket; distant buckets stay dark") {
    const int64_t n = 8192, b = 256;
    const auto win = get_flat_window(n, b, 1e-6);
    const int64_t l_width = win->l_width;
    PermutationParams p;  // sigma = 1, tau = 0

    for (int64_t f : {100L, 5000L, 8191L, 16L, 48L}) {
        SparseSpectrum tone;
        tone.n = n;
        tone.entries[f] = cplx(0.8, 0.6);
        const auto x = synthesize(tone);
        const auto set = bucketize(x, *win, p);
        const int64_t i = bucket_of(f, l_width, b);
        CHECK(std::abs(set.values[static_cast<size_t>(i)]) >= (1.0 - 1e-6) * 1.0 - 1e-9);
        for (int64_t j = 0; j < b; ++j) {
            const int64_t dist = std::min(((j - i) % b + b) % b, ((i - j) % b + b) % b);
            if (dist >= 2)
                CHECK(std::abs(set.values[static_cast<size_t>(j)]) <= 1e-6 + 1e-9);
        }
    }
}

TEST_CASE("predict_buckets matches real bucketization of a single tone within 5 delta") {
    const int64_t n = 8192, b = 256;
    const double delta = 1e-6;
    const auto win = get_flat_window(n, b, delta);
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        SparseSpectrum tone;
        tone.n = n;
        const int64_t f = static_cast<int64_t>(rng.below(n));
        const double ph = kTwoPi * rng.uniform01();
        tone.entries[f] = cplx(std::cos(ph), std::sin(ph));
        const auto params = random_params(n, rng);
        const auto real_set = bucketize(synthesize(tone), *win, params);
        const auto pred = predict_buckets(tone, *win, params);
        for (int64_t i = 0; i < b; ++i)
            CHECK(std::abs(real_set.values[static_cast<size_t>(i)] -
                           pred.values[static_cast<size_t>(i)]) <= 5 * delta);
    }
}

TEST_CASE("predict_buckets covers a full K=50 spectrum within 50*5*delta") {
    const int64_t n = 8192, b = 256;
    const double delta = 1e-6;
    const auto win = get_flat_window(n, b, delta);
    Rng rng(77);
    const auto truth = random_sparse_spectrum(n, 50, rng);
    const auto params = random_params(n, rng);
    const auto real_set = bucketize(synthesize(truth), *win, params);
    const auto pred = predict_buckets(truth, *win, params);
    double worst = 0;
    for (int64_t i = 0; i < b; ++i)
        worst = std::max(worst, std::abs(real_set.values[static_cast<size_t>(i)] -
                                         pred.values[static_cast<size_t>(i)]));
    CHECK(worst <= 50 * 5 * delta);
}

TEST_CASE("predict_buckets: empty spectrum, zero sample cost") {
    const auto win = get_flat_window(1024, 32, 1e-6);
    SparseSpectrum empty;
    empty.n = 1024;
    Rng rng(3);
    const auto pred = predict_buckets(empty, *win, random_params(1024, rng));
    CHECK(pred.samples_read == 0);
    for (const cplx& v : pred.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("subtract: identity, self-cancellation, exact undo") {
    const auto win = get_flat_window(1024, 32, 1e-6);
    Rng rng(11);
    const auto params = random_params(1024, rng);
    const auto x = random_signal(1024, 21);
    const auto a = bucketize(x, *win, params);

    BucketSet zero = a;
    for (cplx& v : zero.values) v = cplx(0, 0);
    const auto same = subtract(a, zero);
    CHECK(same.values == a.values);

    const auto none = subtract(a, a);
    for (const cplx& v : none.values) CHECK(std::abs(v) == 0.0);

    const auto y = random_signal(1024, 22);
    const auto b_set = bucketize(y, *win, params);
    const auto diff = subtract(a, b_set);
    for (size_t i = 0; i < a.values.size(); ++i)
        CHECK(std::abs(diff.values[i] + b_set.values[i] - a.values[i]) < 1e-12);

    BucketSet other = b_set;
    other.params.tau += 1;
    CHECK_THROWS_AS(subtract(a, other), std::invalid_argument);
}

TEST_CASE("permutation law: transform of the permuted signal is the rotated relabeling") {
    const int64_t n = 256;
    const auto x = random_signal(n, 9);
    Rng rng(13);
    const auto p = random_params(n, rng);

    ComplexSignal xp;
    xp.n = n;
    xp.samples.resize(n);
    for (int64_t j = 0; j < n; ++j)
        xp.samples[static_cast<size_t>(j)] =
            x.samples[static_cast<size_t>((p.sigma * (((j - p.tau) % n + n) % n)) % n)];

    const auto spec = dft_dense(x);
    const auto spec_p = dft_dense(xp);
    for (int64_t i = 0; i < n; ++i) {
        const cplx want = spec[static_cast<size_t>(i)] * root_of_unity(n, p.sigma * p.tau * i);
        CHECK(std::abs(spec_p[static_cast<size_t>((p.sigma * i) % n)] - want) < 1e-9);
    }
}

TEST_CASE("index map j -> sigma (j - tau) is a bijection") {
    const int64_t n = 4096;
    Rng rng(17);
    const auto p = random_params(n, rng);
    std::vector<uint8_t> hit(static_cast<size_t>(n), 0);
    for (int64_t j = 0; j < n; ++j) {
        const int64_t idx = (p.sigma * (((j - p.tau) % n + n) % n)) % n;
        CHECK(!hit[static_cast<size_t>(idx)]);
        hit[static_cast<size_t>(idx)] = 1;
    }
}

TEST_CASE("sample tracker counts distinct indices across rounds") {
    const int64_t n = 1024;
    const auto win = get_flat_window(n, 32, 1e-6);
    const auto x = random_signal(n, 5);
    SampleTracker tracker(n);
    Rng rng(23);
    const auto p1 = random_params(n, rng);
    const auto p2 = random_params(n, rng);
    bucketize(x, *win, p1, &tracker);
    const int64_t after_one = tracker.distinct;
    CHECK(after_one == win->w);
    bucketize(x, *win, p2, &tracker);
    CHECK(tracker.distinct >= after_one);
    CHECK(tracker.distinct <= std::min<int64_t>(n, 2 * win->w));
}

TEST_CASE("bucket_of: boundary positions round away from zero") {
    // L = 32, b = 256: position L/2 belongs to bucket 1, n - L/2 wraps to 0.
    CHECK(bucket_of(16, 32, 256) == 1);
    CHECK(bucket_of(15, 32, 256) == 0);
    CHECK(bucket_of(8192 - 16, 32, 256) == 0);
    CHECK(bucket_of(8192 - 17, 32, 256) == 255);
}
