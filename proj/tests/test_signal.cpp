#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "msfft/rng.hpp"
#include "msfft/signal.hpp"

using namespace msfft;

namespace {

ComplexSignal random_signal(int64_t n, uint64_t seed) {
    Rng rng(seed);
    ComplexSignal x;
    x.n = n;
    x.samples.resize(static_cast<size_t>(n));
    for (auto& v : x.samples) v = cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    return x;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Circular convolution, the reference for the product-transform identity.
std::vector<cplx> circular_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const int64_t n = static_cast<int64_t>(a.size());
    std::vector<cplx> out(a.size());
    for (int64_t i = 0; i < n; ++i) {
        cplx acc(0, 0);
        for (int64_t j = 0; j < n; ++j) acc += a[j] * b[((i - j) % n + n) % n];
        out[i] = acc;
    }
    return out;
}

}  // namespace

TEST_CASE("dft_dense: unit impulse transforms to constant 1/n") {
    const int64_t n = 64;
    ComplexSignal x;
    x.n = n;
    x.samples.assign(n, cplx(0, 0));
    x.samples[0] = cplx(1, 0);
    const auto spec = dft_dense(x);
    for (const cplx& v : spec) CHECK(std::abs(v - cplx(1.0 / n, 0)) < 1e-15);
}

TEST_CASE("dft_dense/idft_dense roundtrip within 1e-9") {
    for (int64_t n : {256L, 4096L}) {
        const auto x = random_signal(n, 42);
        const auto back = idft_dense(dft_dense(x));
        double err = 0;
        for (int64_t j = 0; j < n; ++j) err = std::max(err, std::abs(back.samples[j] - x.samples[j]));
        CHECK(err < 1e-9);
    }
}

TEST_CASE("dft_dense matches the literal double sum") {
    for (int64_t n : {16L, 64L, 256L}) {
        const auto x = random_signal(n, 7 + n);
        CHECK(max_abs_diff(dft_dense(x), dft_naive(x)) < 1e-10);
    }
}

TEST_CASE("transform of a pointwise product is the convolution of transforms") {
    const int64_t n = 64;
    const auto x = random_signal(n, 1);
    const auto y = random_signal(n, 2);
    ComplexSignal xy;
    xy.n = n;
    xy.samples.resize(n);
    for (int64_t j = 0; j < n; ++j) xy.samples[j] = x.samples[j] * y.samples[j];
    const auto lhs = dft_dense(xy);
    const auto rhs = circular_convolve(dft_dense(x), dft_dense(y));
    CHECK(max_abs_diff(lhs, rhs) < 1e-9);
}

TEST_CASE("synthesize: empty spectrum gives the zero signal") {
    SparseSpectrum s;
    s.n = 128;
    const auto x = synthesize(s);
    for (const cplx& v : x.samples) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("synthesize: DC tone gives a constant signal") {
    SparseSpectrum s;
    s.n = 128;
    s.entries[0] = cplx(1, 0);
    const auto x = synthesize(s);
    for (const cplx& v : x.samples) CHECK(std::abs(v - cplx(1, 0)) < 1e-12);
}

TEST_CASE("synthesize roundtrips through the dense transform, K=50 n=8192") {
    Rng rng(3);
    const auto truth = random_sparse_spectrum(8192, 50, rng);
    const auto spec = dft_dense(synthesize(truth));
    for (int64_t f = 0; f < 8192; ++f) {
        const auto it = truth.entries.find(f);
        const cplx want = it == truth.entries.end() ? cplx(0, 0) : it->second;
        CHECK(std::abs(spec[static_cast<size_t>(f)] - want) < 1e-9);
    }
}

TEST_CASE("generate_test_signal: k=0 gives zero signal and empty truth") {
    const auto [x, truth] = generate_test_signal(256, 0, 9);
    CHECK(truth.entries.empty());
    for (const cplx& v : x.samples) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("generate_test_signal: 50 distinct unit-magnitude tones") {
    const auto [x, truth] = generate_test_signal(8192, 50, 11);
    CHECK(truth.entries.size() == 50);
    for (const auto& [f, c] : truth.entries) {
        CHECK(f >= 0);
        CHECK(f < 8192);
        CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
    }
}

TEST_CASE("generate_test_signal: deterministic per seed") {
    const auto [x1, t1] = generate_test_signal(1024, 20, 77);
    const auto [x2, t2] = generate_test_signal(1024, 20, 77);
    CHECK(t1.entries == t2.entries);
    CHECK(x1.samples == x2.samples);
    const auto [x3, t3] = generate_test_signal(1024, 20, 78);
    CHECK(t1.entries != t3.entries);
}

TEST_CASE("generate_test_signal: k > n rejected") {
    CHECK_THROWS_AS(generate_test_signal(64, 65, 1), std::invalid_argument);
}

TEST_CASE("add_awgn: +infinity sentinel returns the input unchanged") {
    const auto x = random_signal(512, 5);
    const auto y = add_awgn(x, std::numeric_limits<double>::infinity(), 1);
    CHECK(x.samples == y.samples);
}

TEST_CASE("add_awgn: rejects NaN and -infinity") {
    const auto x = random_signal(64, 5);
    CHECK_THROWS_AS(add_awgn(x, std::numeric_limits<double>::quiet_NaN(), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(add_awgn(x, -std::numeric_limits<double>::infinity(), 1),
                    std::invalid_argument);
}

TEST_CASE("add_awgn: realized power ratios match the request") {
    const auto [x, truth] = generate_test_signal(8192, 50, 21);
    double sig = 0;
    for (const cplx& v : x.samples) sig += std::norm(v);

    for (double snr : {0.0, 20.0}) {
        const auto y = add_awgn(x, snr, 13);
        double noise = 0;
        for (int64_t j = 0; j < x.n; ++j) noise += std::norm(y.samples[j] - x.samples[j]);
        const double ratio = noise / sig;
        const double want = std::pow(10.0, -snr / 10.0);
        CHECK(ratio > 0.95 * want);
        CHECK(ratio < 1.05 * want);
        // Realized SNR within 0.5 dB of the request.
        CHECK(std::abs(10.0 * std::log10(sig / noise) - snr) < 0.5);
    }
}

TEST_CASE("error_metrics: exact estimate scores zero") {
    Rng rng(4);
    const auto truth = random_sparse_spectrum(1024, 30, rng);
    const auto m = error_metrics(truth, truth, 30);
    CHECK(m.l0_err == 0);
    CHECK(m.l1_err == 0.0);
    CHECK(m.l2_err == 0.0);
}

TEST_CASE("error_metrics: one missing unit tone out of 50") {
    Rng rng(4);
    const auto truth = random_sparse_spectrum(8192, 50, rng);
    SparseSpectrum est = truth;
    est.entries.erase(est.entries.begin());
    const auto m = error_metrics(truth, est, 50);
    CHECK(m.l0_err == 1);
    CHECK(m.l1_err == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("error_metrics: one spurious unit tone on top of perfect recovery") {
    Rng rng(6);
    const auto truth = random_sparse_spectrum(8192, 50, rng);
    SparseSpectrum est = truth;
    int64_t spare = 0;
    while (truth.entries.count(spare)) ++spare;
    est.entries[spare] = cplx(1, 0);
    const auto m = error_metrics(truth, est, 50);
    CHECK(m.l0_err == 1);
    CHECK(m.l1_err == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("error_metrics: k = 0 only allowed with empty union") {
    SparseSpectrum empty;
    empty.n = 64;
    const auto m = error_metrics(empty, empty, 0);
    CHECK(m.l0_err == 0);
    SparseSpectrum one = empty;
    one.entries[3] = cplx(1, 0);
    CHECK_THROWS_AS(error_metrics(one, empty, 0), std::invalid_argument);
}

TEST_CASE("dft_naive rejects n > 1024; signals reject bad n") {
    CHECK_THROWS_AS(dft_naive(random_signal(2048, 1)), std::invalid_argument);
    ComplexSignal bad;
    bad.n = 48;
    bad.samples.assign(48, cplx(0, 0));
    CHECK_THROWS_AS(dft_dense(bad), std::invalid_argument);
}
