#include "msfft/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "msfft/rng.hpp"

namespace msfft {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void ComplexSignal::validate() const {
    if (n < 4 || !is_pow2(static_cast<uint64_t>(n)))
        throw std::invalid_argument("ComplexSignal: n must be a power of two >= 4");
    if (static_cast<int64_t>(samples.size()) != n)
        throw std::invalid_argument("ComplexSignal: sample count != n");
    for (const cplx& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("ComplexSignal: non-finite sample");
}

void SparseSpectrum::validate() const {
    if (n < 4 || !is_pow2(static_cast<uint64_t>(n)))
        throw std::invalid_argument("SparseSpectrum: n must be a power of two >= 4");
    if (static_cast<int64_t>(entries.size()) > n)
        throw std::invalid_argument("SparseSpectrum: more entries than n");
    for (const auto& [f, c] : entries) {
        if (f < 0 || f >= n)
            throw std::invalid_argument("SparseSpectrum: position out of range");
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("SparseSpectrum: non-finite coefficient");
    }
}

std::vector<cplx> dft_dense(const ComplexSignal& x) {
    x.validate();
    std::vector<cplx> out = x.samples;
    fft_radix2(out, -1);
    const double scale = 1.0 / static_cast<double>(x.n);
    for (cplx& v : out) v *= scale;
    return out;
}

ComplexSignal idft_dense(const std::vector<cplx>& spectrum) {
    if (!is_pow2(spectrum.size()) || spectrum.size() < 4)
        throw std::invalid_argument("idft_dense: size must be a power of two >= 4");
    ComplexSignal x;
    x.n = static_cast<int64_t>(spectrum.size());
    x.samples = spectrum;
    fft_radix2(x.samples, +1);
    return x;
}

std::vector<cplx> dft_naive(const ComplexSignal& x) {
    x.validate();
    if (x.n > 1024) throw std::invalid_argument("dft_naive: n must be <= 1024");
    const int64_t n = x.n;
    std::vector<cplx> out(n);
    for (int64_t i = 0; i < n; ++i) {
        cplx acc(0.0, 0.0);
        for (int64_t j = 0; j < n; ++j) {
            const double a = -kTwoPi * static_cast<double>((i * j) % n) / static_cast<double>(n);
            acc += x.samples[j] * cplx(std::cos(a), std::sin(a));
        }
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

ComplexSignal synthesize(const SparseSpectrum& spec) {
    spec.validate();
    const int64_t n = spec.n;
    ComplexSignal x;
    x.n = n;
    x.samples.assign(n, cplx(0.0, 0.0));
    // Per-tone phasor recurrence, re-synced periodically to stop drift.
    constexpr int64_t kResync = 1024;
    for (const auto& [f, c] : spec.entries) {
        const double step = kTwoPi * static_cast<double>(f) / static_cast<double>(n);
        const cplx mul(std::cos(step), std::sin(step));
        cplx ph(1.0, 0.0);
        for (int64_t j = 0; j < n; ++j) {
            if (j % kResync == 0) {
                const double a = step * static_cast<double>(j % n);
                ph = cplx(std::cos(a), std::sin(a));
            }
            x.samples[j] += c * ph;
            ph *= mul;
        }
    }
    return x;
}

SparseSpectrum random_sparse_spectrum(int64_t n, int64_t k, Rng& rng) {
    if (n < 4 || !is_pow2(static_cast<uint64_t>(n)))
        throw std::invalid_argument("random_sparse_spectrum: bad n");
    if (k < 0 || k > n)
        throw std::invalid_argument("random_sparse_spectrum: k out of range");

    // Floyd's sampling: k distinct positions, O(k) draws.
    std::set<int64_t> positions;
    for (int64_t j = n - k; j < n; ++j) {
        const int64_t t = static_cast<int64_t>(rng.below(static_cast<uint64_t>(j) + 1));
        if (!positions.insert(t).second) positions.insert(j);
    }

    SparseSpectrum truth;
    truth.n = n;
    for (int64_t f : positions) {
        const double phase = kTwoPi * rng.uniform01();
        truth.entries[f] = cplx(std::cos(phase), std::sin(phase));
    }
    return truth;
}

std::pair<ComplexSignal, SparseSpectrum> generate_test_signal(int64_t n, int64_t k,
                                                              uint64_t seed) {
    Rng rng(seed);
    SparseSpectrum truth = random_sparse_spectrum(n, k, rng);
    return {synthesize(truth), truth};
}

ComplexSignal add_awgn(const ComplexSignal& x, double snr_db, uint64_t seed) {
    x.validate();
    if (std::isinf(snr_db) && snr_db > 0) return x;
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("add_awgn: snr_db must be finite or +infinity");

    double sig_power = 0.0;
    for (const cplx& v : x.samples) sig_power += std::norm(v);

    Rng rng(seed);
    std::vector<cplx> noise(x.samples.size());
    double noise_power = 0.0;
    for (cplx& g : noise) {
        g = cplx(rng.gaussian(), rng.gaussian());
        noise_power += std::norm(g);
    }

    const double target = sig_power * std::pow(10.0, -snr_db / 10.0);
    const double scale = noise_power > 0.0 ? std::sqrt(target / noise_power) : 0.0;

    ComplexSignal out = x;
    for (size_t j = 0; j < out.samples.size(); ++j) out.samples[j] += scale * noise[j];
    return out;
}

EvalMetrics error_metrics(const SparseSpectrum& truth, const SparseSpectrum& estimate,
                          int64_t k) {
    if (truth.n != estimate.n)
        throw std::invalid_argument("error_metrics: size mismatch");

    std::set<int64_t> support;
    for (const auto& [f, c] : truth.entries) support.insert(f);
    for (const auto& [f, c] : estimate.entries) support.insert(f);

    if (k <= 0) {
        if (!support.empty())
            throw std::invalid_argument("error_metrics: k = 0 with nonempty support union");
        return {};
    }

    EvalMetrics m;
    double sum_abs = 0.0, sum_sq = 0.0;
    for (int64_t f : support) {
        const auto ti = truth.entries.find(f);
        const auto ei = estimate.entries.find(f);
        const cplx tv = ti == truth.entries.end() ? cplx(0, 0) : ti->second;
        const cplx ev = ei == estimate.entries.end() ? cplx(0, 0) : ei->second;
        const double d = std::abs(tv - ev);
        sum_abs += d;
        sum_sq += d * d;
        if (d > 1e-6) ++m.l0_err;
    }
    m.l1_err = sum_abs / static_cast<double>(k);
    m.l2_err = std::sqrt(sum_sq / static_cast<double>(k));
    return m;
}

}  // namespace msfft
