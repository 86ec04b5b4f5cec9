#include "msfft/phase_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "msfft/bucketize.hpp"
#include "msfft/rng.hpp"
#include "msfft/window.hpp"

namespace msfft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Counter-based complex Gaussian keyed by time index: the same index
// always yields the same draw, so overlapping rounds see one signal.
cplx indexed_noise(uint64_t seed, int64_t idx, double scale) {
    if (scale == 0.0) return cplx(0.0, 0.0);
    const uint64_t a = splitmix64(seed ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(idx + 1)));
    const uint64_t b = splitmix64(a);
    const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;        // [0, 1)
    const double r = std::sqrt(-std::log(u1));  // E[r^2] = 1 per component pair
    const double th = kTwoPi * u2;
    return scale * cplx(r * std::cos(th), r * std::sin(th));
}

// Evaluates the permuted noisy K-tone signal tap by tap. Tone phasors
// advance by one tap per call and re-sync periodically against the exact
// angles; bucketize_fn guarantees the tap-ordered call pattern.
class LazyToneSource {
public:
    LazyToneSource(const SparseSpectrum& spec, const PermutationParams& params,
                   const FlatWindow& win, double noise_scale, uint64_t noise_seed)
        : n_(spec.n),
          tau_(params.tau),
          t_(-(win.w - 1) / 2),
          noise_scale_(noise_scale),
          noise_seed_(noise_seed) {
        for (const auto& [f, c] : spec.entries) {
            Tone tone;
            tone.u = (params.sigma * f) % n_;
            tone.coeff = c;
            const double step = kTwoPi * static_cast<double>(tone.u) / static_cast<double>(n_);
            tone.mul = cplx(std::cos(step), std::sin(step));
            tones_.push_back(tone);
        }
        resync();
    }

    cplx operator()(int64_t src) {
        cplx v = indexed_noise(noise_seed_, src, noise_scale_);
        for (const Tone& tone : tones_) v += tone.phasor;
        ++t_;
        if (++since_sync_ == 512)
            resync();
        else
            for (Tone& tone : tones_) tone.phasor *= tone.mul;
        return v;
    }

private:
    struct Tone {
        int64_t u = 0;
        cplx coeff;
        cplx mul;
        cplx phasor;
    };

    void resync() {
        since_sync_ = 0;
        const int64_t base = ((t_ - tau_) % n_ + n_) % n_;
        for (Tone& tone : tones_) {
            const double a =
                kTwoPi * static_cast<double>((tone.u * base) % n_) / static_cast<double>(n_);
            tone.phasor = tone.coeff * cplx(std::cos(a), std::sin(a));
        }
    }

    int64_t n_;
    int64_t tau_;
    int64_t t_;
    int since_sync_ = 0;
    double noise_scale_;
    uint64_t noise_seed_;
    std::vector<Tone> tones_;
};

}  // namespace

std::optional<PhaseTrial> sample_phase_trial(int64_t n, int64_t k, int64_t b,
                                             double snr_db, Rng& rng) {
    if (k < 1) throw std::invalid_argument("sample_phase_trial: need k >= 1");
    const bool noisy = std::isfinite(snr_db);
    if (!noisy && !(std::isinf(snr_db) && snr_db > 0))
        throw std::invalid_argument("sample_phase_trial: bad snr_db");
    const double delta = noisy ? 1e-6 : 1e-8;
    const auto win = get_flat_window(n, b, delta);
    const int64_t l_width = win->l_width;

    SparseSpectrum spec = random_sparse_spectrum(n, k, rng);
    PermutationParams p0 = random_params(n, rng, 0);
    const uint64_t noise_seed = rng.u64();
    // Per-sample signal power is exactly k for unit tones, so this scale
    // realizes the requested time-domain power ratio in expectation.
    const double noise_scale =
        noisy ? std::sqrt(static_cast<double>(k) * std::pow(10.0, -snr_db / 10.0)) : 0.0;

    std::vector<int> occupancy(static_cast<size_t>(b), 0);
    std::vector<int64_t> tone_at(static_cast<size_t>(b), -1);
    for (const auto& [f, c] : spec.entries) {
        const int64_t u = (p0.sigma * f) % n;
        const int64_t bucket = bucket_of(u, l_width, b);
        ++occupancy[static_cast<size_t>(bucket)];
        tone_at[static_cast<size_t>(bucket)] = u;
    }

    int64_t chosen = -1;
    for (int64_t attempt = 0; attempt < b; ++attempt) {
        const int64_t cand = static_cast<int64_t>(rng.below(static_cast<uint64_t>(b)));
        if (occupancy[static_cast<size_t>(cand)] == 1) {
            chosen = cand;
            break;
        }
    }
    if (chosen < 0) return std::nullopt;

    PermutationParams p1 = p0;
    p1.tau = tau_schedule(static_cast<double>(l_width), n);

    const BucketSet r0 = bucketize_fn(
        n, LazyToneSource(spec, p0, *win, noise_scale, noise_seed), *win, p0);
    const BucketSet r1 = bucketize_fn(
        n, LazyToneSource(spec, p1, *win, noise_scale, noise_seed), *win, p1);

    const cplx y0 = r0.values[static_cast<size_t>(chosen)];
    const cplx y1 = r1.values[static_cast<size_t>(chosen)];
    if (y0 == cplx(0.0, 0.0) || y1 == cplx(0.0, 0.0)) return std::nullopt;

    PhaseTrial trial;
    trial.u = tone_at[static_cast<size_t>(chosen)];
    trial.bucket = chosen;
    trial.y0 = y0;
    trial.y_tau = y1;
    trial.tau = p1.tau;
    trial.measured_phi = phase_of(y0 / y1);
    trial.true_phi = position_phase(static_cast<double>(trial.u), p1.tau, n);
    trial.dphi = circular_phase_distance(trial.measured_phi, trial.true_phi);
    return trial;
}

std::optional<PhaseErrorSample> sample_phase_error(int64_t n, int64_t k, int64_t b,
                                                   double snr_db, Rng& rng) {
    const auto trial = sample_phase_trial(n, k, b, snr_db, rng);
    if (!trial) return std::nullopt;
    PhaseErrorSample s;
    s.dphi = trial->dphi;
    s.log10_dphi = trial->dphi > 0.0 ? std::log10(trial->dphi)
                                     : -std::numeric_limits<double>::infinity();
    return s;
}

std::vector<PhaseErrorHistogram> run_phase_experiment(int64_t n, int64_t k, int64_t b,
                                                      const std::vector<double>& snr_list,
                                                      int64_t trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("run_phase_experiment: trials must be >= 1");

    std::vector<PhaseErrorHistogram> out;
    for (size_t si = 0; si < snr_list.size(); ++si) {
        Rng rng = Rng::stream(seed, 0x5eed0000ull + si);
        std::vector<double> samples;
        samples.reserve(static_cast<size_t>(trials));
        int64_t attempts = 0;
        const int64_t attempt_cap = 200 * trials + 1000;
        while (static_cast<int64_t>(samples.size()) < trials) {
            if (++attempts > attempt_cap)
                throw std::runtime_error("run_phase_experiment: rejection rate too high");
            const auto s = sample_phase_error(n, k, b, snr_list[si], rng);
            if (s) samples.push_back(s->dphi);
        }

        PhaseErrorHistogram h;
        h.snr_db = snr_list[si];
        h.n = n;
        h.k = k;
        h.l_width = n / b;
        h.trials = trials;
        h.bin_mass.assign(PhaseErrorHistogram::kBinCount, 0.0);
        const double mass = 1.0 / static_cast<double>(trials);
        for (double d : samples) {
            const double lg = d > 0.0 ? std::log10(d) : PhaseErrorHistogram::kBinLo;
            int bin = static_cast<int>(std::floor(
                (lg - PhaseErrorHistogram::kBinLo) / PhaseErrorHistogram::kBinWidth));
            bin = std::clamp(bin, 0, PhaseErrorHistogram::kBinCount - 1);
            h.bin_mass[static_cast<size_t>(bin)] += mass;
        }
        std::sort(samples.begin(), samples.end());
        const auto rank = [&](double p) {
            const int64_t idx =
                std::clamp<int64_t>(static_cast<int64_t>(std::ceil(p * trials)) - 1, 0, trials - 1);
            return samples[static_cast<size_t>(idx)];
        };
        h.p50 = rank(0.50);
        h.p99 = rank(0.99);
        h.max = samples.back();
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace msfft
