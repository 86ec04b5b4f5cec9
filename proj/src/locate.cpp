#include "msfft/locate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msfft {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double circular_phase_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

double position_phase(double u, int64_t tau, int64_t n) {
    double x = std::fmod(u * static_cast<double>(tau), static_cast<double>(n));
    if (x < 0) x += static_cast<double>(n);
    return x * kTwoPi / static_cast<double>(n);
}

void MultiscaleConfig::validate() const {
    if (l < 2) throw std::invalid_argument("MultiscaleConfig: l must be >= 2");
    if (q < 0.0) throw std::invalid_argument("MultiscaleConfig: q must be >= 0");
    if (!(shrink() > 1.0))
        throw std::invalid_argument("MultiscaleConfig: l/(q+1) must exceed 1");
}

double phase_of(cplx z) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("phase_of: zero value");
    double a = std::atan2(z.imag(), z.real());
    if (a < 0.0) a += kTwoPi;
    return a + 0.0;  // normalize -0.0
}

int64_t tau_schedule(double region_length, int64_t n) {
    int64_t tau = std::llround(static_cast<double>(n) / region_length);
    return std::clamp<int64_t>(tau, 1, n - 1);
}

int stage_count(double region_length, const MultiscaleConfig& cfg) {
    const double s = cfg.shrink();
    int r = 0;
    double acc = 1.0;
    while (acc * (1.0 + 1e-12) < region_length) {
        acc *= s;
        ++r;
    }
    return r;
}

LocateRegion initial_region(int64_t bucket, int64_t l_width) {
    LocateRegion region;
    region.u_min = (2.0 * static_cast<double>(bucket) - 1.0) * static_cast<double>(l_width) / 2.0;
    region.length = static_cast<double>(l_width);
    region.stage = 1;
    return region;
}

LocateRegion locate_step(const PhaseMeasurement& meas, const LocateRegion& region,
                         const MultiscaleConfig& cfg, int64_t n) {
    const double r = region.block(cfg);
    int64_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int64_t j = 0; j < cfg.l; ++j) {
        const double center = region.u_min + (static_cast<double>(j) + 0.5) * r;
        const double d = circular_phase_distance(position_phase(center, meas.tau, n), meas.phi);
        if (d < best_dist) {
            best_dist = d;
            best = j;
        }
    }
    LocateRegion next;
    next.u_min = region.u_min + (static_cast<double>(best) - cfg.q / 2.0) * r;
    next.length = region.length * (cfg.q + 1.0) / static_cast<double>(cfg.l);
    next.stage = region.stage + 1;
    return next;
}

std::optional<LocateOutcome> locate_frequency(int64_t bucket,
                                              std::span<const BucketSet> rounds,
                                              const MultiscaleConfig& cfg,
                                              const FlatWindow& win) {
    cfg.validate();
    if (rounds.empty()) throw std::invalid_argument("locate_frequency: no rounds");
    if (rounds[0].params.tau != 0)
        throw std::invalid_argument("locate_frequency: round 0 must have tau = 0");
    const int64_t n = win.n;
    const int needed = stage_count(static_cast<double>(win.l_width), cfg);
    if (static_cast<int>(rounds.size()) < needed + 1)
        throw std::invalid_argument("locate_frequency: not enough rounds for the schedule");

    const cplx y0 = rounds[0].values[static_cast<size_t>(bucket)];
    if (y0 == cplx(0.0, 0.0)) return std::nullopt;

    LocateRegion region = initial_region(bucket, win.l_width);
    int stages = 0;
    while (region.length > 1.0 + 1e-9) {
        ++stages;
        const BucketSet& round = rounds[static_cast<size_t>(stages)];
        const cplx y_tau = round.values[static_cast<size_t>(bucket)];
        if (y_tau == cplx(0.0, 0.0)) return std::nullopt;
        PhaseMeasurement meas;
        meas.y0 = y0;
        meas.y_tau = y_tau;
        meas.tau = round.params.tau;
        meas.phi = phase_of(y0 / y_tau);
        region = locate_step(meas, region, cfg, n);
    }

    // The terminal region holds at most one integer; prefer it, falling
    // back to the rounded midpoint when the region straddles none.
    const double lo = region.u_min;
    const double hi = region.u_max();
    int64_t u = static_cast<int64_t>(std::ceil(lo));
    if (!(static_cast<double>(u) < hi)) u = std::llround(0.5 * (lo + hi));
    u %= n;
    if (u < 0) u += n;
    return LocateOutcome{u, stages};
}

ParameterBounds check_parameter_bounds(double max_dphi, int64_t l, double /*q*/) {
    if (!(max_dphi > 0.0))
        throw std::invalid_argument("check_parameter_bounds: max_dphi must be positive");
    ParameterBounds out;
    out.l_ok = static_cast<double>(l) <= std::numbers::pi / max_dphi;
    out.q_min = max_dphi * static_cast<double>(l) / std::numbers::pi;
    return out;
}

}  // namespace msfft
