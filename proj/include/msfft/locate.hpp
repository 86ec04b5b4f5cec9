#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "msfft/bucketize.hpp"

namespace msfft {

// Multiscale search knobs: l blocks per stage, the chosen block widened
// by q/2 blocks on each side. Shrink factor per stage is l/(q+1).
struct MultiscaleConfig {
    int64_t l = 16;
    double q = 1.0;

    double shrink() const { return static_cast<double>(l) / (q + 1.0); }
    void validate() const;
};

// Half-open interval [u_min, u_min + length) of candidate permuted
// positions. Bounds are real; rounding happens only at termination.
struct LocateRegion {
    double u_min = 0.0;
    double length = 0.0;
    int stage = 1;

    double u_max() const { return u_min + length; }
    double block(const MultiscaleConfig& cfg) const {
        return length / static_cast<double>(cfg.l);
    }
};

// Phase comparison between the tau=0 round and an offset round.
struct PhaseMeasurement {
    cplx y0;
    cplx y_tau;
    int64_t tau = 0;
    double phi = 0.0;  // phase of y0/y_tau in [0, 2pi)
};

struct LocateOutcome {
    int64_t u = 0;  // permuted position in [0, n)
    int stages = 0;
};

// Phase of z mapped into [0, 2pi); z = 0 signals an empty bucket.
double phase_of(cplx z);

// Phase a permuted position presents under offset tau:
// (u tau mod n) * 2pi/n.
double position_phase(double u, int64_t tau, int64_t n);

// Wrapped distance between two phases, in [0, pi].
double circular_phase_distance(double a, double b);

// Offset that stretches a region of length L_m across one phase turn.
int64_t tau_schedule(double region_length, int64_t n);

// Number of refinement stages for a width-L start region.
int stage_count(double region_length, const MultiscaleConfig& cfg);

// Pass-region of bucket i: [(2i-1)L/2, (2i+1)L/2).
LocateRegion initial_region(int64_t bucket, int64_t l_width);

// One refinement: picks the block whose center phase is circularly
// nearest the measurement (ties toward the lower block), then widens it
// by q/2 blocks on both sides.
LocateRegion locate_step(const PhaseMeasurement& meas, const LocateRegion& region,
                         const MultiscaleConfig& cfg, int64_t n);

// Runs the full refinement for one bucket. rounds[0] is the tau=0 round;
// rounds[m] carries tau_schedule of the stage-m region length. Returns
// nullopt if any needed bucket value is exactly zero.
std::optional<LocateOutcome> locate_frequency(int64_t bucket,
                                              std::span<const BucketSet> rounds,
                                              const MultiscaleConfig& cfg,
                                              const FlatWindow& win);

// Admissible parameter ranges for a measured worst-case phase error:
// l is usable iff l <= pi/max_dphi, and q must be at least
// max_dphi * l / pi.
struct ParameterBounds {
    bool l_ok = false;
    double q_min = 0.0;
};
ParameterBounds check_parameter_bounds(double max_dphi, int64_t l, double q = 0.0);

}  // namespace msfft
