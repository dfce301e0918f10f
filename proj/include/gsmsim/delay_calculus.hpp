#pragma once

#include <vector>

namespace gsmsim {

enum class CurveRole { Arrival, Service };

// One linear piece, valid from `start` until the next segment's start.
struct PwlSegment {
    double start = 0.0;
    double value = 0.0; // curve value as s approaches start from the right
    double slope = 0.0;
};

// Non-decreasing, non-negative piecewise-linear curve. Evaluation uses the
// right-limit convention: value_at(s) takes the segment whose range s opens,
// so a token bucket reports its full burst already at s = 0. That is the
// reading under which the classical bound T + b/R falls out of the sup-inf.
struct PwlCurve {
    CurveRole role = CurveRole::Arrival;
    std::vector<PwlSegment> segments; // start times strictly increasing from 0

    double value_at(double s) const;
    double long_run_slope() const { return segments.back().slope; }
};

// Arrival envelope b + r*s.
PwlCurve token_bucket(double rate, double burst);

// Service floor R*(s - T), clipped at zero until the latency has passed.
PwlCurve rate_latency(double rate, double latency);

// Worst-case FIFO delay: sup over s >= 0 of the horizontal gap between the
// arrival curve and the service curve. The extremum sits on a breakpoint of
// either curve, so the finite candidate set is exact. Returns +infinity when
// the long-run arrival rate exceeds the long-run service rate.
double horizontal_deviation(const PwlCurve& arrival, const PwlCurve& service);

// Per-path total: sum of hop delays, +infinity absorbing.
double path_delay(const std::vector<double>& hop_bounds);

// Network-wide worst case: max over per-path bounds.
double network_delay(const std::vector<double>& path_bounds);

} // namespace gsmsim
