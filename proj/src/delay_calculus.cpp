#include "gsmsim/delay_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsmsim/errors.hpp"

namespace gsmsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_curve(const PwlCurve& curve) {
    if (curve.segments.empty()) throw ArgumentError("curve has no segments");
    if (curve.segments.front().start != 0.0)
        throw ArgumentError("curve must start at 0");
    for (std::size_t i = 0; i < curve.segments.size(); ++i) {
        const PwlSegment& seg = curve.segments[i];
        if (seg.value < 0.0 || seg.slope < 0.0)
            throw ArgumentError("curve must be non-negative and non-decreasing");
        if (i > 0 && !(seg.start > curve.segments[i - 1].start))
            throw ArgumentError("segment starts must strictly increase");
    }
}

// Pseudo-inverse of the service curve: smallest u with service(u) >= y, or
// with service(u) > y in strict mode; +inf when the curve never gets there.
// The strict variant is what the right-limit of the delay function needs when
// the arrival keeps growing past a flat stretch of the service curve.
double inverse_at(const PwlCurve& service, double y, bool strict) {
    const double at_zero = service.value_at(0.0);
    if (strict ? y < at_zero : y <= at_zero) return 0.0;
    for (std::size_t i = 0; i < service.segments.size(); ++i) {
        const PwlSegment& seg = service.segments[i];
        const bool last = i + 1 == service.segments.size();
        const double span = last ? kInf : service.segments[i + 1].start - seg.start;
        const double reach = seg.slope == 0.0 ? seg.value : seg.value + seg.slope * span;
        if ((strict ? y < reach : y <= reach) || (last && seg.slope > 0.0))
            return seg.start + (seg.slope > 0.0 ? (y - seg.value) / seg.slope : 0.0);
        if (!last) {
            const double next_value = service.segments[i + 1].value;
            if (strict ? y < next_value : y <= next_value)
                return service.segments[i + 1].start;
        }
    }
    return kInf;
}

// Slope of the curve immediately to the right of s.
double slope_right(const PwlCurve& curve, double s) {
    const PwlSegment* seg = &curve.segments.front();
    for (const PwlSegment& candidate : curve.segments) {
        if (candidate.start <= s) seg = &candidate;
        else break;
    }
    return seg->slope;
}

} // namespace

double PwlCurve::value_at(double s) const {
    const PwlSegment* seg = &segments.front();
    for (const PwlSegment& candidate : segments) {
        if (candidate.start <= s) seg = &candidate;
        else break;
    }
    return seg->value + seg->slope * (s - seg->start);
}

PwlCurve token_bucket(double rate, double burst) {
    if (rate < 0.0 || burst < 0.0) throw ArgumentError("token_bucket: negative parameter");
    PwlCurve curve;
    curve.role = CurveRole::Arrival;
    curve.segments.push_back({0.0, burst, rate});
    return curve;
}

PwlCurve rate_latency(double rate, double latency) {
    if (!(rate > 0.0)) throw ArgumentError("rate_latency: rate must be > 0");
    if (latency < 0.0) throw ArgumentError("rate_latency: negative latency");
    PwlCurve curve;
    curve.role = CurveRole::Service;
    if (latency > 0.0) curve.segments.push_back({0.0, 0.0, 0.0});
    curve.segments.push_back({latency, 0.0, rate});
    return curve;
}

double horizontal_deviation(const PwlCurve& arrival, const PwlCurve& service) {
    check_curve(arrival);
    check_curve(service);
    if (arrival.long_run_slope() > service.long_run_slope()) return kInf;

    // d(s) = inverse_service(arrival(s)) - s is piecewise linear between
    // candidates, so evaluating at every arrival breakpoint plus every s
    // where arrival(s) crosses a service breakpoint value is exact. d may
    // jump at a candidate (the pseudo-inverse skips flat service stretches),
    // so the right-limit via the strict inverse is taken as well; beyond the
    // last candidate d cannot rise because the long-run rates are ordered.
    std::vector<double> candidates;
    for (const PwlSegment& seg : arrival.segments) candidates.push_back(seg.start);
    for (const PwlSegment& sseg : service.segments) {
        const double y = sseg.value;
        for (std::size_t i = 0; i < arrival.segments.size(); ++i) {
            const PwlSegment& aseg = arrival.segments[i];
            if (aseg.slope <= 0.0) continue;
            const double s = aseg.start + (y - aseg.value) / aseg.slope;
            const bool last = i + 1 == arrival.segments.size();
            if (s >= aseg.start && (last || s <= arrival.segments[i + 1].start))
                candidates.push_back(s);
        }
    }

    double worst = 0.0;
    for (double s : candidates) {
        if (s < 0.0) continue;
        const double y = arrival.value_at(s);
        double u = inverse_at(service, y, false);
        if (slope_right(arrival, s) > 0.0) u = std::max(u, inverse_at(service, y, true));
        if (u == kInf) return kInf;
        worst = std::max(worst, u - s);
    }
    return worst;
}

double path_delay(const std::vector<double>& hop_bounds) {
    double total = 0.0;
    for (double d : hop_bounds) {
        if (d < 0.0) throw ArgumentError("path_delay: negative hop bound");
        total += d; // += inf absorbs as required
    }
    return total;
}

double network_delay(const std::vector<double>& path_bounds) {
    if (path_bounds.empty()) throw ArgumentError("network_delay: empty path list");
    double worst = 0.0;
    for (double d : path_bounds) {
        if (d < 0.0) throw ArgumentError("network_delay: negative path bound");
        worst = std::max(worst, d);
    }
    return worst;
}

} // namespace gsmsim
