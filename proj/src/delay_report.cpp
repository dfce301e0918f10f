#include "gsmsim/delay_report.hpp"

#include <charconv>

#include "gsmsim/delay_calculus.hpp"

namespace gsmsim {

DelayReport build_delay_report(const std::vector<Node>& nodes,
                               const FieldGeometry& geometry, const DelayParams& params) {
    params.validate();
    const int g = geometry.divisions;
    const long inner_cycle = static_cast<long>(g - 2) * (g - 2);
    const long outer_cycle = static_cast<long>(g) * g - inner_cycle;

    const PwlCurve arrival = token_bucket(params.arrival_rate, params.arrival_burst);

    DelayReport report;
    std::vector<double> path_bounds;
    for (const Node& node : nodes) {
        if (!node.alive) continue;
        const std::size_t cell = cell_of(node.position, geometry);
        const bool inner = geometry.is_inner(cell);
        const long cycle = inner ? inner_cycle : outer_cycle;
        const double per_visit =
            params.service_rate > 0.0 ? params.service_rate : static_cast<double>(cycle);
        const double rate = per_visit / (static_cast<double>(cycle) * params.epoch_duration);
        const double latency = static_cast<double>(cycle - 1) * params.epoch_duration;
        const PwlCurve service = rate_latency(rate, latency);

        DelayRow row;
        row.node_id = node.id;
        row.ring = inner ? Ring::Inner : Ring::Outer;
        row.node_bound = horizontal_deviation(arrival, service);
        row.path_bound = path_delay({row.node_bound});
        report.rows.push_back(row);
        path_bounds.push_back(row.path_bound);
    }
    report.network_bound = path_bounds.empty() ? 0.0 : network_delay(path_bounds);
    return report;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string delay_csv(const DelayReport& report) {
    std::string out = "node,ring,delay_bound,path_delay_bound\n";
    for (const DelayRow& row : report.rows) {
        out += std::to_string(row.node_id);
        out += ',';
        out += row.ring == Ring::Inner ? "inner" : "outer";
        out += ',';
        out += fmt_double(row.node_bound);
        out += ',';
        out += fmt_double(row.path_bound);
        out += '\n';
    }
    return out;
}

} // namespace gsmsim
