#pragma once

#include <string>
#include <vector>

#include "gsmsim/config.hpp"
#include "gsmsim/core_model.hpp"
#include "gsmsim/geometry.hpp"

namespace gsmsim {

struct DelayRow {
    int node_id = 0;
    Ring ring = Ring::Inner;
    double node_bound = 0.0; // single-hop delay bound
    double path_bound = 0.0; // end-to-end; equals node_bound for direct upload
};

struct DelayReport {
    std::vector<DelayRow> rows;
    double network_bound = 0.0;
};

// Per-node worst-case FIFO delay under the sink schedule: service is
// rate-latency with latency (cycle - 1) epochs, the worst wait for the next
// visit to the node's cell, and rate equal to the per-visit upload rate
// spread over the cycle. Arrivals are a token bucket from the config.
DelayReport build_delay_report(const std::vector<Node>& nodes,
                               const FieldGeometry& geometry, const DelayParams& params);

// Columns: node, ring, delay_bound, path_delay_bound.
std::string delay_csv(const DelayReport& report);

} // namespace gsmsim
