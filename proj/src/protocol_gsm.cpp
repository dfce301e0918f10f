#include "gsmsim/protocol_gsm.hpp"

#include "gsmsim/errors.hpp"
#include "gsmsim/kernels.hpp"

namespace gsmsim {

std::array<SinkState, 2> make_sinks(const FieldGeometry& geometry) {
    std::array<SinkState, 2> sinks;
    sinks[0].trajectory = build_trajectory(geometry, Ring::Inner);
    sinks[1].trajectory = build_trajectory(geometry, Ring::Outer);
    for (SinkState& s : sinks) {
        s.sojourn_index = 0;
        s.epoch = 0;
        s.position = geometry.cells[s.trajectory.stops[0]].center;
    }
    return sinks;
}

namespace {

std::size_t hosted_cell(const SinkState& sink) {
    return sink.trajectory.stops[sink.sojourn_index];
}

} // namespace

void assign_modes(std::vector<Node>& nodes, const FieldGeometry& geometry,
                  const std::array<SinkState, 2>& sinks) {
    if (sinks[0].trajectory.kind == sinks[1].trajectory.kind)
        throw ProtocolError("both sinks on the same trajectory ring");
    const std::size_t cell_a = hosted_cell(sinks[0]);
    const std::size_t cell_b = hosted_cell(sinks[1]);
    for (Node& node : nodes) {
        if (!node.alive) {
            node.mode = NodeMode::Sleep;
            continue;
        }
        const std::size_t cell = cell_of(node.position, geometry);
        node.mode = (cell == cell_a || cell == cell_b) ? NodeMode::Awake : NodeMode::Sleep;
    }
}

GsmRoundOutcome run_sojourn(std::vector<Node>& nodes, const FieldGeometry& geometry,
                            const std::array<SinkState, 2>& sinks,
                            const EnergyParams& params, long packet_bits,
                            GsmTraffic& traffic, long round, EnergyAudit* audit) {
    GsmRoundOutcome outcome;
    outcome.awake_cells = {hosted_cell(sinks[0]), hosted_cell(sinks[1])};

    const kernels::Backend& backend = kernels::active_backend();
    const double bits = static_cast<double>(packet_bits);
    const double e_elec_bits = params.e_elec * bits;
    const double fs_bits = params.eps_fs * bits;
    const double mp_bits = params.eps_mp * bits;
    const double d0_sq = params.eps_fs / params.eps_mp;

    // Batch the distance and per-packet cost math per sink, then walk the
    // group in node order applying the sequential debit / death rules.
    std::vector<std::size_t> group;
    std::vector<double> xs, ys, d2, cost;
    for (const SinkState& sink : sinks) {
        const std::size_t host = hosted_cell(sink);
        group.clear();
        xs.clear();
        ys.clear();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Node& node = nodes[i];
            if (!node.alive || node.mode != NodeMode::Awake) continue;
            if (cell_of(node.position, geometry) != host) continue;
            group.push_back(i);
            xs.push_back(node.position.x);
            ys.push_back(node.position.y);
        }
        if (group.empty()) continue;

        d2.resize(group.size());
        cost.resize(group.size());
        backend.dist2_to_point(xs.data(), ys.data(), group.size(), sink.position.x,
                               sink.position.y, d2.data());
        backend.tx_energy_d2(d2.data(), group.size(), e_elec_bits, fs_bits, mp_bits,
                             d0_sq, cost.data());

        for (std::size_t gi = 0; gi < group.size(); ++gi) {
            Node& node = nodes[group[gi]];
            const long due = traffic.packets_due(node.id, round);
            for (long p = 0; p < due && node.alive; ++p) {
                const double drained = debit(node, cost[gi]);
                outcome.energy_spent += drained;
                if (audit) audit->record(node.id, drained);
                if (node.alive) {
                    ++outcome.packets_delivered;
                } else {
                    outcome.deaths.push_back(node.id);
                }
            }
            traffic.mark_drained(node.id, round);
        }
    }
    return outcome;
}

void advance_sinks(const FieldGeometry& geometry, std::array<SinkState, 2>& sinks) {
    for (SinkState& s : sinks) {
        s.sojourn_index = (s.sojourn_index + 1) % s.trajectory.stops.size();
        s.position = geometry.cells[s.trajectory.stops[s.sojourn_index]].center;
        ++s.epoch;
    }
}

} // namespace gsmsim
