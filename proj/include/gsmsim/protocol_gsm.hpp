#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gsmsim/core_model.hpp"
#include "gsmsim/geometry.hpp"

namespace gsmsim {

// One mobile sink bound to a trajectory. position always mirrors the center
// of stops[sojourn_index]; both sinks advance in lockstep so their epoch
// counters stay equal.
struct SinkState {
    Trajectory trajectory;
    Point position;
    std::size_t sojourn_index = 0;
    long epoch = 0;
};

struct GsmRoundOutcome {
    std::array<std::size_t, 2> awake_cells{};
    long packets_delivered = 0;
    double energy_spent = 0.0;
    std::vector<int> deaths;
};

// Inner sink first, outer sink second; both parked at stop 0 of their cycles.
std::array<SinkState, 2> make_sinks(const FieldGeometry& geometry);

// A node is Awake iff it is alive and its cell currently hosts one of the two
// sojourn locations; everyone else sleeps. Throws a protocol error if both
// sinks sit on the same ring.
void assign_modes(std::vector<Node>& nodes, const FieldGeometry& geometry,
                  const std::array<SinkState, 2>& sinks);

// Per-node upload bookkeeping for the buffered-traffic model. Nodes sense one
// packet per round while asleep and drain the whole backlog when their cell
// is visited, so the long-run offered load is one packet per node per round
// regardless of ring. packets_per_visit >= 1 switches to a fixed number of
// packets per visit instead (1 reproduces the minimal one-shot model).
class GsmTraffic {
public:
    GsmTraffic(std::size_t n_nodes, int packets_per_visit)
        : packets_per_visit_(packets_per_visit), last_drain_(n_nodes, 0) {}

    // Number of packets the node owes at `round` (1-based).
    long packets_due(int node_id, long round) const {
        if (packets_per_visit_ >= 1) return packets_per_visit_;
        return round - last_drain_[static_cast<std::size_t>(node_id)];
    }
    void mark_drained(int node_id, long round) {
        last_drain_[static_cast<std::size_t>(node_id)] = round;
    }
    int packets_per_visit() const { return packets_per_visit_; }

private:
    int packets_per_visit_;
    std::vector<long> last_drain_;
};

// Every awake alive node uploads directly to the sink parked in its cell:
// each packet costs tx_energy(k, d_i) with d_i the true Euclidean distance to
// the sink. Sinks are battery-free vehicles, so no rx debit lands on any
// node. A packet whose debit kills the sender is lost; earlier packets from
// the same drain still count. `round` is the 1-based simulation round.
GsmRoundOutcome run_sojourn(std::vector<Node>& nodes, const FieldGeometry& geometry,
                            const std::array<SinkState, 2>& sinks,
                            const EnergyParams& params, long packet_bits,
                            GsmTraffic& traffic, long round,
                            EnergyAudit* audit = nullptr);

// Move both sinks to their next stop (modular) and bump both epoch counters.
void advance_sinks(const FieldGeometry& geometry, std::array<SinkState, 2>& sinks);

} // namespace gsmsim
