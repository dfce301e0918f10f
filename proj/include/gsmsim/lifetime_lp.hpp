#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gsmsim/core_model.hpp"
#include "gsmsim/geometry.hpp"

namespace gsmsim {

enum class LpRelation { Le, Ge, Eq };

struct LpTerm {
    std::size_t var = 0;
    double coeff = 0.0;
};

struct LpConstraint {
    std::string name;
    std::vector<LpTerm> terms;
    LpRelation rel = LpRelation::Le;
    double rhs = 0.0;
};

struct LpVariable {
    std::string name;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

// A maximization LP. comments are carried into the text export as leading
// "\"-prefixed lines (fixed schedule placements, modeling notes).
struct LpInstance {
    std::vector<LpVariable> variables;
    std::vector<double> objective; // one coefficient per variable
    std::vector<LpConstraint> constraints;
    std::vector<std::string> comments;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;
    std::vector<double> values; // aligned with LpInstance::variables
};

struct LpBuildOptions {
    // 0 means buffered-drain traffic: a visited node uploads one packet per
    // elapsed round, so its per-awake-round load is the ring cycle length.
    // >= 1 means that many packets per visit.
    int packets_per_visit = 0;
    // Per-cycle link capacity; 0 defaults to the per-cycle load so the rate
    // rows bind only when configured tighter.
    double link_capacity = 0.0;
    // Tie sojourn durations within each ring, matching the cyclic schedule
    // that dwells equally at every stop.
    bool equal_dwell = true;
};

// Lifetime-maximization program for a fixed sojourn schedule: one duration
// variable per stop, one delivered-traffic variable per node. Per node, the
// energy row caps total upload energy by initial energy, the flow row pins
// delivered packets per cycle to the generated amount, and the rate row caps
// them by link capacity. Throws a model error naming any node whose cell is
// never visited.
LpInstance build_lifetime_lp(const std::vector<Node>& nodes, const FieldGeometry& geometry,
                             const std::array<Trajectory, 2>& schedule,
                             const EnergyParams& params, long packet_bits,
                             const LpBuildOptions& options = {});

// Dense two-phase primal simplex with Bland's rule. Optimal solutions sit on
// a vertex; Infeasible and Unbounded are reported as statuses, not errors.
LpSolution solve_lp(const LpInstance& instance);

// LP text format: comment lines, then Maximize / Subject To / Bounds / End.
// Numbers are printed shortest-round-trip so parsing the output reproduces
// the instance exactly.
std::string export_lp(const LpInstance& instance);

// Parses the exact dialect emitted by export_lp.
LpInstance parse_lp(const std::string& text);

} // namespace gsmsim
