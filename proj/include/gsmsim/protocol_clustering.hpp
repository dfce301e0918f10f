#pragma once

#include <vector>

#include "gsmsim/core_model.hpp"
#include "gsmsim/rng.hpp"

namespace gsmsim {

enum class ClusterVariant { Leach, Sep };

struct ClusterConfig {
    double p_opt = 0.1;
    double alpha = 1.0;        // advanced energy factor, mirrors NetworkConfig
    double m = 0.1;            // advanced fraction, mirrors NetworkConfig
    Point bs_position{50.0, 50.0};
    ClusterVariant variant = ClusterVariant::Leach;

    // Per-class election probabilities. LEACH uses p_opt for everyone; SEP
    // weights by initial energy so advanced nodes serve as head more often.
    double p_normal() const;
    double p_advanced() const;
    void validate() const;
};

// membership[i] is the head id node i reports to this round; kDirectToBs when
// no head was elected, kNotParticipating for dead nodes, and the node's own
// id when it is itself a head.
struct ClusterAssignment {
    static constexpr int kDirectToBs = -1;
    static constexpr int kNotParticipating = -2;

    std::vector<int> heads;      // ascending node ids
    std::vector<int> membership; // indexed by node id
};

struct ClusterRoundOutcome {
    long packets_delivered = 0; // aggregates and direct packets reaching the BS
    double energy_spent = 0.0;
    std::vector<int> deaths;
};

// Election threshold for this round (1-based): p/(1 - p*(r mod ceil(1/p)))
// for nodes that have not served as head in the current epoch, 0 otherwise.
double election_threshold(const Node& node, long round, const ClusterConfig& config);

// Every eligible alive node draws once, in id order, and becomes head iff the
// draw lands under its threshold. Elected nodes get rounds_since_ch reset.
// Callers must bump rounds_since_ch for alive nodes before calling.
std::vector<int> elect_cluster_heads(std::vector<Node>& nodes, long round,
                                     const ClusterConfig& config, Rng& rng);

// Alive non-heads join the Euclidean-nearest head, ties to the lower head id.
// No heads at all means everyone sends straight to the base station.
ClusterAssignment form_clusters(const std::vector<Node>& nodes,
                                const std::vector<int>& heads);

// Members upload to their head (tx debit), heads receive each delivered
// member packet (rx debit), aggregate everything including their own signal
// (e_da per bit per signal), and forward one k-bit aggregate to the BS.
// Direct-to-BS nodes pay the plain tx cost. Throughput counts packets that
// reach the BS: one per surviving head plus one per surviving direct sender.
ClusterRoundOutcome run_cluster_round(std::vector<Node>& nodes,
                                      const ClusterAssignment& assignment,
                                      const EnergyParams& params, long packet_bits,
                                      Point bs_position, EnergyAudit* audit = nullptr);

} // namespace gsmsim
