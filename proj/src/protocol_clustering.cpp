#include "gsmsim/protocol_clustering.hpp"

#include <cmath>

#include "gsmsim/errors.hpp"
#include "gsmsim/kernels.hpp"

namespace gsmsim {

double ClusterConfig::p_normal() const {
    if (variant == ClusterVariant::Leach) return p_opt;
    return p_opt / (1.0 + alpha * m);
}

double ClusterConfig::p_advanced() const {
    if (variant == ClusterVariant::Leach) return p_opt;
    return p_opt * (1.0 + alpha) / (1.0 + alpha * m);
}

void ClusterConfig::validate() const {
    if (!(p_opt > 0.0 && p_opt < 1.0)) throw ConfigError("p_opt", "must be in (0, 1)");
    if (!(m >= 0.0 && m <= 1.0)) throw ConfigError("adv_fraction", "must be in [0, 1]");
    if (!(alpha >= 0.0)) throw ConfigError("alpha", "must be >= 0");
    const double pn = p_normal();
    const double pa = p_advanced();
    if (!(pn > 0.0 && pn < 1.0) || !(pa > 0.0 && pa < 1.0))
        throw ConfigError("p_opt", "class election probabilities fall outside (0, 1)");
}

namespace {

long epoch_length(double p) {
    return static_cast<long>(std::ceil(1.0 / p));
}

} // namespace

double election_threshold(const Node& node, long round, const ClusterConfig& config) {
    const double p = (node.node_class == NodeClass::Advanced) ? config.p_advanced()
                                                              : config.p_normal();
    const long len = epoch_length(p);
    const long offset = (round - 1) % len; // rounds are 1-based, the formula is not
    if (node.rounds_since_ch <= offset) return 0.0;
    return p / (1.0 - p * static_cast<double>(offset));
}

std::vector<int> elect_cluster_heads(std::vector<Node>& nodes, long round,
                                     const ClusterConfig& config, Rng& rng) {
    std::vector<int> heads;
    for (Node& node : nodes) {
        if (!node.alive) continue;
        const double threshold = election_threshold(node, round, config);
        if (threshold <= 0.0) continue;
        if (rng.uniform01() < threshold) {
            heads.push_back(node.id);
            node.rounds_since_ch = 0;
        }
    }
    return heads;
}

ClusterAssignment form_clusters(const std::vector<Node>& nodes,
                                const std::vector<int>& heads) {
    ClusterAssignment assignment;
    assignment.heads = heads;
    assignment.membership.assign(nodes.size(), ClusterAssignment::kNotParticipating);

    std::vector<double> head_x, head_y;
    head_x.reserve(heads.size());
    head_y.reserve(heads.size());
    for (int h : heads) {
        head_x.push_back(nodes[static_cast<std::size_t>(h)].position.x);
        head_y.push_back(nodes[static_cast<std::size_t>(h)].position.y);
    }

    const kernels::Backend& backend = kernels::active_backend();
    std::vector<double> d2(heads.size());
    for (const Node& node : nodes) {
        if (!node.alive) continue;
        auto& slot = assignment.membership[static_cast<std::size_t>(node.id)];
        if (heads.empty()) {
            slot = ClusterAssignment::kDirectToBs;
            continue;
        }
        bool is_head = false;
        for (int h : heads) is_head = is_head || (h == node.id);
        if (is_head) {
            slot = node.id;
            continue;
        }
        // heads are in ascending id order and argmin returns the first
        // minimum, which realizes the lower-id tie-break.
        for (std::size_t j = 0; j < heads.size(); ++j) {
            const double dx = node.position.x - head_x[j];
            const double dy = node.position.y - head_y[j];
            d2[j] = dx * dx + dy * dy;
        }
        slot = heads[backend.argmin(d2.data(), d2.size())];
    }
    return assignment;
}

namespace {

void spend(Node& node, double amount, ClusterRoundOutcome& outcome, EnergyAudit* audit) {
    const double drained = debit(node, amount);
    outcome.energy_spent += drained;
    if (audit) audit->record(node.id, drained);
    if (!node.alive) outcome.deaths.push_back(node.id);
}

} // namespace

ClusterRoundOutcome run_cluster_round(std::vector<Node>& nodes,
                                      const ClusterAssignment& assignment,
                                      const EnergyParams& params, long packet_bits,
                                      Point bs_position, EnergyAudit* audit) {
    ClusterRoundOutcome outcome;

    // Clusters are settled one head at a time in id order; within a cluster
    // members upload in id order, then the head receives, aggregates, and
    // forwards. The fixed order makes runs reproducible.
    for (int head_id : assignment.heads) {
        Node& head = nodes[static_cast<std::size_t>(head_id)];
        long delivered_members = 0;
        for (Node& member : nodes) {
            if (!member.alive || member.id == head_id) continue;
            if (assignment.membership[static_cast<std::size_t>(member.id)] != head_id)
                continue;
            const double cost =
                tx_energy_d2(params, packet_bits, dist_sq(member.position, head.position));
            spend(member, cost, outcome, audit);
            if (member.alive) ++delivered_members;
        }
        if (!head.alive) continue; // head may have died as a member of nothing; defensive
        for (long p = 0; p < delivered_members && head.alive; ++p)
            spend(head, rx_energy(params, packet_bits), outcome, audit);
        if (!head.alive) continue;
        const double agg = params.e_da * static_cast<double>(packet_bits) *
                           static_cast<double>(delivered_members + 1);
        spend(head, agg, outcome, audit);
        if (!head.alive) continue;
        const double to_bs =
            tx_energy_d2(params, packet_bits, dist_sq(head.position, bs_position));
        spend(head, to_bs, outcome, audit);
        if (head.alive) ++outcome.packets_delivered;
    }

    for (Node& node : nodes) {
        if (!node.alive) continue;
        if (assignment.membership[static_cast<std::size_t>(node.id)] !=
            ClusterAssignment::kDirectToBs)
            continue;
        const double cost =
            tx_energy_d2(params, packet_bits, dist_sq(node.position, bs_position));
        spend(node, cost, outcome, audit);
        if (node.alive) ++outcome.packets_delivered;
    }
    return outcome;
}

} // namespace gsmsim
