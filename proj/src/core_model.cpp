#include "gsmsim/core_model.hpp"

#include <algorithm>
#include <cmath>

#include "gsmsim/errors.hpp"
#include "gsmsim/rng.hpp"

namespace gsmsim {

double dist_sq(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double EnergyParams::d0() const {
    return std::sqrt(eps_fs / eps_mp);
}

void EnergyParams::validate() const {
    if (!(e_elec > 0.0)) throw ConfigError("e_elec", "must be > 0");
    if (!(eps_fs > 0.0)) throw ConfigError("eps_fs", "must be > 0");
    if (!(eps_mp > 0.0)) throw ConfigError("eps_mp", "must be > 0");
    if (!(e_da >= 0.0)) throw ConfigError("e_da", "must be >= 0");
}

void NetworkConfig::validate() const {
    if (n_nodes < 1) throw ConfigError("n_nodes", "must be >= 1");
    if (!(field_side > 0.0)) throw ConfigError("field_side", "must be > 0");
    if (!(adv_fraction >= 0.0 && adv_fraction <= 1.0))
        throw ConfigError("adv_fraction", "must be in [0, 1]");
    if (!(alpha >= 0.0)) throw ConfigError("alpha", "must be >= 0");
    if (!(e0 > 0.0)) throw ConfigError("e0", "must be > 0");
    if (packet_bits < 1) throw ConfigError("packet_bits", "must be >= 1");
}

std::vector<Node> deploy(const NetworkConfig& config) {
    config.validate();
    const int n_adv = static_cast<int>(std::lround(config.adv_fraction * config.n_nodes));

    Rng rng(derive_stream_seed(config.rng_seed, 0xDEB107u));
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(config.n_nodes));
    for (int i = 0; i < config.n_nodes; ++i) {
        Node node;
        node.id = i;
        // x then y, one engine: the draw order is part of the reproducibility
        // contract, so do not reorder.
        node.position.x = rng.uniform(0.0, config.field_side);
        node.position.y = rng.uniform(0.0, config.field_side);
        node.node_class = (i < n_adv) ? NodeClass::Advanced : NodeClass::Normal;
        node.energy = (node.node_class == NodeClass::Advanced)
                          ? (1.0 + config.alpha) * config.e0
                          : config.e0;
        nodes.push_back(node);
    }
    return nodes;
}

double tx_energy_d2(const EnergyParams& params, long bits, double d2) {
    if (bits <= 0) throw ArgumentError("tx_energy: bits must be > 0");
    if (d2 < 0.0) throw ArgumentError("tx_energy: negative squared distance");
    const double b = static_cast<double>(bits);
    const double d0_sq = params.eps_fs / params.eps_mp;
    // Same expression shape as the batch kernels so scalar/simd/simulation all
    // agree to the last bit.
    return params.e_elec * b + (d2 <= d0_sq ? params.eps_fs * b * d2
                                            : params.eps_mp * b * (d2 * d2));
}

double tx_energy(const EnergyParams& params, long bits, double distance) {
    if (distance < 0.0) throw ArgumentError("tx_energy: negative distance");
    return tx_energy_d2(params, bits, distance * distance);
}

double rx_energy(const EnergyParams& params, long bits) {
    if (bits <= 0) throw ArgumentError("rx_energy: bits must be > 0");
    return params.e_elec * static_cast<double>(bits);
}

double debit(Node& node, double amount) {
    if (amount < 0.0) throw ArgumentError("debit: negative amount");
    const double drained = std::min(amount, node.energy);
    node.energy -= amount;
    if (node.energy <= 0.0) {
        node.energy = 0.0;
        node.alive = false;
    }
    return drained;
}

} // namespace gsmsim
