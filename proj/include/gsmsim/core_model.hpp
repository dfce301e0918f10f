#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gsmsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double dist_sq(Point a, Point b);

enum class NodeClass { Normal, Advanced };
enum class NodeMode { Sleep, Awake };

// A stationary sensor. node_class and position are fixed at deployment;
// energy only decreases, and alive <=> energy > 0.
struct Node {
    int id = 0;
    Point position;
    NodeClass node_class = NodeClass::Normal;
    double energy = 0.0;
    bool alive = true;
    NodeMode mode = NodeMode::Sleep;
    int rounds_since_ch = 1 << 20; // effectively "never served as CH"
};

// First-order radio model parameters. Defaults are the constants used
// throughout the LEACH/SEP literature.
struct EnergyParams {
    double e_elec = 50e-9;      // J/bit, electronics (tx and rx)
    double eps_fs = 10e-12;     // J/bit/m^2, free-space amplifier
    double eps_mp = 0.0013e-12; // J/bit/m^4, multipath amplifier
    double e_da = 5e-9;         // J/bit, aggregation (cluster heads only)

    double d0() const;    // crossover distance sqrt(eps_fs/eps_mp), derived
    void validate() const;
};

struct NetworkConfig {
    int n_nodes = 100;
    double field_side = 100.0;
    double adv_fraction = 0.1; // m
    double alpha = 1.0;        // advanced nodes start with (1+alpha)*e0
    double e0 = 0.5;           // J
    long packet_bits = 4000;   // k
    std::uint64_t rng_seed = 1;

    void validate() const; // throws ConfigError naming the bad field
};

// Random uniform deployment; exactly round(adv_fraction * n_nodes) nodes are
// Advanced (ids 0..n_adv-1) with energy (1+alpha)*e0. Same seed, same nodes.
std::vector<Node> deploy(const NetworkConfig& config);

// Transmit cost for `bits` over `distance` meters: free-space amplifier below
// the crossover distance d0, multipath above it.
double tx_energy(const EnergyParams& params, long bits, double distance);

// Same model evaluated from a squared distance; this is the canonical form
// used by the simulation kernels (no sqrt round-trip).
double tx_energy_d2(const EnergyParams& params, long bits, double d2);

double rx_energy(const EnergyParams& params, long bits);

// Subtract `amount` J, clamping at zero; a node reaching zero dies and never
// transmits or receives again. Returns the energy actually drained, which is
// less than `amount` when the clamp hits.
double debit(Node& node, double amount);

// Per-run energy bookkeeping: every debit is recorded here so tests can check
// that node state and the ledger agree. Totals use Neumaier summation so the
// audit tolerance is not eaten by accumulation error.
class EnergyAudit {
public:
    explicit EnergyAudit(std::size_t n_nodes) : per_node_(n_nodes, 0.0) {}

    void record(int node_id, double amount) {
        per_node_[static_cast<std::size_t>(node_id)] += amount;
        add_total(amount);
    }

    double total() const { return total_ + compensation_; }
    double per_node(int node_id) const { return per_node_[static_cast<std::size_t>(node_id)]; }

private:
    void add_total(double amount) {
        const double t = total_ + amount;
        if (std::abs(total_) >= std::abs(amount)) {
            compensation_ += (total_ - t) + amount;
        } else {
            compensation_ += (amount - t) + total_;
        }
        total_ = t;
    }

    std::vector<double> per_node_;
    double total_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace gsmsim
