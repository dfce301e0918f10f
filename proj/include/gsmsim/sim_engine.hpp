#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsmsim/core_model.hpp"
#include "gsmsim/protocol_clustering.hpp"

namespace gsmsim {

enum class Protocol { Gsm, Leach, Sep };

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name); // throws ConfigError

struct SimConfig {
    NetworkConfig network;
    EnergyParams energy;
    int divisions = 4;          // field partition for GSM
    Point bs_position{50.0, 50.0};
    double p_opt = 0.1;
    long max_rounds = 5000;
    int gsm_packets_per_visit = 0; // 0 = buffered drain, >=1 fixed per visit

    void validate() const;
};

struct RoundMetrics {
    long round = 0;
    int alive = 0;
    int dead = 0;
    long packets = 0;
    long cum_packets = 0;
    double residual_j = 0.0;
};

// Death rounds are -1 while the corresponding event has not happened within
// the executed rounds.
struct RunSummary {
    Protocol protocol = Protocol::Gsm;
    std::uint64_t seed = 0;
    long first_death = -1;
    long half_death = -1;
    long last_death = -1;
    long total_packets = 0;
    std::vector<RoundMetrics> series;
    // Audit trail for the energy ledger: starting energy, final residual, and
    // the compensated sum of every debit recorded during the run.
    double initial_energy = 0.0;
    double final_residual = 0.0;
    double audited_debits = 0.0;
};

RunSummary run(const SimConfig& config, Protocol protocol, std::uint64_t seed);

struct ProtocolStats {
    Protocol protocol = Protocol::Gsm;
    int defined_first = 0, defined_half = 0, defined_last = 0;
    double mean_first = 0.0, sd_first = 0.0;
    double mean_half = 0.0, sd_half = 0.0;
    double mean_last = 0.0, sd_last = 0.0;
    double mean_packets = 0.0, sd_packets = 0.0;
};

struct ComparisonResult {
    std::vector<Protocol> protocols;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<RunSummary>> runs; // [protocol][seed]
    std::vector<ProtocolStats> stats;
};

// Runs every (protocol, seed) cell, reusing each seed's deployment across
// protocols for paired comparison. Cells execute in a worker pool sized by
// GSM_SIM_THREADS (0 or unset = hardware concurrency); results are identical
// regardless of scheduling.
ComparisonResult compare(const SimConfig& config, const std::vector<Protocol>& protocols,
                         const std::vector<std::uint64_t>& seeds);

std::string run_csv(const RunSummary& summary);
std::string summary_csv(const ComparisonResult& result);

} // namespace gsmsim
