#include "gsmsim/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "gsmsim/errors.hpp"
#include "gsmsim/geometry.hpp"
#include "gsmsim/kernels.hpp"
#include "gsmsim/protocol_gsm.hpp"
#include "gsmsim/rng.hpp"

namespace gsmsim {

const char* protocol_name(Protocol p) {
    switch (p) {
    case Protocol::Gsm: return "gsm";
    case Protocol::Leach: return "leach";
    case Protocol::Sep: return "sep";
    }
    return "?";
}

Protocol protocol_from_name(const std::string& name) {
    if (name == "gsm") return Protocol::Gsm;
    if (name == "leach") return Protocol::Leach;
    if (name == "sep") return Protocol::Sep;
    throw ConfigError("protocol", "unknown protocol '" + name + "'");
}

void SimConfig::validate() const {
    network.validate();
    energy.validate();
    if (max_rounds < 1) throw ConfigError("max_rounds", "must be >= 1");
    if (gsm_packets_per_visit < 0)
        throw ConfigError("gsm_packets_per_visit", "must be >= 0");
    if (!(p_opt > 0.0 && p_opt < 1.0)) throw ConfigError("p_opt", "must be in (0, 1)");
    partition_field(network.field_side, divisions); // validates divisions
}

namespace {

constexpr std::uint64_t kElectionStream = 0xE1EC7;

struct DeathTracker {
    int n_nodes;
    long first = -1, half = -1, last = -1;

    void observe(long round, int alive) {
        if (first < 0 && alive < n_nodes) first = round;
        if (half < 0 && 2 * alive <= n_nodes) half = round;
        if (last < 0 && alive == 0) last = round;
    }
};

double residual_energy(const std::vector<Node>& nodes, std::vector<double>& scratch) {
    scratch.clear();
    for (const Node& node : nodes) scratch.push_back(node.energy);
    return kernels::active_backend().sum(scratch.data(), scratch.size());
}

int alive_count(const std::vector<Node>& nodes) {
    int alive = 0;
    for (const Node& node : nodes) alive += node.alive ? 1 : 0;
    return alive;
}

RunSummary run_gsm(const SimConfig& config, std::uint64_t seed) {
    NetworkConfig net = config.network;
    net.rng_seed = seed;
    std::vector<Node> nodes = deploy(net);

    const FieldGeometry geometry = partition_field(net.field_side, config.divisions);
    std::array<SinkState, 2> sinks = make_sinks(geometry);
    GsmTraffic traffic(nodes.size(), config.gsm_packets_per_visit);
    EnergyAudit audit(nodes.size());

    RunSummary summary;
    summary.protocol = Protocol::Gsm;
    summary.seed = seed;
    std::vector<double> scratch;
    summary.initial_energy = residual_energy(nodes, scratch);
    DeathTracker deaths{net.n_nodes};

    long cum_packets = 0;
    for (long round = 1; round <= config.max_rounds; ++round) {
        assign_modes(nodes, geometry, sinks);
        const GsmRoundOutcome outcome = run_sojourn(nodes, geometry, sinks, config.energy,
                                                    net.packet_bits, traffic, round, &audit);
        advance_sinks(geometry, sinks);

        cum_packets += outcome.packets_delivered;
        RoundMetrics metrics;
        metrics.round = round;
        metrics.alive = alive_count(nodes);
        metrics.dead = net.n_nodes - metrics.alive;
        metrics.packets = outcome.packets_delivered;
        metrics.cum_packets = cum_packets;
        metrics.residual_j = residual_energy(nodes, scratch);
        summary.series.push_back(metrics);
        deaths.observe(round, metrics.alive);
        if (metrics.alive == 0) break;
    }
    summary.first_death = deaths.first;
    summary.half_death = deaths.half;
    summary.last_death = deaths.last;
    summary.total_packets = cum_packets;
    summary.final_residual = summary.series.empty() ? summary.initial_energy
                                                    : summary.series.back().residual_j;
    summary.audited_debits = audit.total();
    return summary;
}

RunSummary run_clustering(const SimConfig& config, Protocol protocol, std::uint64_t seed) {
    NetworkConfig net = config.network;
    net.rng_seed = seed;
    std::vector<Node> nodes = deploy(net);

    ClusterConfig cluster;
    cluster.p_opt = config.p_opt;
    cluster.alpha = net.alpha;
    cluster.m = net.adv_fraction;
    cluster.bs_position = config.bs_position;
    cluster.variant = protocol == Protocol::Sep ? ClusterVariant::Sep : ClusterVariant::Leach;
    cluster.validate();

    Rng election_rng(derive_stream_seed(seed, kElectionStream));
    EnergyAudit audit(nodes.size());

    RunSummary summary;
    summary.protocol = protocol;
    summary.seed = seed;
    std::vector<double> scratch;
    summary.initial_energy = residual_energy(nodes, scratch);
    DeathTracker deaths{net.n_nodes};

    long cum_packets = 0;
    for (long round = 1; round <= config.max_rounds; ++round) {
        for (Node& node : nodes)
            if (node.alive) ++node.rounds_since_ch;
        const std::vector<int> heads =
            elect_cluster_heads(nodes, round, cluster, election_rng);
        const ClusterAssignment assignment = form_clusters(nodes, heads);
        const ClusterRoundOutcome outcome = run_cluster_round(
            nodes, assignment, config.energy, net.packet_bits, cluster.bs_position, &audit);

        cum_packets += outcome.packets_delivered;
        RoundMetrics metrics;
        metrics.round = round;
        metrics.alive = alive_count(nodes);
        metrics.dead = net.n_nodes - metrics.alive;
        metrics.packets = outcome.packets_delivered;
        metrics.cum_packets = cum_packets;
        metrics.residual_j = residual_energy(nodes, scratch);
        summary.series.push_back(metrics);
        deaths.observe(round, metrics.alive);
        if (metrics.alive == 0) break;
    }
    summary.first_death = deaths.first;
    summary.half_death = deaths.half;
    summary.last_death = deaths.last;
    summary.total_packets = cum_packets;
    summary.final_residual = summary.series.empty() ? summary.initial_energy
                                                    : summary.series.back().residual_j;
    summary.audited_debits = audit.total();
    return summary;
}

} // namespace

RunSummary run(const SimConfig& config, Protocol protocol, std::uint64_t seed) {
    config.validate();
    if (protocol == Protocol::Gsm) return run_gsm(config, seed);
    return run_clustering(config, protocol, seed);
}

namespace {

std::size_t worker_count(std::size_t jobs) {
    long requested = 0;
    if (const char* env = std::getenv("GSM_SIM_THREADS")) {
        char* end = nullptr;
        requested = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || requested < 0)
            throw ConfigError("GSM_SIM_THREADS", "must be a non-negative integer");
    }
    std::size_t n = requested > 0 ? static_cast<std::size_t>(requested)
                                  : std::max(1u, std::thread::hardware_concurrency());
    return std::min(n, jobs);
}

void accumulate(const std::vector<double>& xs, double& mean, double& sd) {
    if (xs.empty()) {
        mean = 0.0;
        sd = 0.0;
        return;
    }
    double sum = 0.0;
    for (double x : xs) sum += x;
    mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        sd = 0.0;
        return;
    }
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

} // namespace

ComparisonResult compare(const SimConfig& config, const std::vector<Protocol>& protocols,
                         const std::vector<std::uint64_t>& seeds) {
    if (protocols.empty()) throw ConfigError("protocols", "need at least one protocol");
    if (seeds.empty()) throw ConfigError("seeds", "need at least one seed");
    config.validate();

    ComparisonResult result;
    result.protocols = protocols;
    result.seeds = seeds;
    result.runs.assign(protocols.size(), std::vector<RunSummary>(seeds.size()));

    const std::size_t jobs = protocols.size() * seeds.size();
    const std::size_t workers = worker_count(jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs) return;
            const std::size_t pi = job / seeds.size();
            const std::size_t si = job % seeds.size();
            try {
                result.runs[pi][si] = run(config, protocols[pi], seeds[si]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(jobs);
                return;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t pi = 0; pi < protocols.size(); ++pi) {
        ProtocolStats stats;
        stats.protocol = protocols[pi];
        std::vector<double> first, half, last, packets;
        for (const RunSummary& summary : result.runs[pi]) {
            if (summary.first_death >= 0) first.push_back(double(summary.first_death));
            if (summary.half_death >= 0) half.push_back(double(summary.half_death));
            if (summary.last_death >= 0) last.push_back(double(summary.last_death));
            packets.push_back(double(summary.total_packets));
        }
        stats.defined_first = static_cast<int>(first.size());
        stats.defined_half = static_cast<int>(half.size());
        stats.defined_last = static_cast<int>(last.size());
        accumulate(first, stats.mean_first, stats.sd_first);
        accumulate(half, stats.mean_half, stats.sd_half);
        accumulate(last, stats.mean_last, stats.sd_last);
        accumulate(packets, stats.mean_packets, stats.sd_packets);
        result.stats.push_back(stats);
    }
    return result;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string run_csv(const RunSummary& summary) {
    std::string out = "round,alive,dead,packets,cum_packets,residual_j\n";
    for (const RoundMetrics& m : summary.series) {
        out += std::to_string(m.round);
        out += ',';
        out += std::to_string(m.alive);
        out += ',';
        out += std::to_string(m.dead);
        out += ',';
        out += std::to_string(m.packets);
        out += ',';
        out += std::to_string(m.cum_packets);
        out += ',';
        out += fmt_double(m.residual_j);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const ComparisonResult& result) {
    std::string out = "protocol,seed,first_death,half_death,last_death,total_packets\n";
    for (std::size_t pi = 0; pi < result.protocols.size(); ++pi) {
        for (std::size_t si = 0; si < result.seeds.size(); ++si) {
            const RunSummary& s = result.runs[pi][si];
            out += protocol_name(result.protocols[pi]);
            out += ',';
            out += std::to_string(result.seeds[si]);
            out += ',';
            out += std::to_string(s.first_death);
            out += ',';
            out += std::to_string(s.half_death);
            out += ',';
            out += std::to_string(s.last_death);
            out += ',';
            out += std::to_string(s.total_packets);
            out += '\n';
        }
    }
    return out;
}

} // namespace gsmsim
