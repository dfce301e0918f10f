#include "gsmsim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gsmsim/errors.hpp"

namespace gsmsim {

void DelayParams::validate() const {
    if (arrival_rate < 0.0) throw ConfigError("arrival_rate", "must be >= 0");
    if (arrival_burst < 0.0) throw ConfigError("arrival_burst", "must be >= 0");
    if (service_rate < 0.0) throw ConfigError("service_rate", "must be >= 0");
    if (!(epoch_duration > 0.0)) throw ConfigError("epoch_duration", "must be > 0");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value, int line) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError(key, "line " + std::to_string(line) + ": expected a number, got '" +
                                   value + "'");
    return out;
}

long to_long(const std::string& key, const std::string& value, int line) {
    long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError(key, "line " + std::to_string(line) + ": expected an integer, got '" +
                                   value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key, "line " + std::to_string(line) + ": expected true/false, got '" +
                               value + "'");
}

std::uint64_t to_u64(const std::string& text) {
    std::uint64_t out = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError("seeds", "expected an unsigned integer, got '" + text + "'");
    return out;
}

} // namespace

std::vector<std::uint64_t> parse_seed_range(const std::string& spec) {
    const std::string text = trim(spec);
    if (text.empty()) throw ConfigError("seeds", "no seeds given");
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) return {to_u64(text)};
    const std::uint64_t lo = to_u64(text.substr(0, dots));
    const std::uint64_t hi = to_u64(text.substr(dots + 2));
    if (hi < lo) throw ConfigError("seeds", "range end below start in '" + text + "'");
    if (hi - lo >= 100000) throw ConfigError("seeds", "range too large: '" + text + "'");
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
}

std::vector<Protocol> parse_protocol_list(const std::string& spec) {
    std::vector<Protocol> protocols;
    std::string item;
    std::istringstream in(trim(spec));
    while (std::getline(in, item, ',')) protocols.push_back(protocol_from_name(trim(item)));
    if (protocols.empty()) throw ConfigError("protocols", "empty protocol list");
    return protocols;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    bool seeds_set = false;
    std::uint64_t rng_seed = 0;
    bool rng_seed_set = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config",
                              "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config",
                              "line " + std::to_string(line_no) + ": expected 'key = value'");

        if (key == "n_nodes") {
            config.sim.network.n_nodes = static_cast<int>(to_long(key, value, line_no));
        } else if (key == "field_side") {
            config.sim.network.field_side = to_double(key, value, line_no);
        } else if (key == "adv_fraction") {
            config.sim.network.adv_fraction = to_double(key, value, line_no);
        } else if (key == "alpha") {
            config.sim.network.alpha = to_double(key, value, line_no);
        } else if (key == "e0") {
            config.sim.network.e0 = to_double(key, value, line_no);
        } else if (key == "packet_bits") {
            config.sim.network.packet_bits = to_long(key, value, line_no);
        } else if (key == "rng_seed") {
            rng_seed = to_u64(value);
            rng_seed_set = true;
        } else if (key == "e_elec") {
            config.sim.energy.e_elec = to_double(key, value, line_no);
        } else if (key == "eps_fs") {
            config.sim.energy.eps_fs = to_double(key, value, line_no);
        } else if (key == "eps_mp") {
            config.sim.energy.eps_mp = to_double(key, value, line_no);
        } else if (key == "e_da") {
            config.sim.energy.e_da = to_double(key, value, line_no);
        } else if (key == "divisions") {
            config.sim.divisions = static_cast<int>(to_long(key, value, line_no));
        } else if (key == "bs_x") {
            config.sim.bs_position.x = to_double(key, value, line_no);
        } else if (key == "bs_y") {
            config.sim.bs_position.y = to_double(key, value, line_no);
        } else if (key == "p_opt") {
            config.sim.p_opt = to_double(key, value, line_no);
        } else if (key == "max_rounds") {
            config.sim.max_rounds = to_long(key, value, line_no);
        } else if (key == "gsm_packets_per_visit") {
            config.sim.gsm_packets_per_visit = static_cast<int>(to_long(key, value, line_no));
        } else if (key == "arrival_rate") {
            config.delay.arrival_rate = to_double(key, value, line_no);
        } else if (key == "arrival_burst") {
            config.delay.arrival_burst = to_double(key, value, line_no);
        } else if (key == "service_rate") {
            config.delay.service_rate = to_double(key, value, line_no);
        } else if (key == "epoch_duration") {
            config.delay.epoch_duration = to_double(key, value, line_no);
        } else if (key == "lp_link_capacity") {
            config.lp_link_capacity = to_double(key, value, line_no);
        } else if (key == "lp_equal_dwell") {
            config.lp_equal_dwell = to_bool(key, value, line_no);
        } else if (key == "protocols") {
            config.protocols = parse_protocol_list(value);
        } else if (key == "seeds") {
            config.seeds = parse_seed_range(value);
            seeds_set = true;
        } else if (key == "out") {
            config.out_dir = value;
        } else {
            throw ConfigError(key, "line " + std::to_string(line_no) + ": unknown key '" +
                                       key + "'");
        }
    }

    if (rng_seed_set) {
        config.sim.network.rng_seed = rng_seed;
        if (!seeds_set) config.seeds = {rng_seed};
    }
    config.sim.validate();
    config.delay.validate();
    if (config.lp_link_capacity < 0.0)
        throw ConfigError("lp_link_capacity", "must be >= 0");
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace gsmsim
