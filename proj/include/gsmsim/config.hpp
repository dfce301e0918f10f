#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsmsim/sim_engine.hpp"

namespace gsmsim {

// Arrival/service parameters for the delay report. service_rate is the
// per-visit upload rate in packets per epoch; 0 selects the ring cycle
// length, which makes the duty-cycled long-run rate one packet per epoch.
struct DelayParams {
    double arrival_rate = 1.0;
    double arrival_burst = 1.0;
    double service_rate = 0.0;
    double epoch_duration = 1.0;

    void validate() const;
};

struct ExperimentConfig {
    SimConfig sim;
    DelayParams delay;
    double lp_link_capacity = 0.0; // 0 = per-cycle load default
    bool lp_equal_dwell = true;
    std::vector<Protocol> protocols{Protocol::Gsm, Protocol::Leach, Protocol::Sep};
    std::vector<std::uint64_t> seeds{1};
    std::string out_dir = "out";
};

// "A..B" inclusive range or a single "A".
std::vector<std::uint64_t> parse_seed_range(const std::string& spec);

std::vector<Protocol> parse_protocol_list(const std::string& spec);

// Strict key-value format: `key = value`, `#` comments, unknown keys are
// errors with a line diagnostic. Keys mirror the config struct fields.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

} // namespace gsmsim
