#include <array>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsmsim/config.hpp"
#include "gsmsim/delay_report.hpp"
#include "gsmsim/errors.hpp"
#include "gsmsim/geometry.hpp"
#include "gsmsim/lifetime_lp.hpp"
#include "gsmsim/sim_engine.hpp"

namespace {

using namespace gsmsim;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string seeds_spec;
};

ExperimentConfig make_config(const CommonArgs& args) {
    ExperimentConfig config =
        args.config_path.empty() ? ExperimentConfig{} : load_config(args.config_path);
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    if (!args.seeds_spec.empty()) config.seeds = parse_seed_range(args.seeds_spec);
    return config;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out.flush()) throw Error("write failed for '" + path.string() + "'");
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "'");
    return dir;
}

int cmd_run(const CommonArgs& args, const std::vector<std::string>& protocol_names,
            long rounds_override) {
    ExperimentConfig config = make_config(args);
    if (!protocol_names.empty()) {
        config.protocols.clear();
        for (const std::string& name : protocol_names)
            config.protocols.push_back(protocol_from_name(name));
    }
    if (rounds_override > 0) config.sim.max_rounds = rounds_override;

    const ComparisonResult result = compare(config.sim, config.protocols, config.seeds);
    const std::filesystem::path dir = prepare_out_dir(config);
    for (std::size_t pi = 0; pi < result.protocols.size(); ++pi) {
        for (std::size_t si = 0; si < result.seeds.size(); ++si) {
            const RunSummary& summary = result.runs[pi][si];
            const std::string name = std::string("run_") + protocol_name(summary.protocol) +
                                     "_" + std::to_string(summary.seed) + ".csv";
            write_file(dir / name, run_csv(summary));
        }
    }
    write_file(dir / "summary.csv", summary_csv(result));

    std::cout << "protocol  seeds  first_death      half_death       last_death       "
                 "total_packets\n";
    for (const ProtocolStats& s : result.stats) {
        std::cout << std::left << std::setw(10) << protocol_name(s.protocol) << std::setw(7)
                  << result.seeds.size() << std::fixed << std::setprecision(1) << std::setw(8)
                  << s.mean_first << " +-" << std::setw(6) << s.sd_first << std::setw(8)
                  << s.mean_half << " +-" << std::setw(6) << s.sd_half << std::setw(8)
                  << s.mean_last << " +-" << std::setw(6) << s.sd_last << std::setw(11)
                  << s.mean_packets << " +-" << s.sd_packets << "\n";
    }
    std::cout << "wrote " << (result.protocols.size() * result.seeds.size() + 1)
              << " files to " << dir.string() << "\n";
    return 0;
}

int cmd_lp(const CommonArgs& args, bool do_export, bool do_solve) {
    ExperimentConfig config = make_config(args);
    NetworkConfig net = config.sim.network;
    net.rng_seed = config.seeds.front();
    const std::vector<Node> nodes = deploy(net);
    const FieldGeometry geometry =
        partition_field(net.field_side, config.sim.divisions);
    const std::array<Trajectory, 2> schedule{build_trajectory(geometry, Ring::Inner),
                                             build_trajectory(geometry, Ring::Outer)};
    LpBuildOptions options;
    options.packets_per_visit = config.sim.gsm_packets_per_visit;
    options.link_capacity = config.lp_link_capacity;
    options.equal_dwell = config.lp_equal_dwell;
    const LpInstance lp =
        build_lifetime_lp(nodes, geometry, schedule, config.sim.energy,
                          net.packet_bits, options);

    if (do_export) {
        const std::filesystem::path dir = prepare_out_dir(config);
        write_file(dir / "lifetime.lp", export_lp(lp));
        std::cout << "wrote " << (dir / "lifetime.lp").string() << "\n";
    }
    if (do_solve) {
        const LpSolution solution = solve_lp(lp);
        switch (solution.status) {
        case LpStatus::Optimal: {
            std::cout << "status Optimal\nT* = " << solution.objective_value << "\n";
            for (std::size_t j = 0; j < lp.variables.size(); ++j) {
                const std::string& name = lp.variables[j].name;
                if (name.rfind("t_", 0) == 0)
                    std::cout << name << " = " << solution.values[j] << "\n";
            }
            break;
        }
        case LpStatus::Infeasible:
            std::cout << "status Infeasible\n";
            break;
        case LpStatus::Unbounded:
            std::cout << "status Unbounded\n";
            break;
        }
    }
    return 0;
}

int cmd_delay(const CommonArgs& args) {
    ExperimentConfig config = make_config(args);
    NetworkConfig net = config.sim.network;
    net.rng_seed = config.seeds.front();
    const std::vector<Node> nodes = deploy(net);
    const FieldGeometry geometry =
        partition_field(net.field_side, config.sim.divisions);
    const DelayReport report = build_delay_report(nodes, geometry, config.delay);
    const std::filesystem::path dir = prepare_out_dir(config);
    write_file(dir / "delay.csv", delay_csv(report));
    std::cout << "network delay bound = " << report.network_bound << "\n";
    std::cout << "wrote " << (dir / "delay.csv").string() << "\n";
    return 0;
}

int cmd_geometry(const CommonArgs& args) {
    ExperimentConfig config = make_config(args);
    const FieldGeometry geometry =
        partition_field(config.sim.network.field_side, config.sim.divisions);
    const std::filesystem::path dir = prepare_out_dir(config);
    write_file(dir / "geometry.csv", geometry_csv(geometry));
    std::cout << "wrote " << (dir / "geometry.csv").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-round WSN simulator: dual mobile sinks on geometric "
                 "trajectories vs LEACH/SEP clustering, with an LP lifetime bound "
                 "and network-calculus delay bounds"};
    app.require_subcommand(1);

    CommonArgs common;
    std::vector<std::string> protocol_names;
    long rounds_override = 0;
    bool lp_export = false, lp_solve = false;

    auto add_common = [&common](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "Key-value config file");
        cmd->add_option("--out", common.out_dir, "Output directory");
        cmd->add_option("--seeds", common.seeds_spec, "Seed or inclusive range A..B");
    };

    CLI::App* run_cmd =
        app.add_subcommand("run", "Run protocol comparison and write per-run CSVs");
    add_common(run_cmd);
    run_cmd->add_option("--protocol", protocol_names, "Protocol (gsm, leach, sep); repeatable")
        ->check(CLI::IsMember({"gsm", "leach", "sep"}));
    run_cmd->add_option("--rounds", rounds_override, "Round cap override");

    CLI::App* lp_cmd = app.add_subcommand("lp", "Build the lifetime LP; export and/or solve");
    add_common(lp_cmd);
    lp_cmd->add_flag("--export", lp_export, "Write the LP text file");
    lp_cmd->add_flag("--solve", lp_solve, "Solve with the internal simplex");

    CLI::App* delay_cmd =
        app.add_subcommand("delay", "Write per-node delay bounds for the sink schedule");
    add_common(delay_cmd);

    CLI::App* geometry_cmd =
        app.add_subcommand("geometry", "Write cell centers and trajectories as CSV");
    add_common(geometry_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(common, protocol_names, rounds_override);
        if (lp_cmd->parsed()) {
            if (!lp_export && !lp_solve)
                throw ConfigError("lp", "pass --export and/or --solve");
            return cmd_lp(common, lp_export, lp_solve);
        }
        if (delay_cmd->parsed()) return cmd_delay(common);
        if (geometry_cmd->parsed()) return cmd_geometry(common);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
