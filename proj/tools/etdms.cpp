// Experiment runner. Subcommands mirror the experiment kinds; a JSON config
// selects everything else. --output and --seed override the config in place.

#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <etdms/etdms.hpp>

namespace {

etdms::ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return etdms::config_from_json(nlohmann::json::parse(ss.str()));
}

struct CommonArgs {
    std::string config_path;
    std::string output_dir;
    std::optional<long long> seed;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", args.output_dir, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "override mesh and initial-condition seeds");
}

int run(etdms::ExperimentKind kind, const CommonArgs& args) {
    etdms::ExperimentConfig cfg = load_config(args.config_path);
    cfg.kind = kind;
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    if (args.seed) {
        cfg.mesh_seed = static_cast<std::uint64_t>(*args.seed);
        cfg.ic_seed = static_cast<std::uint64_t>(*args.seed);
    }
    const std::string dir = etdms::run_experiment(cfg);
    std::printf("%s: wrote %s (config %s)\n", etdms::kind_name(kind).c_str(), dir.c_str(),
                etdms::config_hash(cfg).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential multistep experiments for the thin-film model"};
    app.require_subcommand(1);

    CommonArgs converge_args, coarsen_args, adaptive_args, debug_args;
    attach_common(app.add_subcommand("converge", "benchmark-solution convergence table"),
                  converge_args);
    attach_common(app.add_subcommand("coarsen", "long-time run with scaling-law fits"),
                  coarsen_args);
    attach_common(app.add_subcommand("adaptive", "adaptive vs uniform step comparison"),
                  adaptive_args);
    attach_common(app.add_subcommand("step-debug", "short verbose run with per-step seminorms"),
                  debug_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("converge")) return run(etdms::ExperimentKind::converge, converge_args);
        if (app.got_subcommand("coarsen")) return run(etdms::ExperimentKind::coarsen, coarsen_args);
        if (app.got_subcommand("adaptive")) return run(etdms::ExperimentKind::adaptive, adaptive_args);
        if (app.got_subcommand("step-debug"))
            return run(etdms::ExperimentKind::step_debug, debug_args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
