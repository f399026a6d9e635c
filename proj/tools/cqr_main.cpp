#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqr/cli.hpp"

namespace {

struct Common {
    std::string config;
    std::string input;
    std::string output;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON run configuration");
    cmd->add_option("--input", c.input, "event log (default: stdin)");
    cmd->add_option("--output", c.output, "table or structured")->check(CLI::IsMember({"table", "structured"}));
    cmd->add_option("--seed", c.seed, "random seed");
}

// Flags override the config file, which overrides the defaults.
cqr::RunConfig resolve(const Common& c) {
    cqr::RunConfig cfg = c.config.empty() ? cqr::RunConfig{} : cqr::load_config(c.config);
    if (!c.output.empty()) cfg.output = cqr::parse_output_format(c.output);
    if (c.seed) cfg.seed = *c.seed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community-quality player ranking: contribution quality ratings from action deltas"};
    app.require_subcommand(1);

    Common rank_opts;
    std::string snapshot;
    auto* rank = app.add_subcommand("rank", "rank players from an event log");
    add_common(rank, rank_opts);
    rank->add_option("--snapshot", snapshot, "engine snapshot to resume from and update");

    Common sim_opts;
    std::string log_path = "session_log.jsonl";
    bool log_actions = false;
    std::optional<std::size_t> per_class, actions;
    auto* simulate = app.add_subcommand("simulate", "run a seeded clustering-game session");
    add_common(simulate, sim_opts);
    simulate->add_option("--log", log_path, "where to write the event log ('-' for stdout)");
    simulate->add_flag("--log-actions", log_actions, "log drag actions instead of deltas");
    simulate->add_option("--players-per-class", per_class, "players of each class");
    simulate->add_option("--actions", actions, "actions per player");

    Common replay_opts;
    std::string matrix;
    auto* replay = app.add_subcommand("replay-paper", "replay the 20-player experiment and check the golden values");
    add_common(replay, replay_opts);
    replay->add_option("--matrix", matrix, "class-value matrix override (inline JSON or file)");

    Common tune_opts;
    auto* tune = app.add_subcommand("tune", "grid-search the configured parameterizations on a labeled log");
    add_common(tune, tune_opts);
    tune->add_option("--matrix", matrix, "class-value matrix override (inline JSON or file)");

    Common bench_opts;
    std::size_t players = 20;
    std::uint64_t bench_actions = 100000;
    auto* bench = app.add_subcommand("bench", "measure ledger retention and per-event work");
    add_common(bench, bench_opts);
    bench->add_option("--players", players, "player count P")->check(CLI::PositiveNumber);
    bench->add_option("--actions", bench_actions, "total actions A")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rank) {
            auto cfg = resolve(rank_opts);
            cqr::cli::RankOptions opts;
            if (!snapshot.empty()) opts.snapshot = snapshot;
            if (rank_opts.input.empty()) return cqr::cli::cmd_rank(cfg, std::cin, std::cout, std::cerr, opts);
            std::ifstream in(rank_opts.input);
            if (!in) throw cqr::InvalidArgument("cannot open input '" + rank_opts.input + "'");
            return cqr::cli::cmd_rank(cfg, in, std::cout, std::cerr, opts);
        }
        if (*simulate) {
            auto cfg = resolve(sim_opts);
            if (per_class) cfg.simulator.players_per_class = *per_class;
            if (actions) cfg.simulator.actions_per_player = *actions;
            cqr::cli::SimulateOptions opts{log_actions};
            if (log_path == "-") return cqr::cli::cmd_simulate(cfg, std::cout, std::cerr, std::cerr, opts);
            std::ofstream log(log_path, std::ios::trunc);
            if (!log) throw cqr::InvalidArgument("cannot write log '" + log_path + "'");
            return cqr::cli::cmd_simulate(cfg, log, std::cout, std::cerr, opts);
        }
        if (*replay) {
            auto cfg = resolve(replay_opts);
            if (!matrix.empty()) cfg.matrix = cqr::load_matrix(matrix);
            return cqr::cli::cmd_replay(cfg.matrix, cfg.output, std::cout);
        }
        if (*tune) {
            auto cfg = resolve(tune_opts);
            if (!matrix.empty()) cfg.matrix = cqr::load_matrix(matrix);
            if (tune_opts.input.empty()) return cqr::cli::cmd_tune(cfg, nullptr, std::cout, std::cerr);
            std::ifstream in(tune_opts.input);
            if (!in) throw cqr::InvalidArgument("cannot open input '" + tune_opts.input + "'");
            return cqr::cli::cmd_tune(cfg, &in, std::cout, std::cerr);
        }
        if (*bench) {
            auto cfg = resolve(bench_opts);
            return cqr::cli::cmd_bench(cfg, players, bench_actions, std::cout, std::cerr);
        }
    } catch (const cqr::Error& e) {
        std::cerr << "cqr: " << e.what() << '\n';
        return cqr::cli::input_error;
    }
    return cqr::cli::input_error;
}
