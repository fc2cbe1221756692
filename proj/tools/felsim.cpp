// felsim command-line entry point.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "felsim/error.hpp"
#include "felsim/harness/config.hpp"
#include "felsim/harness/runner.hpp"
#include "felsim/harness/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("felsim");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("FELSIM_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::err);
        if (level != "error") spdlog::error("FELSIM_LOG='{}' is not one of error|info|debug; using error", level);
    }
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void run_and_write(const felsim::harness::ScenarioConfig& config, const std::vector<std::uint64_t>& seeds,
                   unsigned jobs, const std::string& out) {
    spdlog::info("running scenario '{}' ({} arms, {} seeds, {} jobs)", config.name, config.arms.size(), seeds.size(), jobs);
    const auto table = felsim::harness::run_seeds(config, seeds, jobs, [](std::uint64_t seed, const std::string& arm) {
        spdlog::debug("finished seed {} arm {}", seed, arm);
    });
    felsim::harness::write_csv(table, out);
    spdlog::info("wrote {} rows to {}/metrics.csv", table.rows.size(), out);
}

} // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Discrete-event simulator of cognitive CCN with fog-enabled edge learning"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned jobs = default_jobs();

    auto* run = app.add_subcommand("run", "Run every arm of a scenario config");
    run->add_option("--config", config_path, "Scenario config file")->required()->check(CLI::ExistingFile);
    auto* seed_opt = run->add_option("--seed", seed, "Master seed (overrides [scenario] seed)");
    run->add_option("--out", out_dir, "Output directory (overrides [scenario] output_dir)");
    run->add_option("--jobs", jobs, "Parallel replications")->check(CLI::PositiveNumber);

    std::string kind;
    std::uint64_t seeds = 1;
    bool print_config = false;
    auto* scenario = app.add_subcommand("scenario", "Run a built-in scenario over seeds 1..n");
    scenario->add_option("kind", kind, "a, b or c")->required()->check(CLI::IsMember({"a", "b", "c"}));
    scenario->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
    scenario->add_option("--out", out_dir, "Output directory (default out/<kind>)");
    scenario->add_option("--jobs", jobs, "Parallel replications")->check(CLI::PositiveNumber);
    scenario->add_flag("--print-config", print_config, "Print the scenario config and exit");

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
    validate->add_option("--config", config_path, "Scenario config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            auto config = felsim::harness::load_config(config_path);
            if (*seed_opt) config.seed = seed;
            run_and_write(config, {config.seed}, jobs, out_dir.empty() ? config.output_dir : out_dir);
        } else if (*scenario) {
            const auto k = felsim::harness::parse_scenario_kind(kind);
            const auto config = felsim::harness::scenario_for(k, 1);
            if (print_config) {
                std::cout << felsim::harness::to_ini(config);
                return 0;
            }
            std::vector<std::uint64_t> list(seeds);
            std::iota(list.begin(), list.end(), std::uint64_t{1});
            run_and_write(config, list, jobs, out_dir.empty() ? "out/" + kind : out_dir);
        } else if (*validate) {
            const auto config = felsim::harness::load_config(config_path);
            felsim::harness::validate(config);
            std::cout << config_path << ": ok\n";
        }
    } catch (const felsim::ConfigError& e) {
        spdlog::error("config error: {}", e.what());
        return kExitConfig;
    } catch (const felsim::IoError& e) {
        spdlog::error("i/o error: {}", e.what());
        return 1;
    } catch (const felsim::Error& e) {
        spdlog::error("runtime invariant violation: {}", e.what());
        return kExitInvariant;
    }
    return 0;
}
