// cflow: simulation and verification driver.
//
//   cflow simulate --config run.ini --out results/
//   cflow curvature --config run.ini --out curvature.json
//   cflow check --config run.ini [--out check.json]
//
// --seed is accepted and recorded in the summary output for future
// stochastic features; nothing consumes it yet.

#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cflow/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Kinematic dynamo toolkit for the stretched-torus metric family"};
    app.require_subcommand(1);
    app.fallthrough();

    long long seed_value = 0;
    auto* seed_opt = app.add_option(
        "--seed", seed_value, "RNG seed, recorded in outputs (currently unused)");

    std::string sim_config, sim_out;
    auto* sim = app.add_subcommand("simulate", "integrate the induction equation");
    sim->add_option("--config", sim_config, "run configuration (INI)")->required();
    sim->add_option("--out", sim_out, "output directory")->required();

    std::string curv_config, curv_out;
    auto* curv = app.add_subcommand("curvature", "dual-route curvature report");
    curv->add_option("--config", curv_config, "run configuration (INI)")->required();
    curv->add_option("--out", curv_out, "output JSON path")->required();

    std::string check_config, check_out;
    auto* chk = app.add_subcommand("check", "operator identity and convergence checks");
    chk->add_option("--config", check_config, "run configuration (INI)")->required();
    chk->add_option("--out", check_out, "optional output JSON path");

    CLI11_PARSE(app, argc, argv);
    const std::optional<long long> seed =
        seed_opt->count() > 0 ? std::optional<long long>(seed_value) : std::nullopt;

    if (sim->parsed()) return cflow::run_simulate(sim_config, sim_out, seed);
    if (curv->parsed()) return cflow::run_curvature(curv_config, curv_out);
    if (chk->parsed()) {
        std::optional<std::string> out;
        if (!check_out.empty()) out = check_out;
        return cflow::run_check(check_config, out);
    }
    return cflow::kExitConfig;
}
