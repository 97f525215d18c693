#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "specworld/commands.hpp"

using namespace specworld;

int main(int argc, char** argv) {
    CLI::App app{"specworld - generator/world interaction simulator"};
    app.require_subcommand(1);

    std::string scenario_name = "gate";

    auto* run = app.add_subcommand("run", "run the interaction and emit traces");
    cli::RunOptions run_options;
    std::string run_out;
    run->add_option("scenario", scenario_name, "scenario name or file");
    run->add_option("generator", run_options.generator, "generator id")->required();
    auto* steps_opt = run->add_option("-n,--steps", run_options.steps, "number of steps");
    run->add_option("--out", run_out, "directory for per-world trace files");

    auto* check = app.add_subcommand("check", "limit verdicts for the maturity predicates");
    cli::CheckOptions check_options;
    check->add_option("scenario", scenario_name, "scenario name or file");
    check->add_option("generator", check_options.generator, "generator id")->required();
    auto* check_horizon_opt =
        check->add_option("--horizon", check_options.horizon, "limit horizon");

    auto* translate = app.add_subcommand("translate", "synthesize and verify a translation");
    cli::TranslateOptions translate_options;
    std::string world_pair;
    long long step_m = -1;
    long long step_n = -1;
    translate->add_option("scenario", scenario_name, "scenario name or file");
    translate->add_option("gen1", translate_options.gen1, "source generator id")->required();
    translate->add_option("gen2", translate_options.gen2, "destination generator id")->required();
    translate->add_option("--world", world_pair, "world or world pair W1,W2");
    translate->add_option("--m", step_m, "source step (default: least mature)");
    translate->add_option("--n", step_n, "destination step (default: least mature)");
    auto* translate_horizon_opt = translate->add_option(
        "--horizon", translate_options.horizon, "search bound for auto steps");

    auto* laws = app.add_subcommand("laws", "framework-law checks over the universes");
    laws->add_option("scenario", scenario_name, "scenario name or file");

    CLI11_PARSE(app, argc, argv);

    try {
        Scenario scenario = load_scenario(scenario_name);
        for (const std::string& note : scenario.diagnostics)
            std::cerr << "note: " << note << '\n';

        if (run->parsed()) {
            if (steps_opt->count() == 0) run_options.steps = scenario.doc.horizon;
            if (!run_out.empty()) run_options.out_dir = run_out;
            return cli::cmd_run(scenario, run_options, std::cout, std::cerr);
        }
        if (check->parsed()) {
            if (check_horizon_opt->count() == 0)
                check_options.horizon = scenario.doc.horizon;
            return cli::cmd_check(scenario, check_options, std::cout, std::cerr);
        }
        if (translate->parsed()) {
            if (translate_horizon_opt->count() == 0)
                translate_options.horizon = scenario.doc.horizon;
            if (!world_pair.empty()) {
                auto comma = world_pair.find(',');
                translate_options.world1 = world_pair.substr(0, comma);
                if (comma != std::string::npos)
                    translate_options.world2 = world_pair.substr(comma + 1);
            }
            if (step_m >= 0) translate_options.m = static_cast<std::size_t>(step_m);
            if (step_n >= 0) translate_options.n = static_cast<std::size_t>(step_n);
            return cli::cmd_translate(scenario, translate_options, std::cout, std::cerr);
        }
        if (laws->parsed()) return cli::cmd_laws(scenario, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
