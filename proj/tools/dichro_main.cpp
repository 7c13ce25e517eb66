#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include <dichro/cli.hpp>

namespace {

void add_common(CLI::App* cmd, dichro::CliConfig& cfg) {
    cmd->add_option("scenario", cfg.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", cfg.output_dir, "Output directory (default: .)");
    cmd->add_option("--tol,--tolerance", cfg.tolerance, "Closure tolerance override");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarized light through dichroic and birefringent element trains"};
    app.require_subcommand(1);

    dichro::CliConfig cfg;

    CLI::App* sim = app.add_subcommand(
        "simulate", "Run every input state through the element train and trace it");
    add_common(sim, cfg);
    sim->add_option("--samples,--trace-samples", cfg.trace_samples, "Trajectory samples per element");
    sim->add_flag("--close", cfg.complete_closure, "Append the closing absorber if needed");

    CLI::App* clo = app.add_subcommand(
        "closure", "Find the third absorber closing a two-absorber train, then report phases");
    add_common(clo, cfg);

    CLI::App* wil = app.add_subcommand(
        "wilson", "Compare the path-ordered gauge holonomy against the exact loop rotation");
    add_common(wil, cfg);
    wil->add_option("--steps", cfg.wilson_steps, "Integration steps per loop segment");
    wil->add_flag("--close", cfg.complete_closure, "Append the closing absorber if needed");

    CLI::App* pha = app.add_subcommand(
        "phase", "Report rotation, enclosed solid angle and geometric phases of a closed train");
    add_common(pha, cfg);
    pha->add_flag("--close", cfg.complete_closure, "Append the closing absorber if needed");

    CLI11_PARSE(app, argc, argv);

    cfg.subcommand = app.get_subcommands().front()->get_name();
    try {
        return dichro::run_cli(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
