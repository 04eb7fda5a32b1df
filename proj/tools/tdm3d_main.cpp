#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tdm3d/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Time-multiplexed directional-backlight display simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir;
    std::uint64_t seed = 0;
    app.add_option("--scenario", scenario, "scenario file")->required();
    app.add_option("--out", out_dir, "output directory (overrides the scenario)");
    app.add_option("--seed", seed, "RNG seed for Monte-Carlo oracle runs");

    for (const char* name : {"select", "profile", "schedule", "interleave", "render", "sweep",
                             "crosstalk"}) {
        // let `tdm3d <subcommand> --scenario ...` reach the app-level options
        app.add_subcommand(name)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    tdm3d::RunOptions options;
    options.subcommand = app.get_subcommands().front()->get_name();
    options.scenario_path = scenario;
    options.out_dir_override = out_dir;
    options.seed = seed;
    return tdm3d::run(options, std::cerr);
}
