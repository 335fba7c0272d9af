// gravdeco: command-line front end for redshift-modulated two-qubit
// decoherence simulations.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gravdeco/cli.hpp"
#include "gravdeco/spacetime.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Simulate entangled qubit pairs decohering at different gravitational potentials.\n"
                 "Physical constants: G = 6.67430e-11 m^3 kg^-1 s^-2, c = 299792458 m/s,\n"
                 "hbar = 1.054571817e-34 J s, k_B = 1.380649e-23 J/K."};
    app.set_version_flag("--version", std::string("gravdeco ") + gravdeco::cli::kVersion);
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::string sweep_spec;

    auto* run = app.add_subcommand("run", "Run one scenario and write its trajectory");
    run->add_option("config", config, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides the directory of outputs.path)");

    auto* validate = app.add_subcommand("validate", "Check a scenario file and list every violation");
    validate->add_option("config", config, "Scenario JSON file")->required();

    auto* sweep = app.add_subcommand("sweep", "Run a scenario once per value of one parameter");
    sweep->add_option("config", config, "Scenario JSON file")->required();
    sweep->add_option("--sweep", sweep_spec, "axis=v1,v2,... (alpha, beta, r_b, gamma, lambda, n_th_b, ...)")
        ->required();
    sweep->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::optional<std::string> out = out_dir.empty() ? std::nullopt : std::optional(out_dir);
    try {
        if (*run)
            return gravdeco::cli::run(config, out, std::cerr);
        if (*validate) {
            const int code = gravdeco::cli::validate(config, std::cout);
            if (code == 0)
                std::cerr << config << ": valid\n";
            return code;
        }
        if (*sweep)
            return gravdeco::cli::sweep(config, sweep_spec, out, std::cerr);
    } catch (const gravdeco::DomainError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
