#include <iostream>

#include <CLI11.hpp>

#include "wittenlab/runner.hpp"
#include "wittenlab/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Witten-Laplacian heat-kernel laboratory"};
    app.set_version_flag("--version", std::string("wittenlab ") + wittenlab::kVersion);
    app.require_subcommand(1);

    struct Sub {
        std::string name;
        std::string help;
    };
    const std::vector<Sub> subs = {
        {"model-check", "closed-form oscillator identities (Mehler, trace integrals, indicator)"},
        {"spectrum", "eigenvalues of the Witten Laplacian over the (k, degree) sweep"},
        {"heat-trace", "heat traces over the (k, degree, t_eff) sweep"},
        {"scaled-kernel", "scaled-kernel convergence report against the model kernel"},
        {"decay", "annulus and far-field decay probes"},
        {"bochner", "Rayleigh-quotient spot check on annulus-supported cochains"},
        {"morse-report", "Betti/Morse counts and the Morse-inequality verdict"},
    };
    std::string config_path;
    std::string out_override;
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--out", out_override, "output directory (overrides config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors map to the exit-code contract
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        wittenlab::RunConfig cfg = wittenlab::load_config(config_path);
        if (!out_override.empty())
            cfg.output_dir = out_override;
        return wittenlab::run_subcommand(name, cfg, std::cout);
    } catch (const wittenlab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
