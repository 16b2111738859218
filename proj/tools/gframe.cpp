#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gframe/cli.hpp"

int main(int argc, char** argv)
{
    gframe::RunConfig cfg;
    CLI::App app{"Controlled *-g-frames over finite-dimensional Hilbert C*-modules"};
    app.set_version_flag("--version", std::string(gframe::kToolVersion));
    app.add_option("command", cfg.command, "validate | bounds | frame-op | dual | reconstruct | multiplier | theorem | "
                                           "perturb | example | random")
        ->required()
        ->check(CLI::IsMember(gframe::cli_commands()));
    app.add_option("inputs", cfg.inputs, "system file, or perturbation descriptor for perturb");
    app.add_option("--tol", cfg.tol, "tolerance")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "sample vectors")->capture_default_str();
    app.add_option("--id", cfg.id, "theorem row; all rows when omitted");
    app.add_option("--alpha", cfg.alpha, "example: C = alpha I")->capture_default_str();
    app.add_option("--beta", cfg.beta, "example: C' = beta I")->capture_default_str();
    app.add_option("--rank", cfg.rank, "example: k of C^k; random: module rank")->capture_default_str();
    app.add_option("--nodes", cfg.nodes, "example: odd Simpson node count")->capture_default_str();
    app.add_option("--atoms", cfg.atoms, "random: atom count")->capture_default_str();
    app.add_option("--algebra", cfg.algebra, "random: M<d> or C<k>")->capture_default_str();
    app.add_flag("--commuting", cfg.commuting, "random: commuting controls");
    app.add_option("--mutant", cfg.mutant, "theorem: none | scale-member | break-commutation | wrong-k")
        ->capture_default_str();
    app.add_option("--aux", cfg.aux, "auxiliary operators (theorem) or symbol (multiplier)");
    app.add_option("--check-bounds", cfg.check_bounds, "bounds/example: expected a,b");
    app.add_option("--out", cfg.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const gframe::RunResult res = gframe::run(cfg);
    if (!res.error.empty()) std::cerr << "gframe: " << res.error << "\n";
    if (!res.document.empty()) {
        if (cfg.out) {
            std::ofstream out(*cfg.out, std::ios::binary);
            if (!out) {
                std::cerr << "gframe: cannot write '" << *cfg.out << "'\n";
                return 2;
            }
            out << res.document;
        } else {
            std::cout << res.document;
        }
    }
    return res.exit_code;
}
