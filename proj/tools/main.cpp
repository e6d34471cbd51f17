#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "svdk/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Singular value decay experiments for integral operators"};
    app.require_subcommand(1);

    svdk::RunConfig cfg;
    if (const char* env = std::getenv("SVDK_OUTPUT_DIR")) cfg.output_dir = env;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--output", cfg.output_dir, "Output directory");
        sub->add_option("--format", cfg.format, "Output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--plot", cfg.plot, "Also write an SVG plot");
    };

    auto* weyl = app.add_subcommand("weyl", "Neumann eigenvalue counting against the Weyl law");
    weyl->add_option("--dim", cfg.dim, "Box dimension")->check(CLI::Range(1, 3));
    weyl->add_option("--count", cfg.count, "Number of eigenvalues")->check(CLI::PositiveNumber);
    add_common(weyl);

    auto* spectrum = app.add_subcommand("spectrum", "Discrete vs exact singular values");
    spectrum->add_option("--kernel", cfg.kernel, "cosine-sobolev | eigen-series | analytic | gaussian");
    spectrum->add_option("--dim", cfg.dim, "Box dimension")->check(CLI::Range(1, 3));
    spectrum->add_option("--p", cfg.p, "Smoothness order")->check(CLI::PositiveNumber);
    spectrum->add_option("--lam", cfg.lam, "Coefficient exponent offset (0 = default)");
    spectrum->add_option("--tau", cfg.tau, "Geometric ratio for the analytic kernel");
    spectrum->add_option("--modes", cfg.n_modes, "Series truncation (0 = default)");
    spectrum->add_option("--quad", cfg.n_quad, "Quadrature points per axis (0 = default)");
    add_common(spectrum);

    auto* thm1 = app.add_subcommand("thm1", "Ratio against the derivative-operator estimate");
    thm1->add_option("--kernel", cfg.kernel, "cosine-sobolev | eigen-series");
    thm1->add_option("--dim", cfg.dim, "Box dimension")->check(CLI::Range(1, 3));
    thm1->add_option("--p", cfg.p, "Smoothness order")->check(CLI::PositiveNumber);
    thm1->add_option("--modes", cfg.n_modes, "Series truncation (0 = default)");
    thm1->add_option("--quad", cfg.n_quad, "Quadrature points per axis (0 = default)");
    add_common(thm1);

    auto* thm2 = app.add_subcommand("thm2", "Closed-form lower bound margins");
    thm2->add_option("--dim", cfg.dim, "Box dimension")->check(CLI::Range(1, 3));
    thm2->add_option("--p", cfg.p, "Smoothness order")->check(CLI::PositiveNumber);
    thm2->add_option("--lam", cfg.lam, "Coefficient exponent offset (0 = default)");
    thm2->add_option("--modes", cfg.n_modes, "Levels to expand (0 = default 20)");
    add_common(thm2);

    auto* thm3 = app.add_subcommand("thm3", "Stretched-exponential decay fit");
    thm3->add_option("--dim", cfg.dim, "Box dimension")->check(CLI::Range(1, 3));
    thm3->add_option("--tau", cfg.tau, "Geometric ratio")->check(CLI::Range(1e-6, 1.0 - 1e-6));
    thm3->add_option("--modes", cfg.n_modes, "Series truncation (0 = default 40)");
    thm3->add_option("--fit-lo", cfg.fit_lo, "Head fraction skipped by the fit");
    thm3->add_option("--fit-hi", cfg.fit_hi, "Spectrum fraction where the fit stops");
    add_common(thm3);

    auto* props = app.add_subcommand("props", "Randomized singular value property suite");
    props->add_option("--cases", cfg.cases, "Number of random cases")->check(CLI::PositiveNumber);
    props->add_option("--seed", cfg.seed, "Base seed");
    add_common(props);

    auto* appendix = app.add_subcommand("appendix", "Scaled-sequence and partial-sum checks");
    appendix->add_option("--p", cfg.p, "Decay order")->check(CLI::PositiveNumber);
    appendix->add_option("--q", cfg.q_exp, "Summability exponent")->check(CLI::Range(1e-6, 1e6));
    add_common(appendix);

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        const int status = svdk::run(cfg);
        std::cout << (status == 0 ? "OK" : "FAIL") << " " << cfg.command << " -> "
                  << cfg.output_dir << "/" << cfg.command << "." << cfg.format << "\n";
        return status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
