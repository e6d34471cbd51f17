#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svdk {

struct RunConfig {
    std::string command;          // weyl | spectrum | thm1 | thm2 | thm3 | props | appendix
    std::string kernel = "analytic"; // cosine-sobolev | eigen-series | analytic | gaussian
    int dim = 1;
    int p = 2;
    double lam = 0.0;             // 0 means default -(d+1)/2
    double tau = 0.5;
    int n_modes = 0;              // 0 means per-dimension default truncation
    int n_quad = 0;               // 0 means resolution-floor default
    int count = 100;              // weyl eigenvalue count
    long long cases = 1000;       // oracle cases
    double q_exp = 2.0;           // appendix q
    std::uint64_t seed = 42;
    double fit_lo = 0.1;          // fraction of spectrum skipped at the head
    double fit_hi = 0.5;          // fraction of spectrum kept
    std::string output_dir = ".";
    std::string format = "json";  // csv | json
    bool plot = false;
};

struct Assertion {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

/// Uniform table row: n, s_discrete, s_exact, bound, ratio. NaN marks an
/// empty field in the CSV rendering.
struct ReportRow {
    double n = 0.0;
    double s_discrete = 0.0;
    double s_exact = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct Report {
    RunConfig config;
    std::vector<ReportRow> rows;
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, double>> scalars; // named results

    bool all_pass() const;
};

Report build_report(const RunConfig& config);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);
std::string to_svg(const Report& report);

/// Builds the report, writes <output_dir>/<command>.<format> (and .svg with
/// plot enabled); returns 0 iff every assertion passed.
int run(const RunConfig& config);

} // namespace svdk
