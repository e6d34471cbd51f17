#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace svdk::oracle {

/// Counter-based splittable generator (splitmix64); identical streams for
/// identical seeds on every platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double next_uniform();           // [0, 1)
    double next_symmetric();         // [-1, 1)
    int next_int(int lo, int hi);    // inclusive

  private:
    std::uint64_t state_;
};

/// Derive a per-case seed from a base seed and case index.
std::uint64_t case_seed(std::uint64_t base, std::uint64_t index);

/// Random matrix with dims in 2..12 and i.i.d. uniform [-1,1) entries,
/// reproducible from the seed.
struct RandomOperatorCase {
    std::uint64_t seed = 0;
    Eigen::MatrixXd matrix;

    static RandomOperatorCase draw(std::uint64_t seed);
    static RandomOperatorCase draw_with_shape(std::uint64_t seed, int rows, int cols);
};

bool check_minmax(const RandomOperatorCase& c);
bool check_product(const RandomOperatorCase& s_case, const RandomOperatorCase& t_case);
bool check_sum(const RandomOperatorCase& s_case, const RandomOperatorCase& t_case);
bool check_restriction(const RandomOperatorCase& c, int q_codim);
bool check_duality_and_readoff(const RandomOperatorCase& c);

struct SuiteResult {
    long long cases = 0;
    long long violations = 0;
    std::vector<std::uint64_t> failing_seeds;
    std::vector<std::string> failing_checks;
};

/// Runs every check on `cases` seeded cases; any violation logs its seed.
SuiteResult run_suite(long long cases, std::uint64_t base_seed);

} // namespace svdk::oracle
