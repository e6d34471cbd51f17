#include "svdk/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace svdk::oracle {

std::uint64_t SplitMix64::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_symmetric() { return 2.0 * next_uniform() - 1.0; }

int SplitMix64::next_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::uint64_t case_seed(std::uint64_t base, std::uint64_t index) {
    SplitMix64 g(base ^ (0x5851f42d4c957f2dULL * (index + 1)));
    return g.next_u64();
}

RandomOperatorCase RandomOperatorCase::draw(std::uint64_t seed) {
    SplitMix64 g(seed);
    const int rows = g.next_int(2, 12);
    const int cols = g.next_int(2, 12);
    RandomOperatorCase c;
    c.seed = seed;
    c.matrix.resize(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) c.matrix(i, j) = g.next_symmetric();
    return c;
}

RandomOperatorCase RandomOperatorCase::draw_with_shape(std::uint64_t seed, int rows, int cols) {
    SplitMix64 g(seed);
    RandomOperatorCase c;
    c.seed = seed;
    c.matrix.resize(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) c.matrix(i, j) = g.next_symmetric();
    return c;
}

namespace {

Eigen::VectorXd svals(const Eigen::MatrixXd& A) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues();
}

double largest_sval(const Eigen::MatrixXd& A) { return svals(A)(0); }

// Orthonormal basis of a random subspace of R^n with the given dimension.
Eigen::MatrixXd random_subspace(SplitMix64& g, int n, int dim) {
    Eigen::MatrixXd G(n, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = g.next_symmetric();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, dim);
}

} // namespace

bool check_minmax(const RandomOperatorCase& c) {
    const Eigen::MatrixXd& T = c.matrix;
    const int cols = static_cast<int>(T.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeFullV);
    const Eigen::VectorXd s = svd.singularValues();
    const Eigen::MatrixXd V = svd.matrixV();
    SplitMix64 g(c.seed ^ 0xa5a5a5a5a5a5a5a5ULL);

    for (int n = 1; n <= static_cast<int>(s.size()); ++n) {
        // (a) the SVD-constructed minimizing subspace attains s_n.
        const Eigen::MatrixXd Q = V.rightCols(cols - (n - 1));
        if (std::abs(largest_sval(T * Q) - s(n - 1)) > 1e-9) return false;
        // (b) random subspaces of the same codimension cannot do better.
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::MatrixXd R = random_subspace(g, cols, cols - (n - 1));
            if (largest_sval(T * R) < s(n - 1) - 1e-9) return false;
        }
    }
    return true;
}

bool check_product(const RandomOperatorCase& s_case, const RandomOperatorCase& t_case) {
    const Eigen::MatrixXd& S = s_case.matrix;
    const Eigen::MatrixXd& T = t_case.matrix;
    const Eigen::VectorXd ss = svals(S), st = svals(T), sts = svals(T * S);
    for (int p = 1; p <= static_cast<int>(ss.size()); ++p)
        for (int q = 1; q <= static_cast<int>(st.size()); ++q) {
            const int idx = p + q - 1;
            if (idx > static_cast<int>(sts.size())) continue;
            if (sts(idx - 1) > ss(p - 1) * st(q - 1) + 1e-10) return false;
        }
    return true;
}

bool check_sum(const RandomOperatorCase& s_case, const RandomOperatorCase& t_case) {
    const Eigen::MatrixXd& S = s_case.matrix;
    const Eigen::MatrixXd& T = t_case.matrix;
    const Eigen::VectorXd ss = svals(S), st = svals(T), ssum = svals(S + T);
    for (int p = 1; p <= static_cast<int>(ss.size()); ++p)
        for (int q = 1; q <= static_cast<int>(st.size()); ++q) {
            const int idx = p + q - 1;
            if (idx > static_cast<int>(ssum.size())) continue;
            if (ssum(idx - 1) > ss(p - 1) + st(q - 1) + 1e-10) return false;
        }
    return true;
}

bool check_restriction(const RandomOperatorCase& c, int q_codim) {
    const Eigen::MatrixXd& T = c.matrix;
    const int cols = static_cast<int>(T.cols());
    if (q_codim >= cols) return true;
    SplitMix64 g(c.seed ^ 0x3c3c3c3c3c3c3c3cULL);
    const Eigen::MatrixXd Q = random_subspace(g, cols, cols - q_codim);
    const Eigen::VectorXd st = svals(T), sr = svals(T * Q);
    for (int n = 1; n <= static_cast<int>(sr.size()); ++n) {
        const int idx = n + q_codim;
        if (idx > static_cast<int>(st.size())) continue;
        if (st(idx - 1) > sr(n - 1) + 1e-10) return false;
    }
    return true;
}

bool check_duality_and_readoff(const RandomOperatorCase& c) {
    const Eigen::MatrixXd& T = c.matrix;
    const Eigen::VectorXd s = svals(T), sa = svals(T.transpose());
    for (int n = 0; n < static_cast<int>(s.size()); ++n)
        if (std::abs(s(n) - sa(n)) > 1e-12 * std::max(1.0, s(0))) return false;

    // Operator mapping orthonormal u_n -> a_n v_n has spectrum exactly a.
    const int rows = static_cast<int>(T.rows());
    const int cols = static_cast<int>(T.cols());
    const int k = std::min(rows, cols);
    SplitMix64 g(c.seed ^ 0x0f0f0f0f0f0f0f0fULL);
    const Eigen::MatrixXd U = random_subspace(g, cols, k);
    const Eigen::MatrixXd V = random_subspace(g, rows, k);
    std::vector<double> a(static_cast<std::size_t>(k));
    for (auto& v : a) v = g.next_uniform() + 1e-3;
    std::sort(a.rbegin(), a.rend());
    Eigen::VectorXd av = Eigen::Map<Eigen::VectorXd>(a.data(), k);
    const Eigen::MatrixXd C = V * av.asDiagonal() * U.transpose();
    const Eigen::VectorXd sc = svals(C);
    for (int n = 0; n < k; ++n)
        if (std::abs(sc(n) - av(n)) > 1e-12) return false;
    return true;
}

SuiteResult run_suite(long long cases, std::uint64_t base_seed) {
    SuiteResult res;
    for (long long i = 0; i < cases; ++i) {
        const std::uint64_t s0 = case_seed(base_seed, static_cast<std::uint64_t>(4 * i));
        const std::uint64_t s1 = case_seed(base_seed, static_cast<std::uint64_t>(4 * i + 1));
        auto c = RandomOperatorCase::draw(s0);
        auto c2 = RandomOperatorCase::draw_with_shape(
            s1, 2 + static_cast<int>(s1 % 11), static_cast<int>(c.matrix.rows()));
        auto c_same = RandomOperatorCase::draw_with_shape(
            s1, static_cast<int>(c.matrix.rows()), static_cast<int>(c.matrix.cols()));
        SplitMix64 g(case_seed(base_seed, static_cast<std::uint64_t>(4 * i + 2)));
        const int q_codim = g.next_int(1, 3);

        struct Check {
            const char* name;
            bool pass;
        } checks[] = {
            {"minmax", check_minmax(c)},
            {"product", check_product(c, c2)},
            {"sum", check_sum(c, c_same)},
            {"restriction", check_restriction(c, q_codim)},
            {"duality_readoff", check_duality_and_readoff(c)},
        };
        for (const auto& ch : checks) {
            ++res.cases;
            if (!ch.pass) {
                ++res.violations;
                res.failing_seeds.push_back(c.seed);
                res.failing_checks.push_back(ch.name);
            }
        }
    }
    return res;
}

} // namespace svdk::oracle
