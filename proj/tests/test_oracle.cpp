#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "svdk/oracle.hpp"

using namespace svdk::oracle;

TEST_CASE("splitmix64 streams are deterministic and seed-sensitive") {
    SplitMix64 a(42), b(42), c(43);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    SplitMix64 a2(42);
    for (int i = 0; i < 16; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);

    SplitMix64 g(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = g.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double s = g.next_symmetric();
        CHECK(s >= -1.0);
        CHECK(s < 1.0);
        const int k = g.next_int(2, 12);
        CHECK(k >= 2);
        CHECK(k <= 12);
    }
}

TEST_CASE("cases are reproducible from their seed") {
    auto c1 = RandomOperatorCase::draw(123);
    auto c2 = RandomOperatorCase::draw(123);
    CHECK(c1.matrix.rows() == c2.matrix.rows());
    CHECK((c1.matrix - c2.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK(c1.matrix.rows() >= 2);
    CHECK(c1.matrix.rows() <= 12);
    CHECK(c1.matrix.cols() >= 2);
    CHECK(c1.matrix.cols() <= 12);
    CHECK(c1.matrix.cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("min-max: diagonal case is transparent") {
    RandomOperatorCase c;
    c.seed = 1;
    c.matrix = Eigen::Vector3d(3.0, 2.0, 1.0).asDiagonal();
    CHECK(check_minmax(c));
}

TEST_CASE("min-max on a fixed random rectangular case") {
    auto c = RandomOperatorCase::draw_with_shape(991, 8, 6);
    CHECK(check_minmax(c));
}

TEST_CASE("product inequality with an identity factor") {
    auto s = RandomOperatorCase::draw_with_shape(5, 6, 6);
    RandomOperatorCase id;
    id.seed = 0;
    id.matrix = Eigen::MatrixXd::Identity(6, 6);
    CHECK(check_product(s, id));
    CHECK(check_product(s, s));
}

TEST_CASE("sum inequality: zero and negation edge cases") {
    auto s = RandomOperatorCase::draw_with_shape(9, 5, 7);
    RandomOperatorCase z;
    z.seed = 0;
    z.matrix = Eigen::MatrixXd::Zero(5, 7);
    CHECK(check_sum(s, z));
    RandomOperatorCase neg;
    neg.seed = 0;
    neg.matrix = -s.matrix;
    CHECK(check_sum(s, neg));
}

TEST_CASE("restriction interlacing, including the trivial codimension") {
    auto c = RandomOperatorCase::draw_with_shape(17, 9, 9);
    CHECK(check_restriction(c, 0));
    for (int q = 1; q <= 3; ++q) CHECK(check_restriction(c, q));
}

TEST_CASE("coordinate-subspace restriction equals column deletion") {
    // Deleting q columns realizes a codimension-q restriction; interlacing
    // must hold against the full spectrum (independent of the random-subspace
    // path used inside check_restriction).
    auto c = RandomOperatorCase::draw_with_shape(29, 7, 7);
    Eigen::JacobiSVD<Eigen::MatrixXd> full(c.matrix);
    Eigen::MatrixXd sub = c.matrix.leftCols(5);
    Eigen::JacobiSVD<Eigen::MatrixXd> restr(sub);
    for (int n = 0; n < restr.singularValues().size(); ++n) {
        const int idx = n + 2;
        if (idx >= full.singularValues().size()) continue;
        CHECK(full.singularValues()(idx) <= restr.singularValues()(n) + 1e-12);
    }
}

TEST_CASE("duality and read-off") {
    auto c = RandomOperatorCase::draw_with_shape(71, 7, 9);
    CHECK(check_duality_and_readoff(c));
    // Symmetric matrix: singular values are absolute eigenvalues.
    Eigen::MatrixXd S(2, 2);
    S << 2.0, 1.0, 1.0, 2.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S);
    CHECK(svd.singularValues()(0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(svd.singularValues()(1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("suite of 100 cases has no violations and logs nothing") {
    auto res = run_suite(100, 42);
    CHECK(res.cases == 500);
    CHECK(res.violations == 0);
    CHECK(res.failing_seeds.empty());
    CHECK(res.failing_checks.empty());
}

TEST_CASE("suite results are reproducible for a fixed base seed") {
    auto a = run_suite(20, 7);
    auto b = run_suite(20, 7);
    CHECK(a.cases == b.cases);
    CHECK(a.violations == b.violations);
}
