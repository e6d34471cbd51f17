#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "svdk/quadrature.hpp"

using namespace svdk;

namespace {
constexpr double kPi = std::numbers::pi;

double integrate_1d(const AxisRule& r, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}
} // namespace

TEST_CASE("single-point rule is the midpoint rule") {
    auto r = gauss_legendre_axis(1, {0.0, kPi});
    REQUIRE(r.size() == 1);
    CHECK(r.nodes[0] == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("two-point rule on (-1,1) matches the closed-form nodes") {
    auto r = gauss_legendre_axis(2, {-1.0, 1.0});
    // Independent values: roots of P_2(x) = (3x^2-1)/2 are +-1/sqrt(3),
    // both weights 1.
    const double root = 1.0 / std::sqrt(3.0);
    CHECK(r.nodes[0] == doctest::Approx(-root).epsilon(1e-14));
    CHECK(r.nodes[1] == doctest::Approx(root).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-point rule integrates cubics exactly") {
    auto r = gauss_legendre_axis(2, {0.0, kPi});
    const double got = integrate_1d(r, [](double y) { return y * y * y; });
    const double exact = std::pow(kPi, 4) / 4.0;
    CHECK(std::abs(got - exact) <= 1e-12 * exact);
}

TEST_CASE("rule invariants: interior ascending nodes, positive weights") {
    for (int n : {1, 2, 3, 7, 20, 64}) {
        auto r = gauss_legendre_axis(n, {0.25, 2.0});
        double prev = r.interval.a;
        for (std::size_t i = 0; i < r.size(); ++i) {
            CHECK(r.nodes[i] > prev);
            CHECK(r.nodes[i] < r.interval.b);
            CHECK(r.weights[i] > 0.0);
            prev = r.nodes[i];
        }
        CHECK(std::abs(r.weight_sum() - r.interval.length()) <=
              1e-12 * r.interval.length());
    }
}

TEST_CASE("polynomial exactness up to degree 2n-1 with random coefficients") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int n : {2, 5, 11}) {
        auto r = gauss_legendre_axis(n, {-0.5, 1.5});
        std::vector<double> c(static_cast<std::size_t>(2 * n));
        for (auto& v : c) v = coeff(rng);
        const double got = integrate_1d(r, [&c](double y) {
            double acc = 0.0, mono = 1.0;
            for (double v : c) {
                acc += v * mono;
                mono *= y;
            }
            return acc;
        });
        double exact = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double kk = static_cast<double>(k) + 1.0;
            exact += c[k] * (std::pow(1.5, kk) - std::pow(-0.5, kk)) / kk;
        }
        CHECK(std::abs(got - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("rejects invalid axis-rule inputs") {
    CHECK_THROWS(gauss_legendre_axis(0, {0.0, 1.0}));
    CHECK_THROWS(gauss_legendre_axis(3, {1.0, 1.0}));
    CHECK_THROWS(gauss_legendre_axis(3, {2.0, 1.0}));
}

TEST_CASE("tensor rule sizes and total weight") {
    auto q2 = Quadrature::tensor(2, 3, {{0.0, kPi}, {0.0, kPi}});
    CHECK(q2.size() == 9);
    double tw = 0.0;
    for (std::size_t i = 0; i < q2.size(); ++i) tw += q2.weight(i);
    CHECK(std::abs(tw - kPi * kPi) <= 1e-12 * kPi * kPi);

    auto q1 = Quadrature::tensor(1, 50, {{0.0, kPi}});
    double tw1 = 0.0;
    for (std::size_t i = 0; i < q1.size(); ++i) tw1 += q1.weight(i);
    CHECK(std::abs(tw1 - kPi) <= 1e-12 * kPi);

    auto q3 = Quadrature::tensor(3, 2, {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}});
    CHECK(q3.size() == 8);
    double tw3 = 0.0;
    for (std::size_t i = 0; i < q3.size(); ++i) tw3 += q3.weight(i);
    CHECK(std::abs(tw3 - 1.0) <= 1e-12);

    CHECK_THROWS(Quadrature::tensor(0, 3, {}));
}

TEST_CASE("flat-index decoding visits the full grid consistently") {
    auto q = Quadrature::tensor(2, 4, {{0.0, 1.0}, {2.0, 3.0}});
    // Axis 0 is the slow index.
    auto p0 = q.node(0);
    auto p1 = q.node(1);
    CHECK(p0[0] == p1[0]);
    CHECK(p0[1] < p1[1]);
    auto p4 = q.node(4);
    CHECK(p4[0] > p0[0]);
    CHECK(p4[1] == p0[1]);
    // Weight of a flat index is the product of axis weights.
    const double w = q.weight(5);
    CHECK(w == doctest::Approx(q.axis(0).weights[1] * q.axis(1).weights[1]).epsilon(1e-15));
}

TEST_CASE("affine image maps nodes and scales weights") {
    auto q = Quadrature::tensor(1, 8, {{0.0, kPi}});
    SUBCASE("identity map leaves the rule unchanged") {
        const double v0[] = {0.0};
        auto img = q.affine_image(1.0, v0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            CHECK(img.node(i)[0] == q.node(i)[0]);
            CHECK(img.weight(i) == q.weight(i));
        }
    }
    SUBCASE("t=2 doubles the box and total weight") {
        const double v0[] = {0.0};
        auto img = q.affine_image(2.0, v0);
        CHECK(img.box(0).b == doctest::Approx(2 * kPi).epsilon(1e-15));
        double tw = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) tw += img.weight(i);
        CHECK(std::abs(tw - 2 * kPi) <= 1e-12 * 2 * kPi);
    }
    SUBCASE("weight scaling is t^d across dimensions") {
        auto q2 = Quadrature::tensor(2, 5, {{0.0, 1.0}, {0.0, 1.0}});
        const double v0[] = {0.3, -0.7};
        auto img = q2.affine_image(0.5, v0);
        double tw = 0.0, tw0 = 0.0;
        for (std::size_t i = 0; i < q2.size(); ++i) {
            tw += img.weight(i);
            tw0 += q2.weight(i);
        }
        CHECK(tw == doctest::Approx(0.25 * tw0).epsilon(1e-14));
    }
    SUBCASE("rejects nonpositive t") {
        const double v0[] = {0.0};
        CHECK_THROWS(q.affine_image(0.0, v0));
        CHECK_THROWS(q.affine_image(-1.0, v0));
    }
}

TEST_CASE("composite refinement keeps total weight and nests sub-boxes") {
    auto q = Quadrature::tensor(1, 4, {{0.0, kPi}});
    SUBCASE("splits=1 is the identity") {
        auto r = q.composite_refine(1);
        CHECK(r.size() == q.size());
        for (std::size_t i = 0; i < q.size(); ++i) CHECK(r.node(i)[0] == q.node(i)[0]);
    }
    SUBCASE("splits=2 doubles the node count, preserves the measure") {
        auto r = q.composite_refine(2);
        CHECK(r.size() == 8);
        double tw = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) tw += r.weight(i);
        CHECK(std::abs(tw - kPi) <= 1e-12 * kPi);
    }
    SUBCASE("nodes in (0, pi/2) are exactly the first cell's copy") {
        auto r = q.composite_refine(2);
        int inside = 0;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r.node(i)[0] < kPi / 2) ++inside;
        CHECK(inside == 4);
        // Those nodes are the parent rule shrunk into (0, pi/2).
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(r.axis(0).nodes[i] == doctest::Approx(q.axis(0).nodes[i] / 2).epsilon(1e-15));
    }
    CHECK_THROWS(q.composite_refine(0));
}
