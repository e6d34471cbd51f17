#pragma once

#include <Eigen/Dense>
#include <vector>

#include "svdk/kernels.hpp"
#include "svdk/quadrature.hpp"

namespace svdk {

/// Weighted-collocation matrix A_ij = sqrt(w_i^x) k(x_i, y_j) sqrt(w_j^y).
/// Its SVD is exactly the SVD of the quadrature-discretized L2 operator.
struct DiscreteOperator {
    Eigen::MatrixXd matrix;
    Quadrature source_quad; // y side (columns)
    Quadrature target_quad; // x side (rows)
};

struct SingularSpectrum {
    std::vector<double> values; // nonincreasing, nonnegative

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; } // 0-based
    /// Indices with s_n <= 1e-12 * s_1 are numerically zero.
    double floor() const { return values.empty() ? 0.0 : 1e-12 * values.front(); }
};

DiscreteOperator assemble(const KernelFn& kernel, const Quadrature& qx, const Quadrature& qy);

SingularSpectrum singular_values(const Eigen::MatrixXd& A);
SingularSpectrum singular_values(const DiscreteOperator& op);

/// |sum s_n^2 - quadrature(k^2)| / quadrature(k^2); pure rounding error by
/// the Frobenius identity. Absolute gap when the kernel vanishes.
double hs_identity_gap(const KernelFn& kernel, const Quadrature& qx, const Quadrature& qy);

/// Max relative deviation of s_n(K_tilde) from t^{d/2} s_n(K), where K_tilde
/// discretizes the kernel pre-composed with (v - v0)/t on the dilated box.
double dilation_check(const KernelFn& kernel, const Quadrature& qx, const Quadrature& qy,
                      double t, std::span<const double> v0);

struct InclusionResult {
    bool ok = false;
    std::vector<double> margins; // s_n(K) - s_n(K_2)
};

/// Verifies s_n(K_2) <= s_n(K) + 1e-12 where K_2 restricts to a sub-box
/// aligned with the composite cells of q_full (so its nodes are a column
/// subset and interlacing is exact).
InclusionResult inclusion_check(const KernelFn& kernel, const Quadrature& qx,
                                const Quadrature& q_full, const std::vector<Interval>& sub_box);

DiscreteOperator compose(const DiscreteOperator& A, const DiscreteOperator& B);
DiscreteOperator add(const DiscreteOperator& A, const DiscreteOperator& B);
DiscreteOperator adjoint(const DiscreteOperator& A);

} // namespace svdk
