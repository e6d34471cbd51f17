#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "svdk/neumann.hpp"
#include "svdk/quadrature.hpp"

namespace svdk {

/// k(x,y) callable; x lives on the output box, y on the source box.
using KernelFn =
    std::function<double(std::span<const double> x, std::span<const double> y)>;

/// Cosine series with coefficient n^{-p+lam} on every |m| = n, m_j >= 1.
/// Requires lam < -d/2 so the coefficient sequence is square-summable
/// against the multiplicities.
struct CosineSobolev {
    int d = 1;
    int p = 1;
    double lam = -1.0;
    int max_order = 32;
};

/// Series over the Neumann eigenbasis with a_n = mu_n^{p/2} / n.
struct EigenSeries {
    int d = 1;
    int p = 1;
    int n_terms = 32;
};

/// Product-of-geometric-series kernel, analytic in y; singular values tau^n.
struct AnalyticProduct {
    int d = 1;
    double tau = 0.5;
    int max_order = 32;
};

/// k(x,y) = u(x) v(y).
struct Rank1 {
    std::function<double(std::span<const double>)> u;
    std::function<double(std::span<const double>)> v;
};

/// k(x,y) = exp(-|x-y|^2 / width^2); requires dim(x) == dim(y).
struct GaussianKernel {
    double width = 1.0;
};

/// Kernel known only through samples on a fixed grid pair; evaluate snaps
/// to the nearest grid node.
struct GridKernel {
    Quadrature qx;
    Quadrature qy;
    Eigen::MatrixXd values; // size(qx) x size(qy)
};

using KernelSpec =
    std::variant<CosineSobolev, EigenSeries, AnalyticProduct, Rank1, GaussianKernel, GridKernel>;

/// Closed-form nonincreasing singular value sequence, multiplicities expanded.
struct ExactSpectrum {
    std::vector<double> values;
};

/// card{ m in Z^d : m_j >= min_entry, |m| = n }. min_entry = 0 gives
/// C(n+d-1, d-1); min_entry = 1 gives C(n-1, d-1).
long long multiplicity(int d, int n, int min_entry);

double evaluate(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// Throws for Rank1 / Gaussian / Grid kernels (no closed form).
ExactSpectrum exact_spectrum(const KernelSpec& spec);

/// Termwise y-derivative along the 1-based axes in `axes` (exact per term).
/// Empty `axes` returns evaluate(spec,.,.) itself. Throws for Grid kernels.
KernelFn derivative_kernel(const KernelSpec& spec, std::vector<int> axes);

KernelFn as_callable(const KernelSpec& spec);

/// Default series truncation per dimension (keeps matrices at desk scale).
int default_max_order(int d);

/// y-side factor matrix of a series kernel: row t holds
/// coeff_t * (derivative of the t-th y-factor) * sqrt(w_j) over the grid
/// of qy. Because the x-side factors are orthonormal in L2, the singular
/// values of this matrix are those of the discretized operator.
Eigen::MatrixXd series_factor_matrix(const KernelSpec& spec, const Quadrature& qy,
                                     const std::vector<int>& deriv_axes = {});

} // namespace svdk
