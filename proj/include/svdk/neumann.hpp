#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "svdk/quadrature.hpp"

namespace svdk {

/// Multi-index m = (m_1,...,m_d) of a cosine eigenfunction on (0,pi)^d.
struct MultiIndex {
    std::vector<int> entries;

    int order() const;      // |m| = m_1 + ... + m_d
    double energy() const;  // lambda(m) = m_1^2 + ... + m_d^2
};

/// Per-axis factor phi_m: phi_0 = 1/sqrt(pi), phi_m(s) = sqrt(2/pi) cos(m s)
/// for m >= 1. Derivatives of any order are available in closed form.
double cosine_factor(int m, int deriv, double s);

/// Product eigenfunction f_m(y) = prod_j phi_{m_j}(y_j).
double eval_eigenfunction(const MultiIndex& m, std::span<const double> y);

/// Mixed partial derivative of f_m; `deriv[j]` is the order in axis j.
double eval_eigenfunction_deriv(const MultiIndex& m, std::span<const int> deriv,
                                std::span<const double> y);

/// Sorted nonzero Neumann eigenpairs of -Laplace on (0,pi)^d.
class NeumannBasisBox {
  public:
    static NeumannBasisBox enumerate(int d, int count);

    int dim() const { return dim_; }
    int count() const { return static_cast<int>(modes_.size()); }
    const MultiIndex& mode(int n) const { return modes_[static_cast<std::size_t>(n - 1)]; } // 1-based
    double lambda(int n) const { return lambdas_[static_cast<std::size_t>(n - 1)]; }
    double mu(int n) const { return mus_[static_cast<std::size_t>(n - 1)]; }
    const std::vector<double>& lambdas() const { return lambdas_; }
    const std::vector<double>& mus() const { return mus_; }

    /// Largest single entry among the first N modes; drives the quadrature
    /// resolution floor n_per_axis >= 2*max_entry + 8.
    int max_entry(int N) const;

    /// lambda_n / (4 pi^2 (omega_d |Omega|)^{-2/d} n^{2/d}); tends to 1.
    double weyl_ratio(int n) const;

    /// Standard box (0,pi)^d quadrature resolving the first N modes.
    Quadrature default_quadrature(int N, int extra = 0) const;

  private:
    int dim_ = 0;
    std::vector<MultiIndex> modes_;
    std::vector<double> lambdas_;
    std::vector<double> mus_;
};

/// Smooth scalar field on the box together with its classical derivatives:
/// eval(deriv_orders_per_axis, y).
using SmoothField =
    std::function<double(std::span<const int> deriv, std::span<const double> y)>;

/// Truncation of the inverse Laplacian J: diag(mu_1,...,mu_N).
Eigen::MatrixXd matrix_J(const NeumannBasisBox& basis, int N);

/// Truncation of N_k = D_k T in eigenbasis coordinates, entries
/// (N_k)_{ij} = mu_j <d_k f_j - mean(d_k f_j), f_i> by quadrature.
/// k is a 1-based axis. Throws if q is below the resolution floor.
Eigen::MatrixXd matrix_Nk(const NeumannBasisBox& basis, int k, int N, const Quadrature& q);

/// | int(phi f) - sum over (i_1..i_p) of int(d_{i_1}..d_{i_p} phi * N_{i_p}..N_{i_1} f) |
/// with f = sum_n coeffs[n-1] f_n. Decays as the truncation grows.
double integration_by_parts_residual(const SmoothField& phi, const Eigen::VectorXd& coeffs,
                                     int p, const NeumannBasisBox& basis, const Quadrature& q);

/// (lhs, rhs) with lhs = order-p Sobolev seminorm^2 of sum a_n f_n over the
/// index window [q1,q2] (sum over all d^p derivative tuples, by quadrature)
/// and rhs = sum a_n^2 mu_n^{-p}.
std::pair<double, double> hp_sum_norm_check(const Eigen::VectorXd& a, int p, int q1, int q2,
                                            const NeumannBasisBox& basis, const Quadrature& q);

} // namespace svdk
