#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace svdk {

struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
};

/// One-dimensional quadrature rule on an interval. Nodes are strictly
/// increasing and interior, weights strictly positive.
struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    Interval interval;

    std::size_t size() const { return nodes.size(); }
    double weight_sum() const;
};

/// Gauss-Legendre rule with n points, exact for polynomials of degree
/// <= 2n-1. Roots found by Newton iteration on the Legendre polynomial,
/// converged to 1e-15.
AxisRule gauss_legendre_axis(int n, Interval interval);

/// Tensor-product quadrature on a d-dimensional box. The full grid is
/// never materialized; consumers decode flat indices on the fly.
class Quadrature {
  public:
    Quadrature(std::vector<AxisRule> axes);

    static Quadrature tensor(int d, int n_per_axis, std::vector<Interval> box);

    int dim() const { return static_cast<int>(axes_.size()); }
    std::size_t size() const;
    const AxisRule& axis(int j) const { return axes_[static_cast<std::size_t>(j)]; }
    Interval box(int j) const { return axes_[static_cast<std::size_t>(j)].interval; }
    double volume() const;

    /// Decode flat index (axis 0 slowest) into the node coordinates.
    void node(std::size_t idx, std::span<double> out) const;
    std::vector<double> node(std::size_t idx) const;
    double weight(std::size_t idx) const;

    /// Map x -> t*x + v0 per axis; weights pick up a factor t^d in total.
    Quadrature affine_image(double t, std::span<const double> v0) const;

    /// Composite rule: each axis interval split into `splits` equal cells,
    /// each carrying a scaled copy of the original per-cell rule. Nodes on
    /// any aligned sub-box are then a subset of this rule's nodes.
    Quadrature composite_refine(int splits) const;

  private:
    std::vector<AxisRule> axes_;
};

} // namespace svdk
