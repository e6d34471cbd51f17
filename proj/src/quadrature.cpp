#include "svdk/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svdk {

double AxisRule::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

AxisRule gauss_legendre_axis(int n, Interval interval) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_axis: n must be >= 1");
    if (!(interval.b > interval.a))
        throw std::invalid_argument("gauss_legendre_axis: degenerate interval");

    AxisRule rule;
    rule.interval = interval;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    const double half = 0.5 * (interval.b - interval.a);
    const double mid = 0.5 * (interval.a + interval.b);

    // Roots of P_n on (-1,1); symmetric, so only the lower half is iterated.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Recurrence for P_n(x) and P_n'(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // One clean-up evaluation at the converged root.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);

        std::size_t lo = static_cast<std::size_t>(i);
        std::size_t hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = mid - half * x; // x decreases with i, nodes ascend
        rule.nodes[hi] = mid + half * x;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    return rule;
}

Quadrature::Quadrature(std::vector<AxisRule> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("Quadrature: dim must be >= 1");
}

Quadrature Quadrature::tensor(int d, int n_per_axis, std::vector<Interval> box) {
    if (d < 1) throw std::invalid_argument("tensor_quadrature: d must be >= 1");
    if (box.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("tensor_quadrature: box size mismatch");
    std::vector<AxisRule> axes;
    axes.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) axes.push_back(gauss_legendre_axis(n_per_axis, box[static_cast<std::size_t>(j)]));
    return Quadrature(std::move(axes));
}

std::size_t Quadrature::size() const {
    std::size_t n = 1;
    for (const auto& ax : axes_) n *= ax.size();
    return n;
}

double Quadrature::volume() const {
    double v = 1.0;
    for (const auto& ax : axes_) v *= ax.interval.length();
    return v;
}

void Quadrature::node(std::size_t idx, std::span<double> out) const {
    for (std::size_t j = axes_.size(); j-- > 0;) {
        const auto& ax = axes_[j];
        out[j] = ax.nodes[idx % ax.size()];
        idx /= ax.size();
    }
}

std::vector<double> Quadrature::node(std::size_t idx) const {
    std::vector<double> out(axes_.size());
    node(idx, out);
    return out;
}

double Quadrature::weight(std::size_t idx) const {
    double w = 1.0;
    for (std::size_t j = axes_.size(); j-- > 0;) {
        const auto& ax = axes_[j];
        w *= ax.weights[idx % ax.size()];
        idx /= ax.size();
    }
    return w;
}

Quadrature Quadrature::affine_image(double t, std::span<const double> v0) const {
    if (!(t > 0.0)) throw std::invalid_argument("affine_image: t must be > 0");
    if (v0.size() != axes_.size())
        throw std::invalid_argument("affine_image: v0 dimension mismatch");
    std::vector<AxisRule> axes = axes_;
    for (std::size_t j = 0; j < axes.size(); ++j) {
        auto& ax = axes[j];
        ax.interval = {t * ax.interval.a + v0[j], t * ax.interval.b + v0[j]};
        for (auto& x : ax.nodes) x = t * x + v0[j];
        for (auto& w : ax.weights) w *= t;
    }
    return Quadrature(std::move(axes));
}

Quadrature Quadrature::composite_refine(int splits) const {
    if (splits < 1) throw std::invalid_argument("composite_refine: splits must be >= 1");
    if (splits == 1) return *this;
    std::vector<AxisRule> axes;
    axes.reserve(axes_.size());
    for (const auto& ax : axes_) {
        AxisRule ref;
        ref.interval = ax.interval;
        const double len = ax.interval.length() / splits;
        const double scale = 1.0 / splits;
        for (int c = 0; c < splits; ++c) {
            const double a = ax.interval.a + c * len;
            for (std::size_t i = 0; i < ax.size(); ++i) {
                // Map the parent node from its interval into cell c.
                double u = (ax.nodes[i] - ax.interval.a) * scale;
                ref.nodes.push_back(a + u);
                ref.weights.push_back(ax.weights[i] * scale);
            }
        }
        axes.push_back(std::move(ref));
    }
    return Quadrature(std::move(axes));
}

} // namespace svdk
