#include "svdk/kernels.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace svdk {

namespace {
constexpr double kPi = std::numbers::pi;

struct Term {
    MultiIndex m;   // y-side multi-index
    double coeff;   // series coefficient
};

// Compositions of n into d parts >= 1, lexicographically ascending.
void compositions(int d, int n, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (d == 1) {
        if (n >= 1) {
            cur.push_back(n);
            out.push_back(MultiIndex{cur});
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first <= n - (d - 1); ++first) {
        cur.push_back(first);
        compositions(d - 1, n - first, cur, out);
        cur.pop_back();
    }
}

std::vector<Term> series_terms(const KernelSpec& spec) {
    std::vector<Term> terms;
    if (const auto* cs = std::get_if<CosineSobolev>(&spec)) {
        if (!(cs->lam < -0.5 * cs->d))
            throw std::invalid_argument("CosineSobolev: requires lam < -d/2");
        for (int n = cs->d; n <= cs->max_order; ++n) {
            std::vector<MultiIndex> ms;
            std::vector<int> cur;
            compositions(cs->d, n, cur, ms);
            const double c = std::pow(static_cast<double>(n), -cs->p + cs->lam);
            for (auto& m : ms) terms.push_back(Term{std::move(m), c});
        }
    } else if (const auto* es = std::get_if<EigenSeries>(&spec)) {
        auto basis = NeumannBasisBox::enumerate(es->d, es->n_terms);
        for (int n = 1; n <= es->n_terms; ++n) {
            const double a = std::pow(basis.mu(n), 0.5 * es->p) / n;
            terms.push_back(Term{basis.mode(n), a});
        }
    } else if (const auto* ap = std::get_if<AnalyticProduct>(&spec)) {
        if (!(ap->tau > 0.0 && ap->tau < 1.0))
            throw std::invalid_argument("AnalyticProduct: requires tau in (0,1)");
        for (int n = ap->d; n <= ap->max_order; ++n) {
            std::vector<MultiIndex> ms;
            std::vector<int> cur;
            compositions(ap->d, n, cur, ms);
            const double c = std::pow(ap->tau, n);
            for (auto& m : ms) terms.push_back(Term{std::move(m), c});
        }
    } else {
        throw std::invalid_argument("not a series kernel");
    }
    return terms;
}

bool is_series(const KernelSpec& spec) {
    return std::holds_alternative<CosineSobolev>(spec) ||
           std::holds_alternative<EigenSeries>(spec) ||
           std::holds_alternative<AnalyticProduct>(spec);
}

// Output-side orthonormal family on (0,pi): g_t(x) = sqrt(2/pi) cos(t x),
// t being the 1-based global term index.
double out_factor(int t, double x) {
    return std::sqrt(2.0 / kPi) * std::cos(t * x);
}

int spec_dim(const KernelSpec& spec) {
    if (const auto* cs = std::get_if<CosineSobolev>(&spec)) return cs->d;
    if (const auto* es = std::get_if<EigenSeries>(&spec)) return es->d;
    if (const auto* ap = std::get_if<AnalyticProduct>(&spec)) return ap->d;
    return 0;
}

std::size_t nearest_node(const AxisRule& ax, double v) {
    std::size_t best = 0;
    double dist = std::abs(ax.nodes[0] - v);
    for (std::size_t i = 1; i < ax.size(); ++i) {
        double d = std::abs(ax.nodes[i] - v);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

std::size_t nearest_flat(const Quadrature& q, std::span<const double> v) {
    std::size_t idx = 0;
    for (int j = 0; j < q.dim(); ++j) idx = idx * q.axis(j).size() + nearest_node(q.axis(j), v[static_cast<std::size_t>(j)]);
    return idx;
}

} // namespace

long long multiplicity(int d, int n, int min_entry) {
    if (n < 1) throw std::invalid_argument("multiplicity: n must be >= 1");
    if (min_entry != 0 && min_entry != 1)
        throw std::invalid_argument("multiplicity: min_entry must be 0 or 1");
    // C(n+d-1, d-1) for min_entry = 0, C(n-1, d-1) for min_entry = 1.
    const long long top = (min_entry == 0) ? n + d - 1 : n - 1;
    long long r = 1;
    for (long long i = 1; i <= d - 1; ++i) r = r * (top - d + 1 + i) / i;
    return r;
}

int default_max_order(int d) {
    if (d <= 1) return 32;
    if (d == 2) return 24;
    return 12;
}

double evaluate(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (const auto* r1 = std::get_if<Rank1>(&spec)) return r1->u(x) * r1->v(y);
    if (const auto* g = std::get_if<GaussianKernel>(&spec)) {
        if (x.size() != y.size())
            throw std::invalid_argument("GaussianKernel: dim(x) != dim(y)");
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
        return std::exp(-s / (g->width * g->width));
    }
    if (const auto* gr = std::get_if<GridKernel>(&spec)) {
        return gr->values(static_cast<Eigen::Index>(nearest_flat(gr->qx, x)),
                          static_cast<Eigen::Index>(nearest_flat(gr->qy, y)));
    }
    const auto terms = series_terms(spec);
    double s = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t)
        s += terms[t].coeff * eval_eigenfunction(terms[t].m, y) *
             out_factor(static_cast<int>(t) + 1, x[0]);
    return s;
}

ExactSpectrum exact_spectrum(const KernelSpec& spec) {
    ExactSpectrum out;
    if (const auto* cs = std::get_if<CosineSobolev>(&spec)) {
        if (!(cs->lam < -0.5 * cs->d))
            throw std::invalid_argument("CosineSobolev: requires lam < -d/2");
        for (int n = cs->d; n <= cs->max_order; ++n) {
            const double v = std::pow(static_cast<double>(n), -cs->p + cs->lam);
            const long long mult = multiplicity(cs->d, n, 1);
            for (long long i = 0; i < mult; ++i) out.values.push_back(v);
        }
    } else if (const auto* es = std::get_if<EigenSeries>(&spec)) {
        auto basis = NeumannBasisBox::enumerate(es->d, es->n_terms);
        for (int n = 1; n <= es->n_terms; ++n)
            out.values.push_back(std::pow(basis.mu(n), 0.5 * es->p) / n);
    } else if (const auto* ap = std::get_if<AnalyticProduct>(&spec)) {
        if (!(ap->tau > 0.0 && ap->tau < 1.0))
            throw std::invalid_argument("AnalyticProduct: requires tau in (0,1)");
        for (int n = ap->d; n <= ap->max_order; ++n) {
            const double v = std::pow(ap->tau, n);
            const long long mult = multiplicity(ap->d, n, 1);
            for (long long i = 0; i < mult; ++i) out.values.push_back(v);
        }
    } else {
        throw std::invalid_argument("exact_spectrum: no closed form for this kernel");
    }
    return out;
}

KernelFn derivative_kernel(const KernelSpec& spec, std::vector<int> axes) {
    if (axes.empty()) return as_callable(spec);
    if (std::holds_alternative<GridKernel>(spec))
        throw std::invalid_argument("derivative_kernel: grid kernels not differentiable");
    if (!is_series(spec))
        throw std::invalid_argument("derivative_kernel: requires a series kernel");
    const int d = spec_dim(spec);
    for (int a : axes)
        if (a < 1 || a > d) throw std::invalid_argument("derivative_kernel: axis out of range");
    if (const auto* cs = std::get_if<CosineSobolev>(&spec))
        if (static_cast<int>(axes.size()) > cs->p)
            throw std::invalid_argument("derivative_kernel: order exceeds kernel regularity");
    if (const auto* es = std::get_if<EigenSeries>(&spec))
        if (static_cast<int>(axes.size()) > es->p)
            throw std::invalid_argument("derivative_kernel: order exceeds kernel regularity");

    std::vector<int> dord(static_cast<std::size_t>(d), 0);
    for (int a : axes) ++dord[static_cast<std::size_t>(a - 1)];
    auto terms = std::make_shared<std::vector<Term>>(series_terms(spec));
    return [terms, dord](std::span<const double> x, std::span<const double> y) {
        double s = 0.0;
        for (std::size_t t = 0; t < terms->size(); ++t)
            s += (*terms)[t].coeff * eval_eigenfunction_deriv((*terms)[t].m, dord, y) *
                 out_factor(static_cast<int>(t) + 1, x[0]);
        return s;
    };
}

KernelFn as_callable(const KernelSpec& spec) {
    auto sp = std::make_shared<KernelSpec>(spec);
    return [sp](std::span<const double> x, std::span<const double> y) {
        return evaluate(*sp, x, y);
    };
}

Eigen::MatrixXd series_factor_matrix(const KernelSpec& spec, const Quadrature& qy,
                                     const std::vector<int>& deriv_axes) {
    const auto terms = series_terms(spec);
    const int d = spec_dim(spec);
    if (qy.dim() != d) throw std::invalid_argument("series_factor_matrix: dimension mismatch");
    std::vector<int> dord(static_cast<std::size_t>(d), 0);
    for (int a : deriv_axes) {
        if (a < 1 || a > d) throw std::invalid_argument("series_factor_matrix: axis out of range");
        ++dord[static_cast<std::size_t>(a - 1)];
    }
    const std::size_t P = qy.size();
    Eigen::MatrixXd M(static_cast<Eigen::Index>(terms.size()), static_cast<Eigen::Index>(P));
    std::vector<double> y(static_cast<std::size_t>(d));
    for (std::size_t j = 0; j < P; ++j) {
        qy.node(j, y);
        const double sw = std::sqrt(qy.weight(j));
        for (std::size_t t = 0; t < terms.size(); ++t)
            M(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) =
                terms[t].coeff * eval_eigenfunction_deriv(terms[t].m, dord, y) * sw;
    }
    return M;
}

} // namespace svdk
