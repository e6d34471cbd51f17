#include "svdk/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace svdk {

namespace {
constexpr double kPi = std::numbers::pi;

double unit_ball_volume(int d) {
    return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}
} // namespace

int MultiIndex::order() const {
    int s = 0;
    for (int e : entries) s += e;
    return s;
}

double MultiIndex::energy() const {
    double s = 0.0;
    for (int e : entries) s += static_cast<double>(e) * e;
    return s;
}

double cosine_factor(int m, int deriv, double s) {
    if (m == 0) return deriv == 0 ? 1.0 / std::sqrt(kPi) : 0.0;
    const double amp = std::sqrt(2.0 / kPi) * std::pow(static_cast<double>(m), deriv);
    switch (deriv % 4) {
        case 0: return amp * std::cos(m * s);
        case 1: return -amp * std::sin(m * s);
        case 2: return -amp * std::cos(m * s);
        default: return amp * std::sin(m * s);
    }
}

double eval_eigenfunction(const MultiIndex& m, std::span<const double> y) {
    double v = 1.0;
    for (std::size_t j = 0; j < m.entries.size(); ++j) v *= cosine_factor(m.entries[j], 0, y[j]);
    return v;
}

double eval_eigenfunction_deriv(const MultiIndex& m, std::span<const int> deriv,
                                std::span<const double> y) {
    double v = 1.0;
    for (std::size_t j = 0; j < m.entries.size(); ++j)
        v *= cosine_factor(m.entries[j], deriv[j], y[j]);
    return v;
}

NeumannBasisBox NeumannBasisBox::enumerate(int d, int count) {
    if (d < 1) throw std::invalid_argument("enumerate_eigenpairs: d must be >= 1");
    if (count < 1) throw std::invalid_argument("enumerate_eigenpairs: count must be >= 1");

    // Grow the energy cap until enough lattice points fit under it.
    long long cap = 16;
    std::vector<MultiIndex> modes;
    while (true) {
        modes.clear();
        const int mx = static_cast<int>(std::sqrt(static_cast<double>(cap))) + 1;
        std::vector<int> m(static_cast<std::size_t>(d), 0);
        // Odometer over {0..mx}^d.
        while (true) {
            long long e = 0;
            for (int v : m) e += static_cast<long long>(v) * v;
            if (e > 0 && e <= cap) modes.push_back(MultiIndex{m});
            int j = d - 1;
            while (j >= 0 && m[static_cast<std::size_t>(j)] == mx) m[static_cast<std::size_t>(j--)] = 0;
            if (j < 0) break;
            ++m[static_cast<std::size_t>(j)];
        }
        if (static_cast<int>(modes.size()) >= count) break;
        cap *= 2;
    }

    std::sort(modes.begin(), modes.end(), [](const MultiIndex& a, const MultiIndex& b) {
        double ea = a.energy(), eb = b.energy();
        if (ea != eb) return ea < eb;
        return a.entries < b.entries;
    });
    modes.resize(static_cast<std::size_t>(count));

    NeumannBasisBox out;
    out.dim_ = d;
    out.modes_ = std::move(modes);
    out.lambdas_.reserve(out.modes_.size());
    out.mus_.reserve(out.modes_.size());
    for (const auto& m : out.modes_) {
        const double lam = m.energy();
        out.lambdas_.push_back(lam);
        out.mus_.push_back(1.0 / lam);
    }
    return out;
}

int NeumannBasisBox::max_entry(int N) const {
    int mx = 0;
    for (int n = 1; n <= N; ++n)
        for (int e : mode(n).entries) mx = std::max(mx, e);
    return mx;
}

double NeumannBasisBox::weyl_ratio(int n) const {
    const double omega = unit_ball_volume(dim_);
    const double vol = std::pow(kPi, dim_);
    const double c = 4.0 * kPi * kPi * std::pow(omega * vol, -2.0 / dim_);
    return lambda(n) / (c * std::pow(static_cast<double>(n), 2.0 / dim_));
}

Quadrature NeumannBasisBox::default_quadrature(int N, int extra) const {
    const int n_axis = 2 * max_entry(N) + 8 + extra;
    return Quadrature::tensor(dim_, n_axis, std::vector<Interval>(static_cast<std::size_t>(dim_), Interval{0.0, kPi}));
}

Eigen::MatrixXd matrix_J(const NeumannBasisBox& basis, int N) {
    if (N < 1 || N > basis.count()) throw std::invalid_argument("matrix_J: bad truncation");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
    for (int n = 1; n <= N; ++n) J(n - 1, n - 1) = basis.mu(n);
    return J;
}

namespace {

// Values of the first N eigenfunctions (optionally with a single-axis
// derivative) on the quadrature grid: N x P.
Eigen::MatrixXd mode_values(const NeumannBasisBox& basis, int N, const Quadrature& q,
                            int deriv_axis /* 0 = none, else 1-based */) {
    const std::size_t P = q.size();
    const int d = basis.dim();
    Eigen::MatrixXd M(N, static_cast<Eigen::Index>(P));
    std::vector<double> y(static_cast<std::size_t>(d));
    std::vector<int> dv(static_cast<std::size_t>(d), 0);
    if (deriv_axis > 0) dv[static_cast<std::size_t>(deriv_axis - 1)] = 1;
    for (std::size_t p = 0; p < P; ++p) {
        q.node(p, y);
        for (int n = 1; n <= N; ++n)
            M(n - 1, static_cast<Eigen::Index>(p)) =
                eval_eigenfunction_deriv(basis.mode(n), dv, y);
    }
    return M;
}

void check_resolution(const NeumannBasisBox& basis, int N, const Quadrature& q) {
    const int floor_n = 2 * basis.max_entry(N) + 8;
    for (int j = 0; j < q.dim(); ++j)
        if (static_cast<int>(q.axis(j).size()) < floor_n)
            throw std::invalid_argument("quadrature below resolution floor n >= 2*max_order + 8");
}

} // namespace

Eigen::MatrixXd matrix_Nk(const NeumannBasisBox& basis, int k, int N, const Quadrature& q) {
    if (k < 1 || k > basis.dim()) throw std::invalid_argument("matrix_Nk: bad axis");
    if (N < 1 || N > basis.count()) throw std::invalid_argument("matrix_Nk: bad truncation");
    check_resolution(basis, N, q);

    const std::size_t P = q.size();
    Eigen::VectorXd w(static_cast<Eigen::Index>(P));
    for (std::size_t p = 0; p < P; ++p) w(static_cast<Eigen::Index>(p)) = q.weight(p);

    Eigen::MatrixXd Phi = mode_values(basis, N, q, 0);
    Eigen::MatrixXd dPhi = mode_values(basis, N, q, k);

    // <d_k f_j, f_i> and the mean-removal correction.
    Eigen::MatrixXd G = Phi * w.asDiagonal() * dPhi.transpose();
    Eigen::VectorXd ones_proj = Phi * w;              // int f_i
    Eigen::VectorXd means = (dPhi * w) / q.volume();  // mean of d_k f_j
    G.noalias() -= ones_proj * means.transpose();

    for (int j = 0; j < N; ++j) G.col(j) *= basis.mu(j + 1);
    return G;
}

double integration_by_parts_residual(const SmoothField& phi, const Eigen::VectorXd& coeffs,
                                     int p, const NeumannBasisBox& basis, const Quadrature& q) {
    const int N = static_cast<int>(coeffs.size());
    const int d = basis.dim();
    check_resolution(basis, N, q);

    const std::size_t P = q.size();
    Eigen::VectorXd w(static_cast<Eigen::Index>(P));
    for (std::size_t i = 0; i < P; ++i) w(static_cast<Eigen::Index>(i)) = q.weight(i);
    Eigen::MatrixXd Phi = mode_values(basis, N, q, 0);

    std::vector<double> y(static_cast<std::size_t>(d));
    std::vector<int> zero(static_cast<std::size_t>(d), 0);

    Eigen::VectorXd fvals = Phi.transpose() * coeffs;
    double lhs = 0.0;
    for (std::size_t i = 0; i < P; ++i) {
        q.node(i, y);
        lhs += w(static_cast<Eigen::Index>(i)) * phi(zero, y) * fvals(static_cast<Eigen::Index>(i));
    }

    std::vector<Eigen::MatrixXd> Nk;
    Nk.reserve(static_cast<std::size_t>(d));
    for (int k = 1; k <= d; ++k) Nk.push_back(matrix_Nk(basis, k, N, q));

    // Sum over all d^p derivative tuples (i_1..i_p).
    double rhs = 0.0;
    std::vector<int> tuple(static_cast<std::size_t>(p), 0);
    while (true) {
        Eigen::VectorXd c = coeffs;
        std::vector<int> dord(static_cast<std::size_t>(d), 0);
        for (int slot = 0; slot < p; ++slot) {
            const int ax = tuple[static_cast<std::size_t>(slot)];
            c = Nk[static_cast<std::size_t>(ax)] * c;
            ++dord[static_cast<std::size_t>(ax)];
        }
        Eigen::VectorXd g = Phi.transpose() * c;
        double term = 0.0;
        for (std::size_t i = 0; i < P; ++i) {
            q.node(i, y);
            term += w(static_cast<Eigen::Index>(i)) * phi(dord, y) * g(static_cast<Eigen::Index>(i));
        }
        rhs += term;

        int slot = p - 1;
        while (slot >= 0 && tuple[static_cast<std::size_t>(slot)] == d - 1)
            tuple[static_cast<std::size_t>(slot--)] = 0;
        if (slot < 0) break;
        ++tuple[static_cast<std::size_t>(slot)];
    }
    if (p == 0) rhs = lhs; // empty tuple sum degenerates to the identity
    return std::abs(lhs - rhs);
}

std::pair<double, double> hp_sum_norm_check(const Eigen::VectorXd& a, int p, int q1, int q2,
                                            const NeumannBasisBox& basis, const Quadrature& q) {
    if (q1 < 1 || q2 > basis.count() || q1 > q2)
        throw std::invalid_argument("hp_sum_norm_check: bad index range");
    if (a.size() != q2 - q1 + 1)
        throw std::invalid_argument("hp_sum_norm_check: coefficient length mismatch");
    const int d = basis.dim();
    const std::size_t P = q.size();
    std::vector<double> y(static_cast<std::size_t>(d));

    double lhs = 0.0;
    std::vector<int> tuple(static_cast<std::size_t>(p), 0);
    while (true) {
        std::vector<int> dord(static_cast<std::size_t>(d), 0);
        for (int slot = 0; slot < p; ++slot) ++dord[static_cast<std::size_t>(tuple[static_cast<std::size_t>(slot)])];
        double acc = 0.0;
        for (std::size_t i = 0; i < P; ++i) {
            q.node(i, y);
            double v = 0.0;
            for (int n = q1; n <= q2; ++n)
                v += a(n - q1) * eval_eigenfunction_deriv(basis.mode(n), dord, y);
            acc += q.weight(i) * v * v;
        }
        lhs += acc;

        if (p == 0) break;
        int slot = p - 1;
        while (slot >= 0 && tuple[static_cast<std::size_t>(slot)] == d - 1)
            tuple[static_cast<std::size_t>(slot--)] = 0;
        if (slot < 0) break;
        ++tuple[static_cast<std::size_t>(slot)];
    }

    double rhs = 0.0;
    for (int n = q1; n <= q2; ++n) rhs += a(n - q1) * a(n - q1) * std::pow(basis.mu(n), -p);
    return {lhs, rhs};
}

} // namespace svdk
