#include "svdk/discop.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace svdk {

DiscreteOperator assemble(const KernelFn& kernel, const Quadrature& qx, const Quadrature& qy) {
    const std::size_t nx = qx.size(), ny = qy.size();
    Eigen::MatrixXd A(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(ny));
    std::vector<double> x(static_cast<std::size_t>(qx.dim()));
    std::vector<double> y(static_cast<std::size_t>(qy.dim()));
    std::vector<double> swy(ny);
    for (std::size_t j = 0; j < ny; ++j) swy[j] = std::sqrt(qy.weight(j));
    for (std::size_t i = 0; i < nx; ++i) {
        qx.node(i, x);
        const double swx = std::sqrt(qx.weight(i));
        for (std::size_t j = 0; j < ny; ++j) {
            qy.node(j, y);
            const double v = kernel(x, y);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "assemble: non-finite kernel sample at row " << i << ", col " << j;
                throw std::runtime_error(os.str());
            }
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = swx * v * swy[j];
        }
    }
    return DiscreteOperator{std::move(A), qy, qx};
}

SingularSpectrum singular_values(const Eigen::MatrixXd& A) {
    SingularSpectrum s;
    if (A.rows() == 0 || A.cols() == 0) return s;
    Eigen::VectorXd sv;
    if (std::min(A.rows(), A.cols()) <= 64) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
        if (svd.info() != Eigen::Success)
            throw std::runtime_error("singular_values: SVD did not converge");
        sv = svd.singularValues();
    }
    s.values.assign(sv.data(), sv.data() + sv.size());
    for (auto& v : s.values)
        if (v < 0.0) v = 0.0;
    return s;
}

SingularSpectrum singular_values(const DiscreteOperator& op) { return singular_values(op.matrix); }

double hs_identity_gap(const KernelFn& kernel, const Quadrature& qx, const Quadrature& qy) {
    auto op = assemble(kernel, qx, qy);
    auto s = singular_values(op);
    double sum_sq = 0.0;
    for (auto it = s.values.rbegin(); it != s.values.rend(); ++it) sum_sq += *it * *it;
    const double hs = op.matrix.squaredNorm(); // quadrature of k^2 under the convention
    if (hs == 0.0) return std::abs(sum_sq);
    return std::abs(sum_sq - hs) / hs;
}

double dilation_check(const KernelFn& kernel, const Quadrature& qx, const Quadrature& qy,
                      double t, std::span<const double> v0) {
    if (!(t > 0.0)) throw std::invalid_argument("dilation_check: t must be > 0");
    const int d = qy.dim();
    auto base = singular_values(assemble(kernel, qx, qy));

    Quadrature qimg = qy.affine_image(t, v0);
    std::vector<double> v0c(v0.begin(), v0.end());
    KernelFn pulled = [&kernel, t, v0c](std::span<const double> x, std::span<const double> v) {
        std::vector<double> y(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) y[j] = (v[j] - v0c[j]) / t;
        return kernel(x, y);
    };
    auto img = singular_values(assemble(pulled, qx, qimg));

    const double factor = std::pow(t, 0.5 * d);
    const double floor = base.floor();
    double dev = 0.0;
    const std::size_t n = std::min(base.size(), img.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (base[i] <= floor) break;
        dev = std::max(dev, std::abs(img[i] - factor * base[i]) / base[i]);
    }
    return dev;
}

InclusionResult inclusion_check(const KernelFn& kernel, const Quadrature& qx,
                                const Quadrature& q_full, const std::vector<Interval>& sub_box) {
    const int d = q_full.dim();
    if (static_cast<int>(sub_box.size()) != d)
        throw std::invalid_argument("inclusion_check: sub_box dimension mismatch");

    // Per-axis column selection; sub-box must sit on node gaps (cell-aligned).
    std::vector<std::vector<std::size_t>> keep(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const auto& ax = q_full.axis(j);
        const Interval sub = sub_box[static_cast<std::size_t>(j)];
        const double tol = 1e-9 * ax.interval.length();
        if (sub.a < ax.interval.a - tol || sub.b > ax.interval.b + tol || sub.a >= sub.b)
            throw std::invalid_argument("inclusion_check: sub_box not inside the box");
        double kept_weight = 0.0;
        for (std::size_t i = 0; i < ax.size(); ++i) {
            if (ax.nodes[i] > sub.a && ax.nodes[i] < sub.b) {
                keep[static_cast<std::size_t>(j)].push_back(i);
                kept_weight += ax.weights[i];
            }
        }
        // Alignment check: selected weights must reproduce the sub-interval
        // length, which only happens when the cut sits on cell boundaries.
        if (std::abs(kept_weight - sub.length()) > 1e-9 * ax.interval.length())
            throw std::invalid_argument("inclusion_check: sub_box not aligned with composite cells");
    }

    auto op = assemble(kernel, qx, q_full);
    auto full = singular_values(op);

    // Flat column indices of the kept tensor nodes (bitwise-identical columns).
    std::vector<std::size_t> cols;
    std::vector<std::size_t> cursor(static_cast<std::size_t>(d), 0);
    while (true) {
        std::size_t idx = 0;
        for (int j = 0; j < d; ++j)
            idx = idx * q_full.axis(j).size() + keep[static_cast<std::size_t>(j)][cursor[static_cast<std::size_t>(j)]];
        cols.push_back(idx);
        int j = d - 1;
        while (j >= 0 && cursor[static_cast<std::size_t>(j)] + 1 == keep[static_cast<std::size_t>(j)].size())
            cursor[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        ++cursor[static_cast<std::size_t>(j)];
    }

    Eigen::MatrixXd Asub(op.matrix.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        Asub.col(static_cast<Eigen::Index>(c)) = op.matrix.col(static_cast<Eigen::Index>(cols[c]));
    auto sub = singular_values(Asub);

    InclusionResult res;
    res.ok = true;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const double margin = full[i] - sub[i];
        res.margins.push_back(margin);
        if (sub[i] > full[i] + 1e-12) res.ok = false;
    }
    return res;
}

DiscreteOperator compose(const DiscreteOperator& A, const DiscreteOperator& B) {
    if (A.matrix.cols() != B.matrix.rows())
        throw std::invalid_argument("compose: shape mismatch");
    return DiscreteOperator{A.matrix * B.matrix, B.source_quad, A.target_quad};
}

DiscreteOperator add(const DiscreteOperator& A, const DiscreteOperator& B) {
    if (A.matrix.rows() != B.matrix.rows() || A.matrix.cols() != B.matrix.cols())
        throw std::invalid_argument("add: shape mismatch");
    return DiscreteOperator{A.matrix + B.matrix, A.source_quad, A.target_quad};
}

DiscreteOperator adjoint(const DiscreteOperator& A) {
    return DiscreteOperator{A.matrix.transpose(), A.target_quad, A.source_quad};
}

} // namespace svdk
