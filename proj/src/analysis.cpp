#include "svdk/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace svdk {

IndexRange default_fit_range(std::size_t spectrum_length) {
    const int n = static_cast<int>(spectrum_length);
    IndexRange r;
    r.lo = std::max(1, n / 10);
    r.hi = std::max(r.lo, n / 2);
    return r;
}

namespace {

// Simple linear least squares y = a*x + b; returns (a, b, rms residual).
struct LineFit {
    double a = 0.0, b = 0.0, rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    const double den = n * sxx - sx * sx;
    f.a = (n * sxy - sx * sy) / den;
    f.b = (sy - f.a * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.a * x[i] + f.b);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

} // namespace

DecayFit fit_power_decay(const SingularSpectrum& s, IndexRange range) {
    if (range.lo < 1 || range.hi > static_cast<int>(s.size()) || range.lo > range.hi)
        throw std::invalid_argument("fit_power_decay: bad range");
    std::vector<double> x, y;
    for (int n = range.lo; n <= range.hi; ++n) {
        const double v = s[static_cast<std::size_t>(n - 1)];
        if (!(v > 0.0) || v <= s.floor())
            throw std::invalid_argument("fit_power_decay: numerically zero value in range");
        x.push_back(std::log(static_cast<double>(n)));
        y.push_back(std::log(v));
    }
    const LineFit f = fit_line(x, y);
    DecayFit out;
    out.exponent = -f.a;
    out.log_constant = f.b;
    out.residual = f.rms;
    out.n_lo = range.lo;
    out.n_hi = range.hi;
    return out;
}

RatioReport thm1_ratio(const KernelSpec& spec, int p, const Quadrature& qy, IndexRange n_range) {
    const int d = qy.dim();
    auto sK = singular_values(series_factor_matrix(spec, qy));

    // All d^p derivative operators K_{i_1..i_p}.
    std::vector<SingularSpectrum> sI;
    std::vector<int> tuple(static_cast<std::size_t>(p), 1);
    while (true) {
        sI.push_back(singular_values(series_factor_matrix(spec, qy, tuple)));
        int slot = p - 1;
        while (slot >= 0 && tuple[static_cast<std::size_t>(slot)] == d)
            tuple[static_cast<std::size_t>(slot--)] = 1;
        if (slot < 0) break;
        ++tuple[static_cast<std::size_t>(slot)];
    }

    long long c3 = p + 1;
    for (int i = 0; i < p; ++i) c3 *= d;

    RatioReport rep;
    rep.inf = std::numeric_limits<double>::infinity();
    for (int n = n_range.lo; n <= n_range.hi; ++n) {
        const long long m = n / c3;
        if (m < 1) continue;
        if (n > static_cast<int>(sK.size())) break;
        const double sn = sK[static_cast<std::size_t>(n - 1)];
        if (sn <= sK.floor()) break;
        double tot = 0.0;
        for (const auto& s : sI) {
            if (m > static_cast<long long>(s.size()))
                throw std::invalid_argument("thm1_ratio: m exceeds derivative spectrum length");
            tot += s[static_cast<std::size_t>(m - 1)];
        }
        const double ratio = sn / (std::pow(static_cast<double>(n), -static_cast<double>(p) / d) * tot);
        rep.ratios.push_back(ratio);
        rep.sup = std::max(rep.sup, ratio);
        rep.inf = std::min(rep.inf, ratio);
    }
    if (rep.ratios.empty())
        throw std::invalid_argument("thm1_ratio: empty valid range (m = 0 throughout)");
    return rep;
}

std::vector<double> tail_sum_check(const SingularSpectrum& s, int p, int d) {
    std::vector<double> sums;
    sums.reserve(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        acc += std::pow(n, 2.0 * p / d) * s[i] * s[i];
        sums.push_back(acc);
    }
    return sums;
}

std::vector<double> small_o_check(const SingularSpectrum& s, int p, int d) {
    std::vector<double> scaled;
    scaled.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        scaled.push_back(std::pow(n, static_cast<double>(p) / d + 0.5) * s[i]);
    }
    return scaled;
}

bool flattens(const std::vector<double>& partial_sums) {
    if (partial_sums.size() < 20) throw std::invalid_argument("flattens: sequence too short");
    const double total = partial_sums.back();
    const std::size_t decade_start = partial_sums.size() / 10;
    const double increment = total - partial_sums[partial_sums.size() - decade_start - 1];
    return increment < 0.05 * total;
}

bool decays_over_decades(const std::vector<double>& scaled) {
    if (scaled.size() < 20) throw std::invalid_argument("decays_over_decades: sequence too short");
    const std::size_t tenth = scaled.size() / 10;
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < tenth; ++i) head = std::max(head, scaled[i]);
    for (std::size_t i = scaled.size() - tenth; i < scaled.size(); ++i) tail = std::max(tail, scaled[i]);
    return tail < head;
}

LowerBoundReport thm2_lower_check(int d, int p, double lam, int N) {
    if (!(lam < -0.5 * d)) throw std::invalid_argument("thm2_lower_check: requires lam < -d/2");
    // Spectrum with the proof's level multiplicities (indices m_j >= 0).
    std::vector<double> values;
    for (int n = 1; n <= N; ++n) {
        const double v = std::pow(static_cast<double>(n), -p + lam);
        const long long mult = multiplicity(d, n, 0);
        for (long long i = 0; i < mult; ++i) values.push_back(v);
    }
    double dfact = 1.0;
    for (int i = 2; i <= d; ++i) dfact *= i;

    LowerBoundReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m <= values.size(); ++m) {
        const double bound =
            std::pow(std::pow(static_cast<double>(m), 1.0 / d) * std::pow(dfact, 1.0 / d) + 1.0,
                     -p + lam);
        const double margin = values[m - 1] - bound;
        rep.margins.push_back(margin);
        rep.min_margin = std::min(rep.min_margin, margin);
    }
    return rep;
}

StretchedFit thm3_fit(const SingularSpectrum& s, int d, IndexRange range) {
    if (range.lo < 1 || range.hi > static_cast<int>(s.size()) || range.lo > range.hi)
        throw std::invalid_argument("thm3_fit: bad range");
    std::vector<double> x, y;
    for (int n = range.lo; n <= range.hi; ++n) {
        const double v = s[static_cast<std::size_t>(n - 1)];
        if (!(v > 0.0)) throw std::invalid_argument("thm3_fit: zero value in range");
        x.push_back(std::pow(static_cast<double>(n), 1.0 / d));
        y.push_back(std::log(v));
    }
    const LineFit f = fit_line(x, y);
    return StretchedFit{f.a, f.b, f.rms};
}

std::pair<double, double> thm3_slope_window(int d, double tau, double slack) {
    double dfact = 1.0;
    for (int i = 2; i <= d; ++i) dfact *= i;
    const double lo = std::pow(dfact, 1.0 / d) * std::log(tau) * (1.0 + slack);
    return {lo, std::log(tau)};
}

AppendixReport appendix_sequence_check(double p, double q,
                                       const std::function<double(long long)>& rule) {
    AppendixReport rep;
    double prev = std::numeric_limits<double>::infinity();
    rep.strictly_decreasing = true;
    double last_a = std::numeric_limits<double>::infinity();
    for (long long n : {100LL, 1000LL, 10000LL, 100000LL}) {
        const double a = rule(n);
        if (!(a > 0.0) || a > last_a)
            throw std::invalid_argument("appendix_sequence_check: rule must be positive nonincreasing");
        last_a = a;
        const double scaled = std::pow(static_cast<double>(n), (p + 1.0) / q) * a;
        rep.sample_n.push_back(static_cast<double>(n));
        rep.scaled_values.push_back(scaled);
        if (!(scaled < prev)) rep.strictly_decreasing = false;
        prev = scaled;
    }
    return rep;
}

long long lemma_a1_crossing(double p, const std::function<double(long long)>& b,
                            double threshold, long long horizon) {
    double sum = 0.0;
    double bk = b(1);
    for (long long k = 1; k <= horizon; ++k) {
        const double bk1 = b(k + 1);
        if (!(bk1 > bk)) throw std::invalid_argument("lemma_a1_crossing: b must be strictly increasing");
        sum += 1.0 - std::pow(bk / bk1, p);
        if (sum > threshold) return k;
        bk = bk1;
    }
    return -1;
}

} // namespace svdk
