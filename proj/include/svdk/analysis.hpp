#pragma once

#include <vector>

#include "svdk/discop.hpp"
#include "svdk/kernels.hpp"

namespace svdk {

/// Least-squares power law s_n ~ exp(log_constant) * n^{-exponent}.
struct DecayFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    double residual = 0.0; // RMS of log-residuals
    int n_lo = 0, n_hi = 0;
};

struct RatioReport {
    std::vector<double> ratios;
    double sup = 0.0;
    double inf = 0.0;
};

struct IndexRange {
    int lo = 0, hi = 0; // 1-based, inclusive
};

/// Default fit window: skip the first 10% (preasymptotic) and everything
/// past half the spectrum (truncation-contaminated).
IndexRange default_fit_range(std::size_t spectrum_length);

DecayFit fit_power_decay(const SingularSpectrum& s, IndexRange range);

/// Decay-estimate ratio s_n(K) / (n^{-p/d} sum_I s_m(K_I)),
/// m = floor(n / (d^p (p+1))), over n in range with m >= 1 and s_n above the
/// spectrum floor. Spectra come from the weighted series factor matrices on qy.
RatioReport thm1_ratio(const KernelSpec& spec, int p, const Quadrature& qy, IndexRange n_range);

/// Partial sums of n^{2p/d} s_n^2; bounded iff the squared-decay sum converges.
std::vector<double> tail_sum_check(const SingularSpectrum& s, int p, int d);

/// Scaled sequence n^{p/d + 1/2} s_n; decays iff the small-o rate holds.
std::vector<double> small_o_check(const SingularSpectrum& s, int p, int d);

/// Last-decade increment below 5% of the running total.
bool flattens(const std::vector<double>& partial_sums);

/// Max over the last decade strictly below the max over the first decade.
bool decays_over_decades(const std::vector<double>& scaled);

/// Margins s_m - (m^{1/d} (d!)^{1/d} + 1)^{-p+lam} for the rank-indexed
/// cosine-series spectrum with level multiplicities C(n+d-1, d-1).
struct LowerBoundReport {
    std::vector<double> margins;
    double min_margin = 0.0;
};
LowerBoundReport thm2_lower_check(int d, int p, double lam, int N);

/// Least squares of log s_n against n^{1/d}; slope estimates log(tau_eff).
struct StretchedFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS of log-residuals
};
StretchedFit thm3_fit(const SingularSpectrum& s, int d, IndexRange range);

/// Admissible slope window for the stretched-exponential fit of the analytic
/// product kernel: [(d!)^{1/d} log tau * (1 + slack), log tau].
std::pair<double, double> thm3_slope_window(int d, double tau, double slack = 0.02);

/// Sequence trend report: scaled sequence n^{(p+1)/q} a_n sampled at powers
/// of ten; paired with partial sums of 1 - (b_k / b_{k+1})^p below.
struct AppendixReport {
    std::vector<double> sample_n;       // 1e2 .. 1e5
    std::vector<double> scaled_values;  // n^{(p+1)/q} a_n at those n
    bool strictly_decreasing = false;
};
AppendixReport appendix_sequence_check(double p, double q,
                                       const std::function<double(long long)>& rule);

/// Steps until the partial sum of 1 - (b_k / b_{k+1})^p exceeds `threshold`,
/// or -1 if it never does within `horizon` terms. b_k must be strictly
/// increasing.
long long lemma_a1_crossing(double p, const std::function<double(long long)>& b,
                            double threshold, long long horizon);

} // namespace svdk
