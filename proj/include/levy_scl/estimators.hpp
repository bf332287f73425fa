#pragma once

#include <optional>
#include <span>
#include <vector>

#include "levy_scl/field.hpp"

namespace levy_scl {

/// phi(x) = 1 for |x| <= R, exp(-C (|x| - R)) beyond.
struct WeightPhi {
    double radius = 1.0;
    double decay = 1.0;

    double operator()(double x) const;
    /// Exact integral of phi over the real line: 2R + 2/C.
    double l1_norm() const { return 2.0 * radius + 2.0 / decay; }
};

double weight_phi_eval(const WeightPhi& w, double x);

struct EnsembleStat {
    double mean = 0.0;
    /// sample standard deviation / sqrt(n); NaN when n == 1.
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Sums in index order so the result does not depend on how samples were produced.
EnsembleStat ensemble_mean(std::span<const double> samples);

/// sum_i |u_{i+1} - u_i| with periodic wrap.
double bv_seminorm(const Field& f);

/// (sum_i |u_i|^p dx)^{1/p}
double lp_norm(const Field& f, double p);

/// sum_i |f_i - g_i| phi(x_i) dx (phi == 1 without a weight).
double weighted_l1_distance(const Field& f, const Field& g, const std::optional<WeightPhi>& w = std::nullopt);

struct ModulusResult {
    double value = 0.0;
    double std_error = 0.0;
    /// Shift, in cells, attaining the supremum.
    long shift = 0;
};

/// sup over shifts |m dx| <= delta of the ensemble mean of sum_{|x_i|<=R} |u_{i+m} - u_i| dx.
/// Requires delta >= dx and [-R - delta, R + delta] inside the box.
ModulusResult modulus_of_continuity(std::span<const Field> ensemble, double delta, double radius);

/// The C^2 bump J(s) = (1 - s^2)^3 on |s| < 1 sampled at z_m = m dx, |m| <= delta/dx,
/// scaled to unit discrete mass sum_m J_m dx = 1. Index 0 is m = -delta/dx.
std::vector<double> mollifier_weights(double dx, double delta);

/// sum_m J_delta(z_m) dx sum_i |h(x_i + z_m) - h(x_i - z_m)| w_i dx
double mollified_increment(const Field& f, double delta, std::span<const double> weight);

/// sup over the dyadic ladder delta = dx 2^j <= delta_max of
/// delta^{-mu} sup_{|m dx| <= delta} sum_i |h_{i+m} - h_i| dx.
double besov_seminorm(const Field& f, double mu, double delta_max);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// max |log e - (slope log h + intercept)|
    double residual = 0.0;
};

struct RatePoint {
    double h = 0.0;
    double e = 0.0;
};

/// Least squares line through (log h, log e).
RateFit fit_rate(std::span<const RatePoint> points);

}  // namespace levy_scl
