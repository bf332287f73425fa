#include "levy_scl/estimators.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "levy_scl/errors.hpp"

namespace levy_scl {

double WeightPhi::operator()(double x) const {
    const double a = std::abs(x);
    return a <= radius ? 1.0 : std::exp(-decay * (a - radius));
}

double weight_phi_eval(const WeightPhi& w, double x) { return w(x); }

EnsembleStat ensemble_mean(std::span<const double> samples) {
    if (samples.empty()) throw ArgumentError("ensemble_mean: no samples");
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double s : samples) sum += s;
    const double mean = sum / n;
    EnsembleStat out{mean, std::numeric_limits<double>::quiet_NaN(), samples.size()};
    if (samples.size() >= 2) {
        double sq = 0.0;
        for (double s : samples) sq += (s - mean) * (s - mean);
        out.std_error = std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
    }
    return out;
}

double bv_seminorm(const Field& f) {
    const std::size_t n = f.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += std::abs(f[(i + 1) % n] - f[i]);
    return total;
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw ArgumentError("lp_norm: p must be >= 1");
    double total = 0.0;
    for (double v : f.values()) total += std::pow(std::abs(v), p);
    return std::pow(total * f.dx(), 1.0 / p);
}

double weighted_l1_distance(const Field& f, const Field& g, const std::optional<WeightPhi>& w) {
    require_same_grid(f, g, "weighted_l1_distance");
    const Grid1D& grid = f.grid();
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double phi = w ? (*w)(grid.center(i)) : 1.0;
        total += std::abs(f[i] - g[i]) * phi;
    }
    return total * grid.dx();
}

namespace {

long max_shift(double dx, double delta) {
    // Round down to the admissible set, forgiving representation error in delta/dx.
    return static_cast<long>(std::floor(delta / dx * (1.0 + 1e-12)));
}

double shifted_increment(const Field& f, long m, std::size_t i_lo, std::size_t i_hi) {
    double acc = 0.0;
    for (std::size_t i = i_lo; i < i_hi; ++i) acc += std::abs(f.wrapped(static_cast<long>(i) + m) - f[i]);
    return acc * f.dx();
}

}  // namespace

ModulusResult modulus_of_continuity(std::span<const Field> ensemble, double delta, double radius) {
    if (ensemble.empty()) throw ArgumentError("modulus_of_continuity: empty ensemble");
    const Grid1D& g = ensemble.front().grid();
    const double dx = g.dx();
    const long shifts = max_shift(dx, delta);
    if (shifts < 1) throw ContractError("modulus_of_continuity: delta is smaller than one cell");
    if (-radius - delta < g.x_min() || radius + delta > g.x_max())
        throw ContractError("modulus_of_continuity: K_{R+delta} does not fit inside the box");
    std::size_t i_lo = g.n_cells(), i_hi = 0;
    for (std::size_t i = 0; i < g.n_cells(); ++i)
        if (std::abs(g.center(i)) <= radius) {
            i_lo = std::min(i_lo, i);
            i_hi = std::max(i_hi, i + 1);
        }
    ModulusResult best;
    if (i_lo >= i_hi) return best;
    std::vector<double> samples(ensemble.size());
    for (long m = -shifts; m <= shifts; ++m) {
        if (m == 0) continue;
        for (std::size_t s = 0; s < ensemble.size(); ++s) {
            if (!(ensemble[s].grid() == g)) throw ContractError("modulus_of_continuity: ensemble grids differ");
            samples[s] = shifted_increment(ensemble[s], m, i_lo, i_hi);
        }
        const EnsembleStat stat = ensemble_mean(samples);
        if (stat.mean > best.value) best = {stat.mean, stat.std_error, m};
    }
    return best;
}

std::vector<double> mollifier_weights(double dx, double delta) {
    const long shifts = max_shift(dx, delta);
    if (shifts < 1) throw ContractError("mollified_increment: delta is smaller than one cell");
    std::vector<double> w(static_cast<std::size_t>(2 * shifts + 1));
    double mass = 0.0;
    for (long m = -shifts; m <= shifts; ++m) {
        const double s = static_cast<double>(m) * dx / delta;
        const double q = std::max(0.0, 1.0 - s * s);
        w[static_cast<std::size_t>(m + shifts)] = q * q * q;
        mass += q * q * q * dx;
    }
    for (double& v : w) v /= mass;
    return w;
}

double mollified_increment(const Field& f, double delta, std::span<const double> weight) {
    if (weight.size() != f.size()) throw ContractError("mollified_increment: weight field size mismatch");
    const double dx = f.dx();
    const auto J = mollifier_weights(dx, delta);
    const long shifts = static_cast<long>(J.size() / 2);
    double total = 0.0;
    for (long m = -shifts; m <= shifts; ++m) {
        const double jm = J[static_cast<std::size_t>(m + shifts)];
        if (jm == 0.0) continue;
        double acc = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const long li = static_cast<long>(i);
            acc += std::abs(f.wrapped(li + m) - f.wrapped(li - m)) * weight[i];
        }
        total += jm * dx * acc * dx;
    }
    return total;
}

double besov_seminorm(const Field& f, double mu, double delta_max) {
    if (!(mu > 0.0 && mu < 1.0)) throw ArgumentError("besov_seminorm: mu must lie in (0, 1)");
    const double dx = f.dx();
    if (max_shift(dx, delta_max) < 1) throw ArgumentError("besov_seminorm: delta_max is smaller than one cell");
    const std::size_t n = f.size();
    double best = 0.0;
    double inner = 0.0;  // running sup over |m| <= current shift bound
    long done = 0;
    for (long level = 1; static_cast<double>(level) * dx <= delta_max * (1.0 + 1e-12); level *= 2) {
        for (long m = done + 1; m <= level; ++m) {
            inner = std::max(inner, shifted_increment(f, m, 0, n));
            inner = std::max(inner, shifted_increment(f, -m, 0, n));
        }
        done = level;
        const double delta = static_cast<double>(level) * dx;
        best = std::max(best, std::pow(delta, -mu) * inner);
    }
    return best;
}

RateFit fit_rate(std::span<const RatePoint> points) {
    if (points.size() < 2) throw ArgumentError("fit_rate: need at least two points");
    std::set<double> distinct;
    for (const auto& p : points) {
        if (!(p.h > 0.0) || !(p.e > 0.0)) throw ArgumentError("fit_rate: h and e must be positive");
        distinct.insert(p.h);
    }
    if (distinct.size() < 2) throw ArgumentError("fit_rate: need at least two distinct h values");
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : points) {
        sx += std::log(p.h);
        sy += std::log(p.e);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(p.h) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.e) - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (const auto& p : points)
        fit.residual = std::max(fit.residual, std::abs(std::log(p.e) - (fit.slope * std::log(p.h) + fit.intercept)));
    return fit;
}

}  // namespace levy_scl
