#include "levy_scl/entropy_tools.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "levy_scl/errors.hpp"
#include "levy_scl/estimators.hpp"

namespace levy_scl {

EntropyFamily::EntropyFamily(double xi) : xi_(xi) {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw ArgumentError("EntropyFamily: xi must be positive");
}

double EntropyFamily::beta(double r) const {
    const double s = std::abs(r) / xi_;
    if (s >= 1.0) return std::abs(r) - M1 * xi_;
    const double s2 = s * s;
    // beta(s) = 3 s^2 / 4 - s^4 / 8
    return xi_ * (0.75 * s2 - 0.125 * s2 * s2);
}

double EntropyFamily::beta_prime(double r) const {
    const double s = r / xi_;
    if (s >= 1.0) return 1.0;
    if (s <= -1.0) return -1.0;
    return 0.5 * s * (3.0 - s * s);
}

double EntropyFamily::beta_second(double r) const {
    const double s = r / xi_;
    if (std::abs(s) >= 1.0) return 0.0;
    return 1.5 * (1.0 - s * s) / xi_;
}

namespace {

// beta(r + eta) - beta(r) - eta beta'(r) when [r, r + eta] lies in one polynomial piece
double bregman_piece(double xi, double r, double eta) {
    if (std::abs(r + 0.5 * eta) >= xi) return 0.0;
    const double s = r / xi;
    const double t = eta / xi;
    const double t2 = t * t;
    return std::max(0.0, xi * t2 * (0.75 * (1.0 - s * s) - 0.5 * s * t - 0.125 * t2));
}

} // namespace

double EntropyFamily::bregman(double r, double eta) const {
    if (eta == 0.0) return 0.0;
    const double end = r + eta;
    std::vector<double> pts{r};
    for (double edge : {-xi_, xi_})
        if ((edge - r) * (end - edge) > 0.0) pts.push_back(edge);
    pts.push_back(end);
    if (eta < 0.0) std::sort(pts.begin() + 1, pts.end() - 1, std::greater<>());
    // Telescoping over pieces: B(r, e - r) + (end - e)(beta'(e) - beta'(r)) + B(e, end - e) at each break e.
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i];
        const double b = pts[i + 1];
        total += bregman_piece(xi_, a, b - a) + (end - b) * (beta_prime(b) - beta_prime(a));
    }
    return total;
}

double kruzkov_flux(const FluxModel& flux, double a, double b) {
    if (a == b) return 0.0;
    const double sign = a > b ? 1.0 : -1.0;
    return sign * (flux.F(a) - flux.F(b));
}

double entropy_flux_beta(const EntropyFluxPair& pair, double a, double b) {
    if (pair.max_panels <= 0) throw ArgumentError("entropy_flux_beta: quadrature budget must be positive");
    if (a == b) return 0.0;
    const EntropyFamily& fam = pair.family;
    if (pair.flux.constant_speed) return *pair.flux.constant_speed * fam.beta(a - b);

    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    std::vector<double> knots{lo};
    for (double kink : {b - fam.xi(), b + fam.xi()})
        if (kink > lo && kink < hi) knots.push_back(kink);
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());

    auto integrand = [&](double s) { return fam.beta_prime(s - b) * pair.flux.F_prime(s); };
    quadrature::Options opts;
    opts.rel_tol = 1e-9;
    opts.abs_tol = 1e-15;
    opts.initial_panels = 1;
    opts.max_panels = pair.max_panels;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) total += quadrature::integrate(integrand, knots[i], knots[i + 1], opts);
    return a > b ? total : -total;
}

double ito_correction(const EntropyFamily& family, const JumpCoefficient& coeff, const LevyMeasureSpec& measure,
                      double x, double u, double k, double cut) {
    if (coeff.identically_zero) return 0.0;
    const double r = u - k;
    auto integrand = [&](double z) { return family.bregman(r, coeff(x, u, z)); };
    // For eta = A(x, u) (|z| ^ 1) the integrand bends where r + eta crosses +-xi.
    std::vector<double> kinks;
    if (coeff.separable()) {
        const double amp = coeff.amplitude(x, u);
        if (amp == 0.0) return 0.0;
        for (double edge : {-family.xi(), family.xi()}) {
            const double m = (edge - r) / amp;
            if (m > 0.0 && m < 1.0) {
                kinks.push_back(m);
                kinks.push_back(-m);
            }
        }
    }
    return integrate_measure(measure, cut, integrand, {}, kinks);
}

NoiseDistance noise_distance(const JumpCoefficient& eta, const JumpCoefficient& sigma, const LevyMeasureSpec& measure,
                             double u_lo, double u_hi, std::size_t n_u) {
    if (eta.x_dependent || sigma.x_dependent || eta.lipschitz_x != 0.0 || sigma.lipschitz_x != 0.0)
        throw ContractError("noise_distance: defined for x-independent coefficients only");
    if (n_u < 2) throw ArgumentError("noise_distance: need at least two u grid points");
    if (!(u_hi > u_lo)) throw ArgumentError("noise_distance: empty u range");
    NoiseDistance best{0.0, u_lo};
    for (std::size_t i = 0; i < n_u; ++i) {
        const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(n_u - 1);
        auto integrand = [&](double z) {
            const double d = eta(0.0, u, z) - sigma(0.0, u, z);
            return d * d;
        };
        const double value = integrate_measure(measure, 0.0, integrand) / (1.0 + u * u);
        if (value > best.value) best = {value, u};
    }
    return best;
}

// ---------------------------------------------------------------------------

TestFunction::TestFunction(std::function<double(double, double)> value, std::function<double(double, double)> d_dt,
                           std::function<double(double, double)> d_dx, double t_lo, double t_hi, double x_lo,
                           double x_hi)
    : value_(std::move(value)),
      d_dt_(std::move(d_dt)),
      d_dx_(std::move(d_dx)),
      t_lo_(t_lo),
      t_hi_(t_hi),
      x_lo_(x_lo),
      x_hi_(x_hi) {}

namespace {

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return q * q * q;
}

double bump_prime(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return -6.0 * s * q * q;
}

}  // namespace

TestFunction TestFunction::product_bump(double t_center, double t_halfwidth, double x_center, double x_halfwidth,
                                        double amplitude) {
    if (!(t_halfwidth > 0.0) || !(x_halfwidth > 0.0))
        throw ArgumentError("TestFunction::product_bump: half-widths must be positive");
    auto value = [=](double t, double x) {
        return amplitude * bump((t - t_center) / t_halfwidth) * bump((x - x_center) / x_halfwidth);
    };
    auto d_dt = [=](double t, double x) {
        return amplitude * bump_prime((t - t_center) / t_halfwidth) / t_halfwidth * bump((x - x_center) / x_halfwidth);
    };
    auto d_dx = [=](double t, double x) {
        return amplitude * bump((t - t_center) / t_halfwidth) * bump_prime((x - x_center) / x_halfwidth) / x_halfwidth;
    };
    return TestFunction(value, d_dt, d_dx, t_center - t_halfwidth, t_center + t_halfwidth, x_center - x_halfwidth,
                        x_center + x_halfwidth);
}

TestFunction TestFunction::zero() {
    auto z = [](double, double) { return 0.0; };
    TestFunction f(z, z, z, 0.0, 0.0, 0.0, 0.0);
    f.zero_ = true;
    return f;
}

namespace {

struct Knot {
    double time;
    const Field* left;
    const Field* right;
};

std::vector<Knot> build_knots(const Trajectory& traj) {
    // Left limits come from the first jump at a time, right values from the last one;
    // a snapshot taken at a jump time already holds the post-jump state.
    std::map<double, Knot> by_time;
    for (const auto& j : traj.jumps) {
        auto [it, inserted] = by_time.try_emplace(j.time, Knot{j.time, &j.before, &j.after});
        if (!inserted) it->second.right = &j.after;
    }
    for (const auto& s : traj.snapshots) by_time.try_emplace(s.time, Knot{s.time, &s.field, &s.field});
    std::vector<Knot> knots;
    knots.reserve(by_time.size());
    for (auto& [t, k] : by_time) knots.push_back(k);
    return knots;
}

void check_support(const Field& f, const TestFunction& psi, double t_last) {
    const Grid1D& g = f.grid();
    if (psi.x_lo() <= g.x_min() + g.dx() || psi.x_hi() >= g.x_max() - g.dx())
        throw ContractError("entropy_residual: test function support touches the boundary cells");
    if (psi.t_hi() > t_last * (1.0 + 1e-12))
        throw ContractError("entropy_residual: test function support extends past the last snapshot");
}

}  // namespace

double entropy_residual_path(const Trajectory& traj, const EntropyFluxPair& pair, const TestFunction& psi,
                             const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut, double k) {
    if (psi.is_zero()) return 0.0;
    if (traj.snapshots.empty() || traj.snapshots.front().time != 0.0)
        throw ContractError("entropy_residual: trajectory must start with a snapshot at t = 0");
    const Field& u0 = traj.snapshots.front().field;
    check_support(u0, psi, traj.snapshots.back().time);

    const EntropyFamily& fam = pair.family;
    const Grid1D& g = u0.grid();
    const double dx = g.dx();
    const std::size_t n = g.n_cells();

    // Cells inside the spatial support of psi.
    std::size_t i_lo = n, i_hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.center(i);
        if (x > psi.x_lo() && x < psi.x_hi()) {
            i_lo = std::min(i_lo, i);
            i_hi = std::max(i_hi, i + 1);
        }
    }
    if (i_lo >= i_hi) return 0.0;

    std::optional<double> mark_integral;
    if (coeff.separable() && !coeff.identically_zero) mark_integral = integrate_measure(measure, cut, coeff.mark_factor);
    auto drift = [&](double x, double u) {
        if (coeff.identically_zero) return 0.0;
        return mark_integral ? coeff.amplitude(x, u) * *mark_integral
                             : compensator_integral(coeff, measure, cut, x, u);
    };

    auto rate = [&](double t, const Field& u) {
        if (t <= psi.t_lo() || t >= psi.t_hi()) return 0.0;
        double acc = 0.0;
        for (std::size_t i = i_lo; i < i_hi; ++i) {
            const double x = g.center(i);
            const double r = u[i] - k;
            acc += psi.dt(t, x) * fam.beta(r) + entropy_flux_beta(pair, u[i], k) * psi.dx(t, x) -
                   fam.beta_prime(r) * drift(x, u[i]) * psi(t, x);
        }
        return acc * dx;
    };

    double total = 0.0;
    for (std::size_t i = i_lo; i < i_hi; ++i) total += psi(0.0, g.center(i)) * fam.beta(u0[i] - k) * dx;

    const auto knots = build_knots(traj);
    for (std::size_t m = 0; m + 1 < knots.size(); ++m) {
        const double ta = knots[m].time;
        const double tb = knots[m + 1].time;
        if (tb <= psi.t_lo() || ta >= psi.t_hi()) continue;
        total += 0.5 * (tb - ta) * (rate(ta, *knots[m].right) + rate(tb, *knots[m + 1].left));
    }
    for (const auto& j : traj.jumps) {
        if (j.time <= psi.t_lo() || j.time >= psi.t_hi()) continue;
        double acc = 0.0;
        for (std::size_t i = i_lo; i < i_hi; ++i)
            acc += (fam.beta(j.after[i] - k) - fam.beta(j.before[i] - k)) * psi(j.time, g.center(i));
        total += acc * dx;
    }
    return total;
}

std::vector<EntropyResidual> entropy_residual(const std::vector<Trajectory>& ensemble, const EntropyFluxPair& pair,
                                              const TestFunction& psi, const JumpCoefficient& coeff,
                                              const LevyMeasureSpec& measure, double cut,
                                              const std::vector<double>& k_values) {
    if (ensemble.empty()) throw ArgumentError("entropy_residual: empty ensemble");
    std::vector<EntropyResidual> out;
    for (double k : k_values) {
        std::vector<double> samples;
        samples.reserve(ensemble.size());
        for (const auto& traj : ensemble)
            samples.push_back(entropy_residual_path(traj, pair, psi, coeff, measure, cut, k));
        const EnsembleStat stat = ensemble_mean(samples);
        out.push_back({k, stat.mean, stat.std_error, stat.n_samples});
    }
    return out;
}

double dissipation_functional(const Trajectory& traj, const EntropyFamily& family, double epsilon) {
    auto rate = [&](const Field& u) {
        const std::size_t n = u.size();
        const double dx = u.dx();
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double grad = (u[(i + 1) % n] - u[i]) / dx;
            acc += family.beta_second(u[i]) * grad * grad;
        }
        return epsilon * acc * dx;
    };
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < traj.snapshots.size(); ++m) {
        const auto& a = traj.snapshots[m];
        const auto& b = traj.snapshots[m + 1];
        total += 0.5 * (b.time - a.time) * (rate(a.field) + rate(b.field));
    }
    return total;
}

}  // namespace levy_scl
