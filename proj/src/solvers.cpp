#include "levy_scl/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "levy_scl/errors.hpp"
#include "levy_scl/format.hpp"

namespace levy_scl {

double FluxModel::speed_bound(double lo, double hi) const {
    if (lo > hi) std::swap(lo, hi);
    if (constant_speed) return std::abs(*constant_speed);
    if (convex) return std::max(std::abs(F_prime(lo)), std::abs(F_prime(hi)));
    double s = 0.0;
    constexpr int kSamples = 128;
    for (int k = 0; k <= kSamples; ++k) s = std::max(s, std::abs(F_prime(lo + (hi - lo) * k / kSamples)));
    return s;
}

FluxModel zero_flux() {
    FluxModel f;
    f.name = "zero";
    f.F = [](double) { return 0.0; };
    f.F_prime = [](double) { return 0.0; };
    f.second_bound = 0.0;
    f.constant_speed = 0.0;
    return f;
}

FluxModel linear_flux(double speed) {
    FluxModel f;
    f.name = "linear";
    f.F = [speed](double u) { return speed * u; };
    f.F_prime = [speed](double) { return speed; };
    f.second_bound = 0.0;
    f.constant_speed = speed;
    return f;
}

FluxModel burgers_flux(double shift) {
    FluxModel f;
    f.name = "burgers";
    f.F = [shift](double u) { return 0.5 * u * u + shift * u; };
    f.F_prime = [shift](double u) { return u + shift; };
    f.second_bound = 1.0;
    f.sonic_point = -shift;
    return f;
}

void validate_flux(const FluxModel& flux, double lo, double hi) {
    constexpr int kSamples = 64;
    for (int k = 0; k <= kSamples; ++k) {
        const double u = lo + (hi - lo) * k / kSamples;
        const double h = 1e-5 * std::max(1.0, std::abs(u));
        const double fd = (flux.F(u + h) - flux.F(u - h)) / (2.0 * h);
        const double exact = flux.F_prime(u);
        if (std::abs(fd - exact) > 1e-6 * std::max(1.0, std::abs(exact))) {
            std::ostringstream msg;
            msg << "flux " << flux.name << ": F_prime disagrees with finite differences of F at u=" << u;
            throw ValidationError(msg.str());
        }
        if (flux.second_bound) {
            const double h2 = 1e-3 * std::max(1.0, std::abs(u));
            const double second = (flux.F_prime(u + h2) - flux.F_prime(u - h2)) / (2.0 * h2);
            if (std::abs(second) > *flux.second_bound * (1.0 + 1e-6) + 1e-9) {
                std::ostringstream msg;
                msg << "flux " << flux.name << ": declared |F''| bound " << *flux.second_bound
                    << " is exceeded at u=" << u;
                throw ValidationError(msg.str());
            }
        }
    }
}

std::string to_string(NumericalFlux scheme) {
    switch (scheme) {
        case NumericalFlux::engquist_osher: return "engquist_osher";
        case NumericalFlux::godunov: return "godunov";
        case NumericalFlux::lax_friedrichs: return "lax_friedrichs";
    }
    return "unknown";
}

NumericalFlux numerical_flux_from_string(const std::string& name) {
    if (name == "engquist_osher") return NumericalFlux::engquist_osher;
    if (name == "godunov") return NumericalFlux::godunov;
    if (name == "lax_friedrichs") return NumericalFlux::lax_friedrichs;
    throw ConfigError("unknown numerical flux '" + name + "'");
}

double numerical_flux(const FluxModel& flux, NumericalFlux scheme, double a, double b) {
    switch (scheme) {
        case NumericalFlux::godunov: {
            if (!flux.convex) throw ConfigError("godunov flux requires a convex flux function");
            if (a <= b) {
                if (flux.sonic_point && *flux.sonic_point >= a && *flux.sonic_point <= b)
                    return flux.F(*flux.sonic_point);
                return std::min(flux.F(a), flux.F(b));
            }
            return std::max(flux.F(a), flux.F(b));
        }
        case NumericalFlux::engquist_osher: {
            if (!flux.convex) throw ConfigError("engquist_osher flux requires a convex flux function");
            if (flux.sonic_point) {
                const double s = *flux.sonic_point;
                return flux.F(std::max(a, s)) + flux.F(std::min(b, s)) - flux.F(s);
            }
            // Convex without a minimizer: F is monotone.
            return flux.F_prime(0.5 * (a + b)) >= 0.0 ? flux.F(a) : flux.F(b);
        }
        case NumericalFlux::lax_friedrichs: {
            const double alpha = flux.speed_bound(std::min(a, b), std::max(a, b));
            return 0.5 * (flux.F(a) + flux.F(b)) - 0.5 * alpha * (b - a);
        }
    }
    return 0.0;
}

void validate(const SolverConfig& cfg) {
    if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon)) throw ConfigError("solver: epsilon must be >= 0");
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("solver: cfl must lie in (0, 1]");
    if (!(cfg.max_dt > 0.0)) throw ConfigError("solver: max_dt must be positive");
    if (cfg.snapshot_times.empty()) throw ConfigError("solver: at least one snapshot time is required");
    double prev = -1.0;
    for (double t : cfg.snapshot_times) {
        if (!(t >= 0.0) || !(t > prev)) throw ConfigError("solver: snapshot times must be increasing and >= 0");
        prev = t;
    }
}

double cfl_time_step(const Field& f, const FluxModel& flux, double cfl) {
    const double speed = flux.speed_bound(f.min(), f.max());
    if (speed <= 0.0) return std::numeric_limits<double>::infinity();
    return cfl * f.dx() / speed;
}

Field hyperbolic_step(const Field& f, const FluxModel& flux, NumericalFlux scheme, double dt) {
    const double speed = flux.speed_bound(f.min(), f.max());
    const double dx = f.dx();
    if (speed * dt > dx * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "CFL violated: dt=" << dt << " exceeds dx/sup|F'| = " << dx / speed;
        throw ConfigError(msg.str());
    }
    const std::size_t n = f.size();
    std::vector<double> H(n);  // H[i] = flux at interface i+1/2
    for (std::size_t i = 0; i < n; ++i) H[i] = numerical_flux(flux, scheme, f[i], f[(i + 1) % n]);
    Field out = f;
    const double ratio = dt / dx;
    for (std::size_t i = 0; i < n; ++i) out[i] = f[i] - ratio * (H[i] - H[(i + n - 1) % n]);
    return out;
}

namespace {

// Thomas algorithm; sub/diag/super constant, in place on rhs.
void solve_tridiagonal(std::vector<double>& diag, double off, std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> c(n, 0.0);
    double denom = diag[0];
    if (denom == 0.0) throw NumericalError("diffusion_step: singular tridiagonal system");
    c[0] = off / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - off * c[i - 1];
        if (denom == 0.0) throw NumericalError("diffusion_step: singular tridiagonal system");
        c[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace

Field diffusion_step(const Field& f, double epsilon, double dt) {
    if (!(epsilon >= 0.0)) throw ArgumentError("diffusion_step: epsilon must be >= 0");
    if (epsilon == 0.0 || dt == 0.0) return f;
    const std::size_t n = f.size();
    const double r = epsilon * dt / (f.dx() * f.dx());
    Field out = f;
    if (n == 1) return out;
    if (n == 2) {
        // L = (2/dx^2) [[-1, 1], [1, -1]]
        const double m = f[0] + f[1];
        const double d = (f[0] - f[1]) / (1.0 + 4.0 * r);
        out[0] = 0.5 * (m + d);
        out[1] = 0.5 * (m - d);
        return out;
    }
    // Cyclic system: diag 1+2r, off-diagonals and corners -r. Sherman-Morrison.
    const double b = 1.0 + 2.0 * r;
    const double off = -r;
    const double gamma = -b;
    std::vector<double> diag(n, b);
    diag[0] = b - gamma;
    diag[n - 1] = b - off * off / gamma;

    std::vector<double> x(f.values().begin(), f.values().end());
    std::vector<double> diag_copy = diag;
    solve_tridiagonal(diag, off, x);

    std::vector<double> z(n, 0.0);
    z[0] = gamma;
    z[n - 1] = off;
    solve_tridiagonal(diag_copy, off, z);

    const double fact = (x[0] + off * x[n - 1] / gamma) / (1.0 + z[0] + off * z[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
    return out;
}

Field jump_update(const Field& f, const JumpCoefficient& coeff, double mark) {
    Field out = f;
    if (coeff.identically_zero) return out;
    const Grid1D& g = f.grid();
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] + coeff(g.center(i), f[i], mark);
    return out;
}

namespace {

class Compensator {
public:
    Compensator(const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut)
        : coeff_(coeff), measure_(measure), cut_(cut), separable_(coeff.separable()) {
        if (separable_) mark_integral_ = integrate_measure(measure_, cut_, coeff_.mark_factor);
    }

    void apply(Field& f, double dt) const {
        if (coeff_.identically_zero) return;
        const Grid1D& g = f.grid();
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double x = g.center(i);
            const double drift = separable_ ? coeff_.amplitude(x, f[i]) * mark_integral_
                                                : compensator_integral(coeff_, measure_, cut_, x, f[i]);
            f[i] -= dt * drift;
        }
    }

private:
    const JumpCoefficient& coeff_;
    const LevyMeasureSpec& measure_;
    double cut_;
    bool separable_;
    double mark_integral_ = 0.0;
};

void check_finite(const Field& f, double t) {
    const std::size_t bad = f.first_non_finite();
    if (bad != f.size()) {
        std::ostringstream msg;
        msg << "solver blow-up: non-finite value at t=" << t << " in cell " << bad << " (x=" << f.grid().center(bad)
            << ")";
        throw NumericalError(msg.str());
    }
}

}  // namespace

Field compensator_update(const Field& f, const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut,
                         double dt) {
    Field out = f;
    Compensator(coeff, measure, cut).apply(out, dt);
    return out;
}

Trajectory solve(const Field& u0, const FluxModel& flux, const JumpCoefficient& coeff,
                 const LevyMeasureSpec& measure, const SolverConfig& cfg, const JumpPath& path) {
    validate(cfg);
    const double t_end = cfg.snapshot_times.back();
    if (path.horizon() < t_end * (1.0 - 1e-14))
        throw ConfigError("solve: jump path horizon is shorter than the last snapshot time");

    const Compensator compensator(coeff, measure, path.cut());
    const auto& events = coeff.identically_zero ? std::vector<JumpEvent>{} : path.events();

    Trajectory traj;
    traj.snapshots.reserve(cfg.snapshot_times.size());
    Field u = u0;
    check_finite(u, 0.0);
    double t = 0.0;
    std::size_t next_snap = 0;
    std::size_t next_event = 0;
    if (cfg.snapshot_times[0] == 0.0) {
        traj.snapshots.push_back({0.0, u});
        ++next_snap;
    }

    while (next_snap < cfg.snapshot_times.size()) {
        double stop = cfg.snapshot_times[next_snap];
        bool stop_is_event = false;
        if (next_event < events.size() && events[next_event].time <= stop) {
            stop = events[next_event].time;
            stop_is_event = true;
        }
        const double dt_cfl = cfl_time_step(u, flux, cfg.cfl);
        double dt = std::min({dt_cfl, cfg.max_dt, stop - t});
        bool reached = dt >= stop - t;
        if (reached) dt = stop - t;

        if (dt > 0.0) {
            u = hyperbolic_step(u, flux, cfg.scheme, dt);
            if (cfg.epsilon > 0.0) u = diffusion_step(u, cfg.epsilon, dt);
            compensator.apply(u, dt);
        }
        t = reached ? stop : t + dt;
        check_finite(u, t);

        if (!reached) continue;
        if (stop_is_event) {
            while (next_event < events.size() && events[next_event].time == t) {
                const double mark = events[next_event].mark;
                Field after = jump_update(u, coeff, mark);
                check_finite(after, t);
                if (cfg.record_jumps) traj.jumps.push_back({t, mark, u, after});
                u = std::move(after);
                ++next_event;
            }
        }
        while (next_snap < cfg.snapshot_times.size() && cfg.snapshot_times[next_snap] == t) {
            traj.snapshots.push_back({t, u});
            ++next_snap;
        }
    }
    return traj;
}

Field heat_kernel_solution(const Field& u0, double epsilon, double t) {
    if (!(t > 0.0)) throw ArgumentError("heat_kernel_solution: t must be positive");
    if (!(epsilon > 0.0)) throw ArgumentError("heat_kernel_solution: epsilon must be positive");
    const Grid1D& g = u0.grid();
    const std::size_t n = g.n_cells();
    const double dx = g.dx();
    const double L = g.length();
    const double s = std::sqrt(4.0 * epsilon * t);
    const long images = static_cast<long>(std::ceil(12.0 * s / L)) + 1;

    // weight[k]: mass of the wrapped kernel centred at a cell centre that falls into the
    // cell k positions to the left.
    std::vector<double> weight(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double w = 0.0;
        for (long m = -images; m <= images; ++m) {
            const double d = static_cast<double>(k) * dx + static_cast<double>(m) * L;
            w += 0.5 * (std::erf((d + 0.5 * dx) / s) - std::erf((d - 0.5 * dx) / s));
        }
        weight[k] = w;
    }
    Field out(g);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += u0[j] * weight[(i + n - j) % n];
        out[i] = acc;
    }
    return out;
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
    if (traj.snapshots.empty()) return;
    const std::size_t n = traj.snapshots.front().field.size();
    os << "time,n_cells,x_min,x_max";
    for (std::size_t i = 0; i < n; ++i) os << ",u_" << i;
    os << '\n';
    for (const auto& snap : traj.snapshots) {
        const Grid1D& g = snap.field.grid();
        os << format_double(snap.time) << ',' << g.n_cells() << ',' << format_double(g.x_min()) << ','
           << format_double(g.x_max());
        for (double v : snap.field.values()) os << ',' << format_double(v);
        os << '\n';
    }
}

}  // namespace levy_scl
