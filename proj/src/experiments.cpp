#include "levy_scl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "levy_scl/entropy_tools.hpp"
#include "levy_scl/errors.hpp"
#include "levy_scl/format.hpp"
#include "levy_scl/parallel.hpp"
#include "levy_scl/presets.hpp"

namespace levy_scl {

bool ExperimentReport::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Arm {
    Field u0;
    FluxModel flux;
    JumpCoefficient coeff;
};

Arm make_arm(const Grid1D& grid, const Dataset& d) {
    return {make_initial_field(grid, d.initial), make_flux(complete_preset("flux", d.flux)), make_noise(d.noise)};
}

JumpPath path_for(const ExperimentConfig& cfg, const LevyMeasureSpec& measure, std::size_t m) {
    Rng rng = SeedDerivation(cfg.seed).stream(m, StreamPurpose::jump_path);
    return sample_path(measure, measure.cut, cfg.horizon, rng);
}

SolverConfig solver_config(const ExperimentConfig& cfg, double eps, std::vector<double> times) {
    SolverConfig sc;
    sc.epsilon = eps;
    sc.cfl = cfg.cfl;
    sc.scheme = cfg.scheme;
    sc.max_dt = cfg.max_dt;
    sc.snapshot_times = std::move(times);
    return sc;
}

Trajectory solve_arm(const Arm& arm, const LevyMeasureSpec& measure, const SolverConfig& sc, const JumpPath& path,
                     std::size_t m) {
    try {
        return solve(arm.u0, arm.flux, arm.coeff, measure, sc, path);
    } catch (const NumericalError& e) {
        throw NumericalError("path " + std::to_string(m) + " (eps = " + format_double(sc.epsilon) + "): " + e.what());
    }
}

std::vector<double> times_with_zero(const ExperimentConfig& cfg) {
    std::vector<double> t = cfg.snapshot_times();
    if (t.front() != 0.0) t.insert(t.begin(), 0.0);
    return t;
}

double first_eps(const ExperimentConfig& cfg) { return cfg.eps_list.empty() ? 0.0 : cfg.eps_list.front(); }

/// Column j of a per-path table.
EnsembleStat column_stat(const std::vector<std::vector<double>>& table, std::size_t j) {
    std::vector<double> col;
    col.reserve(table.size());
    for (const auto& row : table) col.push_back(row[j]);
    return ensemble_mean(col);
}

EnsembleStat exact(double v) { return {v, 0.0, 0}; }

std::string tagged(const std::string& name, const std::string& key, double value) {
    return name + "[" + key + "=" + format_double(value) + "]";
}

Verdict slope_verdict(const std::string& name, const std::vector<RatePoint>& pts, double lo, double hi,
                      ExperimentReport& report, const std::string& fit_name) {
    Verdict v{name, false, kNaN, lo, hi, ""};
    std::vector<RatePoint> usable;
    for (const auto& p : pts)
        if (p.h > 0.0 && p.e > 0.0) usable.push_back(p);
    if (usable.size() < 2 || usable.size() != pts.size()) {
        v.detail = "needs at least two points with positive values";
        return v;
    }
    const RateFit fit = fit_rate(usable);
    report.rows.push_back({"slope", fit_name, 0.0, 0.0, {fit.slope, kNaN, usable.size()}});
    report.notes.push_back(fit_name + ": slope " + format_double(fit.slope) + ", intercept " +
                           format_double(fit.intercept) + ", max log residual " + format_double(fit.residual));
    v.measured = fit.slope;
    v.passed = fit.slope >= lo && fit.slope <= hi;
    return v;
}

/// Smallest R such that [-R, R] covers the cells where u0 differs from its boundary value,
/// widened by the maximal characteristic speed times the horizon.
double default_phi_radius(const Field& u0, const FluxModel& flux, double horizon) {
    const Grid1D& g = u0.grid();
    const double ref = u0[0];
    double r = 0.0;
    for (std::size_t i = 0; i < g.n_cells(); ++i)
        if (std::abs(u0[i] - ref) > 1e-12 * (1.0 + std::abs(ref))) r = std::max(r, std::abs(g.center(i)));
    r += flux.speed_bound(u0.min(), u0.max()) * horizon;
    const double half = 0.5 * g.length();
    return std::clamp(r, g.dx(), half);
}

}  // namespace

ExperimentReport run_error_rate(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.kind = ExperimentKind::error_rate;
    const Grid1D grid = cfg.grid();
    const Arm arm = make_arm(grid, cfg.u);
    const LevyMeasureSpec measure = make_measure(cfg.measure);
    const auto& eps = cfg.eps_list;
    const std::size_t n_eps = eps.size();
    if (n_eps == 0) throw ConfigError("error_rate needs viscosity.eps_list");
    const std::vector<double> times = cfg.snapshot_times();

    struct PathResult {
        std::vector<double> errors;
        std::optional<Trajectory> sample;
    };
    auto results = parallel_map(cfg.paths, cfg.threads, [&](std::size_t m) {
        const JumpPath path = path_for(cfg, measure, m);
        PathResult r;
        r.errors.assign(n_eps, 0.0);
        const double ref_eps = cfg.self_reference ? eps.back() : 0.0;
        const Trajectory ref = solve_arm(arm, measure, solver_config(cfg, ref_eps, times), path, m);
        for (std::size_t i = 0; i < n_eps; ++i) {
            if (cfg.self_reference && i + 1 == n_eps) continue;
            const Trajectory t = solve_arm(arm, measure, solver_config(cfg, eps[i], times), path, m);
            r.errors[i] = weighted_l1_distance(t.final_field(), ref.final_field());
            if (m == 0 && i == 0) r.sample = t;
        }
        return r;
    });

    std::vector<std::vector<double>> table;
    for (auto& r : results) table.push_back(std::move(r.errors));
    report.sample = std::move(results.front().sample);

    const std::size_t n_rows = cfg.self_reference ? n_eps - 1 : n_eps;
    std::vector<RatePoint> pts;
    double worst_rel = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < n_rows; ++i) {
        const EnsembleStat s = column_stat(table, i);
        report.rows.push_back({"l1_error", "epsilon", eps[i], cfg.horizon, s});
        pts.push_back({eps[i], s.mean});
        const double rel = s.mean > 0.0 ? s.std_error / s.mean : (s.std_error > 0.0 ? kInf : 0.0);
        worst_rel = std::max(worst_rel, rel);
        if (i > 0 && !(s.mean <= pts[i - 1].e)) decreasing = false;
    }
    report.notes.push_back(cfg.self_reference ? "reference: smallest-epsilon run on the same paths"
                                              : "reference: epsilon = 0 scheme on the same paths");
    report.verdicts.push_back(slope_verdict("error_slope", pts, cfg.slope_min.value_or(0.35),
                                            cfg.slope_max.value_or(1.2), report, "l1_error_vs_epsilon"));
    report.verdicts.push_back({"relative_std_error", worst_rel < cfg.max_rel_stderr, worst_rel, 0.0,
                               cfg.max_rel_stderr, "largest std_error / mean over the epsilon list"});
    if (arm.coeff.identically_zero)
        report.verdicts.push_back({"errors_decrease_with_epsilon", decreasing, decreasing ? 1.0 : 0.0, 1.0, 1.0,
                                   "deterministic case"});
    return report;
}

ExperimentReport run_continuous_dependence(const ExperimentConfig& cfg) {
    if (!cfg.v) throw ConfigError("continuous_dependence requires a second dataset (v.* keys)");
    ExperimentReport report;
    report.kind = ExperimentKind::continuous_dependence;
    const Grid1D grid = cfg.grid();
    const LevyMeasureSpec measure = make_measure(cfg.measure);
    const Arm u = make_arm(grid, cfg.u);
    if (u.coeff.x_dependent) throw ConfigError("continuous_dependence requires x-independent noise");

    std::vector<double> cs = cfg.sweep == SweepKind::none ? std::vector<double>{0.0} : cfg.sweep_values;
    std::vector<Arm> vs;
    for (double c : cs) {
        Dataset d = *cfg.v;
        if (cfg.sweep == SweepKind::noise_factor) {
            d.noise.scale *= 1.0 + c;
            if (d.noise.lambda_star) *d.noise.lambda_star *= 1.0 + c;
        } else if (cfg.sweep == SweepKind::flux_shift) {
            d.flux = complete_preset("flux", d.flux);
            d.flux.params["shift"] += c;
        }
        vs.push_back(make_arm(grid, d));
        if (vs.back().coeff.x_dependent) throw ConfigError("continuous_dependence requires x-independent noise");
    }

    const WeightPhi phi{cfg.phi_radius.value_or(default_phi_radius(u.u0, u.flux, cfg.horizon)), cfg.phi_decay};
    report.notes.push_back("phi radius " + format_double(phi.radius) + ", decay " + format_double(phi.decay));
    const double eps = first_eps(cfg);
    const std::vector<double> times = cfg.snapshot_times();

    struct PathResult {
        std::vector<double> lhs;
        std::optional<Trajectory> sample;
    };
    auto results = parallel_map(cfg.paths, cfg.threads, [&](std::size_t m) {
        const JumpPath path = path_for(cfg, measure, m);
        const SolverConfig sc = solver_config(cfg, eps, times);
        const Trajectory tu = solve_arm(u, measure, sc, path, m);
        PathResult r;
        for (const Arm& v : vs) {
            const Trajectory tv = solve_arm(v, measure, sc, path, m);
            r.lhs.push_back(weighted_l1_distance(tu.final_field(), tv.final_field(), phi));
        }
        if (m == 0) r.sample = tu;
        return r;
    });
    std::vector<std::vector<double>> table;
    for (auto& r : results) table.push_back(std::move(r.lhs));
    report.sample = std::move(results.front().sample);

    const std::string pname = cfg.sweep == SweepKind::flux_shift ? "flux_shift"
                              : cfg.sweep == SweepKind::noise_factor ? "noise_factor"
                                                                     : "none";
    const double T = cfg.horizon;
    std::vector<RatePoint> vs_distance, vs_c;
    std::vector<double> d_over_c2;
    for (std::size_t j = 0; j < cs.size(); ++j) {
        const Arm& v = vs[j];
        const EnsembleStat lhs = column_stat(table, j);
        const double D = noise_distance(u.coeff, v.coeff, measure, cfg.u_lo, cfg.u_hi, cfg.n_u).value;
        double flux_gap = 0.0;
        for (std::size_t i = 0; i < cfg.n_u; ++i) {
            const double s = cfg.u_lo + (cfg.u_hi - cfg.u_lo) * static_cast<double>(i) /
                                            static_cast<double>(std::max<std::size_t>(cfg.n_u - 1, 1));
            flux_gap = std::max(flux_gap, std::abs(u.flux.F_prime(s) - v.flux.F_prime(s)));
        }
        const double bv_v0 = bv_seminorm(v.u0);
        const double c = cs[j];
        report.rows.push_back({"lhs", pname, c, T, lhs});
        report.rows.push_back({"noise_distance", pname, c, 0.0, exact(D)});
        report.rows.push_back({"rhs_noise", pname, c, T, exact((1.0 + bv_v0) * std::sqrt(T * D))});
        report.rows.push_back({"rhs_flux", pname, c, T, exact(bv_v0 * flux_gap * T)});
        report.rows.push_back({"rhs_initial", pname, c, 0.0, exact(weighted_l1_distance(u.u0, v.u0, phi))});
        report.rows.push_back({"rhs_noise_l1", pname, c, T, exact(std::sqrt(T * D) * phi.l1_norm())});
        vs_distance.push_back({D, lhs.mean});
        vs_c.push_back({c, lhs.mean});
        if (c != 0.0) d_over_c2.push_back(D / (c * c));
    }

    if (cfg.sweep == SweepKind::noise_factor) {
        report.verdicts.push_back(slope_verdict("lhs_vs_distance_slope", vs_distance, cfg.slope_min.value_or(0.35),
                                                cfg.slope_max.value_or(0.65), report, "lhs_vs_noise_distance"));
        double spread = kInf;
        if (!d_over_c2.empty() && d_over_c2.front() > 0.0) {
            spread = 0.0;
            for (double r : d_over_c2) spread = std::max(spread, std::abs(r / d_over_c2.front() - 1.0));
        }
        report.verdicts.push_back({"distance_quadratic_in_c", spread <= 1e-10, spread, 0.0, 1e-10,
                                   "max relative deviation of D / c^2 from its first value"});
    } else if (cfg.sweep == SweepKind::flux_shift) {
        report.verdicts.push_back(slope_verdict("lhs_vs_flux_gap_slope", vs_c, cfg.slope_min.value_or(0.8),
                                                cfg.slope_max.value_or(1.2), report, "lhs_vs_flux_shift"));
    } else {
        const double lhs = vs_c.front().e;
        report.verdicts.push_back({"lhs_finite", std::isfinite(lhs), lhs, 0.0, kInf, ""});
    }
    return report;
}

ExperimentReport run_bv_monotone(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.kind = ExperimentKind::bv_monotone;
    const Grid1D grid = cfg.grid();
    const LevyMeasureSpec measure = make_measure(cfg.measure);
    const Arm arm = make_arm(grid, cfg.u);
    if (arm.coeff.x_dependent) throw ConfigError("bv_monotone requires x-independent noise");
    const std::vector<double> eps = cfg.eps_list.empty() ? std::vector<double>{0.0} : cfg.eps_list;
    const std::vector<double> times = times_with_zero(cfg);
    const std::size_t nt = times.size();

    struct PathResult {
        std::vector<std::vector<double>> bv, mass;  // [eps][snapshot]
        std::optional<Trajectory> sample;
    };
    auto results = parallel_map(cfg.paths, cfg.threads, [&](std::size_t m) {
        const JumpPath path = path_for(cfg, measure, m);
        PathResult r;
        for (double e : eps) {
            const Trajectory t = solve_arm(arm, measure, solver_config(cfg, e, times), path, m);
            std::vector<double> bv, mass;
            for (const auto& s : t.snapshots) {
                bv.push_back(bv_seminorm(s.field));
                mass.push_back(s.field.mass());
            }
            r.bv.push_back(std::move(bv));
            r.mass.push_back(std::move(mass));
            if (m == 0 && !r.sample) r.sample = t;
        }
        return r;
    });
    report.sample = std::move(results.front().sample);

    for (std::size_t ie = 0; ie < eps.size(); ++ie) {
        std::vector<std::vector<double>> bv, mass, dmass;
        for (const auto& r : results) {
            bv.push_back(r.bv[ie]);
            mass.push_back(r.mass[ie]);
            std::vector<double> d;
            for (double v : r.mass[ie]) d.push_back(v - r.mass[ie][0]);
            dmass.push_back(std::move(d));
        }
        const EnsembleStat bv0 = column_stat(bv, 0);
        double worst_bv = -kInf, worst_mass = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            const EnsembleStat sb = column_stat(bv, j), sm = column_stat(mass, j), sd = column_stat(dmass, j);
            report.rows.push_back({"bv", "epsilon", eps[ie], times[j], sb});
            report.rows.push_back({"mass", "epsilon", eps[ie], times[j], sm});
            report.rows.push_back({"mass_change", "epsilon", eps[ie], times[j], sd});
            worst_bv = std::max(worst_bv, sb.mean - 3.0 * sb.std_error);
            worst_mass = std::max(worst_mass, std::abs(sd.mean) - 3.0 * sd.std_error);
        }
        // Allow for rounding in the summed differences; the scheme itself is TVD.
        const double bv_bound = bv0.mean * (1.0 + cfg.bv_slack) + 1e-12 * std::max(bv0.mean, 1.0);
        report.verdicts.push_back({tagged("bv_monotone", "eps", eps[ie]), worst_bv <= bv_bound, worst_bv, 0.0, bv_bound,
                                   "max over snapshots of mean BV - 3 std_error vs initial mean BV x (1 + slack)"});
        const double mass_floor = 1e-12 * (1.0 + std::abs(column_stat(mass, 0).mean));
        report.verdicts.push_back({tagged("mass_conserved", "eps", eps[ie]), worst_mass <= mass_floor, worst_mass,
                                   0.0, mass_floor, "max over snapshots of |mean mass change| - 3 std_error"});
        if (arm.coeff.identically_zero) {
            double worst_step = -kInf;
            for (const auto& path_bv : bv)
                for (std::size_t j = 1; j < nt; ++j) worst_step = std::max(worst_step, path_bv[j] - path_bv[j - 1]);
            const double allowance = 1e-12 * std::max(bv0.mean, 1.0);
            report.verdicts.push_back({tagged("bv_pathwise", "eps", eps[ie]), worst_step <= allowance, worst_step,
                                       -kInf, allowance, "largest BV increase between snapshots on any path"});
        }
    }
    return report;
}

ExperimentReport run_fractional_bv(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.kind = ExperimentKind::fractional_bv;
    const Grid1D grid = cfg.grid();
    const LevyMeasureSpec measure = make_measure(cfg.measure);
    const Arm arm = make_arm(grid, cfg.u);
    if (!arm.coeff.x_dependent) report.notes.push_back("warning: x-independent noise, this degenerates to the BV case");
    const double dx = grid.dx();
    const double d_min = cfg.delta_min.value_or(2.0 * dx);
    const double d_max = cfg.delta_max.value_or(64.0 * dx);
    if (!(d_min >= dx) || !(d_max >= d_min)) throw ConfigError("modulus: need dx <= delta_min <= delta_max");
    const double radius =
        cfg.modulus_radius.value_or(std::min(std::abs(grid.x_min()), std::abs(grid.x_max())) - d_max - 2.0 * dx);
    if (!(radius > 0.0)) throw ConfigError("modulus.radius: the box is too small for the delta ladder");

    const double eps = first_eps(cfg);
    const std::vector<double> times = cfg.snapshot_times();
    auto trajs = parallel_map(cfg.paths, cfg.threads, [&](std::size_t m) {
        return solve_arm(arm, measure, solver_config(cfg, eps, times), path_for(cfg, measure, m), m);
    });
    std::vector<Field> finals;
    for (const auto& t : trajs) finals.push_back(t.final_field());
    report.sample = trajs.front();

    std::vector<RatePoint> pts;
    double worst_drop = -kInf;
    for (double d = d_min; d <= d_max * (1.0 + 1e-12); d *= 2.0) {
        const ModulusResult w = modulus_of_continuity(finals, d, radius);
        report.rows.push_back({"modulus", "delta", d, cfg.horizon, {w.value, w.std_error, finals.size()}});
        if (!pts.empty()) worst_drop = std::max(worst_drop, pts.back().e - w.value);
        pts.push_back({d, w.value});
    }
    report.notes.push_back("modulus window |x| <= " + format_double(radius));
    const double besov = besov_seminorm(arm.u0, cfg.besov_mu, d_max);
    report.rows.push_back({"besov_seminorm", "mu", cfg.besov_mu, 0.0, exact(besov)});

    report.verdicts.push_back({"modulus_nondecreasing", !(worst_drop > 0.0), worst_drop, -kInf, 0.0,
                               "largest decrease of omega between consecutive deltas"});
    Verdict rate = slope_verdict("exponent", pts, cfg.rate_min, cfg.rate_max, report, "modulus_vs_delta");
    if (std::isfinite(rate.measured)) rate.passed = rate.measured > cfg.rate_min && rate.measured <= cfg.rate_max;
    rate.detail = "fitted r in (lower, upper]";
    report.verdicts.push_back(rate);
    report.verdicts.push_back({"besov_finite", std::isfinite(besov), besov, 0.0, kInf, "initial data"});
    return report;
}

ExperimentReport run_entropy_check(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.kind = ExperimentKind::entropy_check;
    const Grid1D grid = cfg.grid();
    const LevyMeasureSpec measure = make_measure(cfg.measure);
    const Arm arm = make_arm(grid, cfg.u);
    const double dx = grid.dx();
    const double T = cfg.horizon;

    std::vector<double> times;
    if (!cfg.snapshots.empty()) {
        times = times_with_zero(cfg);
    } else {
        const std::size_t n = std::max<std::size_t>(cfg.n_snapshots, static_cast<std::size_t>(std::ceil(T / cfg.max_dt)) + 1);
        for (std::size_t i = 0; i < n; ++i)
            times.push_back(i + 1 == n ? T : T * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    const double mid = 0.5 * (grid.x_min() + grid.x_max());
    const TestFunction psi = TestFunction::product_bump(
        cfg.psi_t_center.value_or(0.5 * T), cfg.psi_t_halfwidth.value_or(0.5 * T), cfg.psi_x_center.value_or(mid),
        cfg.psi_x_halfwidth.value_or(0.375 * grid.length()));
    const EntropyFluxPair pair{arm.flux, EntropyFamily(cfg.xi.value_or(4.0 * dx))};
    const auto& ks = cfg.k_values;

    SolverConfig sc = solver_config(cfg, first_eps(cfg), times);
    sc.record_jumps = true;
    JumpCoefficient coeff = arm.coeff;
    Field shock(grid, 0.0);
    if (cfg.inject_expansion_shock) {
        coeff = zero_coefficient();
        shock = make_initial_field(grid, {"expansion", {{"amplitude", 1.0}, {"position", cfg.psi_x_center.value_or(mid)}}});
        report.notes.push_back("injected a standing expansion shock in place of every path (noise switched off)");
    }

    struct PathResult {
        std::vector<double> residual, zero_psi;
        std::optional<Trajectory> sample;
    };
    auto results = parallel_map(cfg.paths, cfg.threads, [&](std::size_t m) {
        Trajectory traj;
        if (cfg.inject_expansion_shock) {
            for (double t : times) traj.snapshots.push_back({t, shock});
        } else {
            traj = solve_arm(arm, measure, sc, path_for(cfg, measure, m), m);
        }
        PathResult r;
        for (double k : ks) {
            r.residual.push_back(entropy_residual_path(traj, pair, psi, coeff, measure, measure.cut, k));
            r.zero_psi.push_back(entropy_residual_path(traj, pair, TestFunction::zero(), coeff, measure, measure.cut, k));
        }
        if (m == 0) r.sample = std::move(traj);
        return r;
    });
    std::vector<std::vector<double>> res, zero;
    for (auto& r : results) {
        res.push_back(std::move(r.residual));
        zero.push_back(std::move(r.zero_psi));
    }
    report.sample = std::move(results.front().sample);

    const double tol = cfg.entropy_tol_factor * (dx + 1.0 / std::sqrt(static_cast<double>(cfg.paths)));
    report.notes.push_back("xi " + format_double(pair.family.xi()) + ", tolerance " + format_double(tol));
    for (std::size_t j = 0; j < ks.size(); ++j) {
        const EnsembleStat s = column_stat(res, j);
        report.rows.push_back({"entropy_residual", "k", ks[j], T, s});
        report.rows.push_back({"entropy_residual_zero_psi", "k", ks[j], T, column_stat(zero, j)});
        report.verdicts.push_back({tagged("entropy_residual", "k", ks[j]), s.mean >= -tol, s.mean, -tol, kInf,
                                   "ensemble mean residual"});
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    const auto warnings = validate(cfg);
    ExperimentReport report;
    switch (cfg.kind) {
        case ExperimentKind::error_rate: report = run_error_rate(cfg); break;
        case ExperimentKind::continuous_dependence: report = run_continuous_dependence(cfg); break;
        case ExperimentKind::bv_monotone: report = run_bv_monotone(cfg); break;
        case ExperimentKind::fractional_bv: report = run_fractional_bv(cfg); break;
        case ExperimentKind::entropy_check: report = run_entropy_check(cfg); break;
    }
    for (const auto& w : warnings)
        if (std::find(report.notes.begin(), report.notes.end(), "warning: " + w) == report.notes.end())
            report.notes.insert(report.notes.begin(), "warning: " + w);
    return report;
}

namespace {

std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

void write_report_csv(std::ostream& os, const ExperimentReport& report) {
    os << "stat_name,param_name,param_value,time,value,std_error,n_samples\n";
    for (const auto& r : report.rows)
        os << r.stat_name << ',' << r.param_name << ',' << format_double(r.param_value) << ',' << format_double(r.time)
           << ',' << format_double(r.stat.mean) << ',' << format_double(r.stat.std_error) << ',' << r.stat.n_samples
           << '\n';
}

void write_verdicts_csv(std::ostream& os, const ExperimentReport& report) {
    os << "name,passed,measured,lower,upper,detail\n";
    for (const auto& v : report.verdicts)
        os << v.name << ',' << (v.passed ? "true" : "false") << ',' << format_double(v.measured) << ','
           << format_double(v.lower) << ',' << format_double(v.upper) << ',' << csv_safe(v.detail) << '\n';
}

void write_summary(std::ostream& os, const ExperimentReport& report) {
    os << "experiment: " << to_string(report.kind) << '\n';
    for (const auto& v : report.verdicts) {
        os << (v.passed ? "PASS " : "FAIL ") << v.name << ": measured " << format_double(v.measured) << ", bounds ["
           << format_double(v.lower) << ", " << format_double(v.upper) << "]";
        if (!v.detail.empty()) os << " (" << v.detail << ")";
        os << '\n';
    }
    for (const auto& n : report.notes) os << "note: " << n << '\n';
    os << "overall: " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto open = [&](const char* name) {
        std::ofstream f(out_dir / name);
        if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
        return f;
    };
    {
        auto f = open("report.csv");
        write_report_csv(f, report);
    }
    {
        auto f = open("verdicts.csv");
        write_verdicts_csv(f, report);
    }
    {
        auto f = open("summary.txt");
        write_summary(f, report);
    }
    if (report.sample) {
        auto f = open("snapshots.csv");
        write_snapshots_csv(f, *report.sample);
    }
}

}  // namespace levy_scl
