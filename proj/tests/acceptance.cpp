// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "levy_scl/entropy_tools.hpp"
#include "levy_scl/estimators.hpp"
#include "levy_scl/experiments.hpp"
#include "levy_scl/levy_noise.hpp"
#include "levy_scl/solvers.hpp"

using namespace levy_scl;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "!") + what;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::filesystem::path kConfigs = LEVY_SCL_CONFIG_DIR;

ExperimentReport run_config(const std::string& name) { return run_experiment(parse_config(kConfigs / name)); }

std::vector<const ReportRow*> rows_named(const ExperimentReport& r, const std::string& stat) {
    std::vector<const ReportRow*> out;
    for (const auto& row : r.rows)
        if (row.stat_name == stat) out.push_back(&row);
    return out;
}

double slope_row(const ExperimentReport& r, const std::string& fit) {
    for (const auto& row : r.rows)
        if (row.stat_name == "slope" && row.param_name == fit) return row.stat.mean;
    return std::numeric_limits<double>::quiet_NaN();
}

const Verdict* verdict_named(const ExperimentReport& r, const std::string& name) {
    for (const auto& v : r.verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

JumpPath no_jumps(double T) { return JumpPath(T, 1.0, {}); }

// Cell averages of the exact Gaussian heat solution: variance s^2 + 2 eps t.
Field gaussian_cell_averages(const Grid1D& g, double s, double var) {
    Field f(g);
    const double amp = s * std::sqrt(std::numbers::pi / 2.0) / g.dx();
    const double scale = std::sqrt(2.0 * var);
    for (std::size_t i = 0; i < g.n_cells(); ++i) {
        const double a = g.center(i) - 0.5 * g.dx();
        const double b = a + g.dx();
        f[i] = amp * (std::erf(b / scale) - std::erf(a / scale));
    }
    return f;
}

Outcome ac1_heat_kernel() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D g(-8.0, 8.0, 400);
    const double s = 0.5, eps = 0.05, t = 0.5;
    const Field u0 = gaussian_cell_averages(g, s, s * s);
    SolverConfig c;
    c.epsilon = eps;
    c.snapshot_times = {t};
    c.max_dt = 1e-3;
    const auto traj = solve(u0, zero_flux(), zero_coefficient(), make_atomic({{1.0, 2.0}}, 1.0), c, no_jumps(t));
    const double err_exact = weighted_l1_distance(traj.final_field(), gaussian_cell_averages(g, s, s * s + 2 * eps * t));
    const double err_conv = weighted_l1_distance(traj.final_field(), heat_kernel_solution(u0, eps, t));
    const double elapsed = seconds_since(t0);
    o.require(err_exact <= 1e-3, "L1 vs closed form " + fmt(err_exact) + " <= 1e-3");
    o.require(err_conv <= 1e-3, "L1 vs kernel convolution " + fmt(err_conv) + " <= 1e-3");
    o.require(elapsed < 5.0, "runtime " + fmt(elapsed) + "s < 5s");
    return o;
}

// Periodic Riemann data on [-2, 2]: the shock at 0 moves at speed 1/2 and the jump
// at the wrap opens a rarefaction fan (x + 2) / t.
Outcome ac2_burgers_shock() {
    Outcome o;
    const Grid1D g(-2.0, 2.0, 400);
    const double t = 1.0, dx = g.dx();
    const Field u0 = Field::sample(g, [](double x) { return x < 0 ? 1.0 : 0.0; });
    SolverConfig c;
    c.scheme = NumericalFlux::godunov;
    c.snapshot_times = {t};
    const auto traj = solve(u0, burgers_flux(), zero_coefficient(), make_atomic({{1.0, 2.0}}, 1.0), c, no_jumps(t));
    const Field& u = traj.final_field();

    const double x_shock = 0.5 * t;
    auto antiderivative = [&](double x) {
        const double head = -2.0 + t;
        if (x <= head) return (x + 2.0) * (x + 2.0) / (2.0 * t);
        if (x <= x_shock) return t / 2.0 + (x - head);
        return t / 2.0 + (x_shock - head);
    };
    Field exact(g);
    for (std::size_t i = 0; i < g.n_cells(); ++i) {
        const double a = g.center(i) - 0.5 * dx;
        exact[i] = (antiderivative(a + dx) - antiderivative(a)) / dx;
    }
    // Position from mass right of -0.5, where u is 1 up to the shock and 0 after.
    double m = 0.0;
    for (std::size_t i = 0; i < g.n_cells(); ++i)
        if (g.center(i) > -0.5) m += u[i] * dx;
    const double pos = m - 0.5;
    const double err = weighted_l1_distance(u, exact);
    o.require(std::abs(pos - x_shock) <= 2 * dx, "shock at " + fmt(pos) + ", |x - t/2| <= 2dx");
    o.require(err <= 5 * dx, "L1 " + fmt(err) + " <= 5dx = " + fmt(5 * dx));
    return o;
}

Outcome ac3_viscosity_rate() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_config("error_rate.cfg");
    const double slope = slope_row(r, "l1_error_vs_epsilon");
    o.require(slope >= 0.35 && slope <= 1.2, "slope " + fmt(slope) + " in [0.35, 1.2]");
    double worst = 0.0;
    const auto errs = rows_named(r, "l1_error");
    for (const auto* row : errs) worst = std::max(worst, row->stat.std_error / row->stat.mean);
    o.require(errs.size() == 4 && worst < 0.2, "max std_error/mean " + fmt(worst) + " < 0.2");
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 600.0, "runtime " + fmt(elapsed) + "s");
    return o;
}

Outcome ac4_bv_monotone() {
    Outcome o;
    const auto r = run_config("bv_monotone.cfg");
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t n_eps = 0;
    for (const auto* first : rows_named(r, "bv")) {
        if (first->time != 0.0) continue;
        ++n_eps;
        for (const auto* row : rows_named(r, "bv"))
            if (row->param_value == first->param_value)
                worst = std::max(worst, row->stat.mean / first->stat.mean);
    }
    o.require(n_eps > 0 && worst <= 1.05, "max E[BV(t)]/E[BV(0)] " + fmt(worst) + " <= 1.05 over " +
                                              std::to_string(n_eps) + " viscosities");

    // Deterministic sub-case, pathwise with slack 0 (rounding of a sum of 512 terms aside).
    const auto cfg = parse_config(kConfigs / "bv_deterministic.cfg");
    SolverConfig c;
    c.snapshot_times = cfg.snapshot_times();
    c.max_dt = cfg.max_dt;
    c.cfl = cfg.cfl;
    c.scheme = cfg.scheme;
    const Field u0 = make_initial_field(cfg.grid(), cfg.u.initial);
    const auto traj = solve(u0, make_flux(cfg.u.flux), zero_coefficient(), make_atomic({{1.0, 2.0}}, 1.0), c,
                            no_jumps(cfg.horizon));
    const double bv0 = bv_seminorm(u0);
    double prev = bv0, worst_step = -std::numeric_limits<double>::infinity();
    for (const auto& s : traj.snapshots) {
        const double bv = bv_seminorm(s.field);
        worst_step = std::max(worst_step, bv - prev);
        prev = bv;
    }
    o.require(worst_step <= 1e-12 * bv0, "deterministic max BV increase " + fmt(worst_step));
    const auto det = run_experiment(cfg);
    o.require(det.passed(), "deterministic config verdicts");
    return o;
}

Outcome ac5_noise_dependence() {
    Outcome o;
    const auto r = run_config("continuous_dependence_noise.cfg");
    const double slope = slope_row(r, "lhs_vs_noise_distance");
    o.require(std::abs(slope - 0.5) <= 0.15, "slope " + fmt(slope) + " in 0.5 +- 0.15");
    // Atomic {(1, 2)}, eta = 0.2 u, sigma_c = (1 + c) eta, u on [-8, 8]: D = 2 (0.2 c)^2 64 / 65.
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto* row : rows_named(r, "noise_distance")) {
        const double c = row->param_value;
        const double exact = 2.0 * (0.2 * c) * (0.2 * c) * 64.0 / 65.0;
        worst = std::max(worst, std::abs(row->stat.mean - exact) / exact);
        ++n;
    }
    o.require(n == 4 && worst <= 1e-10, "D vs closed form rel " + fmt(worst) + " <= 1e-10");
    return o;
}

Outcome ac6_flux_dependence() {
    Outcome o;
    const auto r = run_config("continuous_dependence_flux.cfg");
    const double slope = slope_row(r, "lhs_vs_flux_shift");
    o.require(std::abs(slope - 1.0) <= 0.2, "slope " + fmt(slope) + " in 1 +- 0.2");
    return o;
}

Outcome ac7_beta_invariants() {
    Outcome o;
    bool sandwich = true, support = true;
    double max_second_gap = 0.0;
    for (double xi : {1e-2, 1e-1, 1.0}) {
        const EntropyFamily fam(xi);
        double max_second = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double r = xi * (-10.0 + 20.0 * i / 1000.0);
            const double b = fam.beta(r);
            sandwich = sandwich && std::abs(r) - 0.375 * xi <= b && b <= std::abs(r);
            if (std::abs(r) > xi) support = support && fam.beta_second(r) == 0.0;
            max_second = std::max(max_second, fam.beta_second(r));
        }
        max_second_gap = std::max(max_second_gap, std::abs(max_second - 1.5 / xi) * xi);
    }
    o.require(sandwich, "sandwich |r| - 3xi/8 <= beta <= |r|");
    o.require(support, "beta'' = 0 beyond xi");
    o.require(max_second_gap <= 1e-12, "max beta'' vs 3/(2xi) rel " + fmt(max_second_gap));
    return o;
}

Outcome ac8_ito_correction() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-3.0, 3.0), X(-2.0, 2.0), XI(0.01, 2.0);
    const std::vector<JumpCoefficient> coeffs{zero_coefficient(), linear_coefficient(0.2), linear_coefficient(1.0),
                                              bump_coefficient(0.2, 0.0, 1.0, 10.0)};
    const std::vector<LevyMeasureSpec> measures{make_atomic({{1.0, 2.0}}, 1.0),
                                                make_atomic({{-0.3, 5.0}, {2.0, 0.5}}, 0.1),
                                                make_power_law(1.2, 1.0, 2.0, true, 0.05)};
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const EntropyFamily fam(XI(rng));
        const double v = ito_correction(fam, coeffs[i % coeffs.size()], measures[(i / 4) % measures.size()], X(rng),
                                        U(rng), U(rng));
        worst = std::min(worst, v);
    }
    o.require(worst >= 0.0, "min over 1e4 tuples " + fmt(worst) + " >= 0");
    // Atomic {(1, 1)}, eta = u, xi = 1, u = 2, k = 0: every argument is at least xi.
    const double zero = ito_correction(EntropyFamily(1.0), linear_coefficient(1.0), make_atomic({{1.0, 1.0}}, 1.0),
                                       0.0, 2.0, 0.0);
    o.require(std::abs(zero) <= 1e-15, "worked example " + fmt(zero) + " == 0");
    return o;
}

Outcome ac9_mass() {
    Outcome o;
    const auto r = run_config("mass_conservation.cfg");
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    for (const auto* row : rows_named(r, "mass_change")) {
        if (row->time == 0.0) continue;
        worst = std::max(worst, std::abs(row->stat.mean) / row->stat.std_error);
        o.pass = o.pass && row->stat.n_samples == 256;
        ++n;
    }
    o.require(n > 0 && worst <= 3.0, "max |E dmass| / std_error " + fmt(worst) + " <= 3");
    return o;
}

Outcome ac10_entropy() {
    Outcome o;
    const auto r = run_config("entropy_check.cfg");
    for (double k : {-1.0, 0.0, 1.0}) {
        bool found = false;
        for (const auto* row : rows_named(r, "entropy_residual"))
            if (row->param_value == k) {
                const Verdict* v = nullptr;
                for (const auto& cand : r.verdicts)
                    if (cand.name.rfind("entropy_residual", 0) == 0 && cand.measured == row->stat.mean) v = &cand;
                const double tol = v ? -v->lower : 0.0;
                o.require(v && row->stat.mean >= -tol,
                          "k=" + fmt(k) + " residual " + fmt(row->stat.mean) + " >= -" + fmt(tol));
                found = true;
            }
        if (!found) o.require(false, "k=" + fmt(k) + " missing");
    }
    const auto shock = run_config("entropy_expansion_shock.cfg");
    double k0 = std::numeric_limits<double>::quiet_NaN();
    for (const auto* row : rows_named(shock, "entropy_residual"))
        if (row->param_value == 0.0) k0 = row->stat.mean;
    o.require(k0 < -0.1, "expansion shock k=0 residual " + fmt(k0) + " < -0.1");
    return o;
}

Outcome ac11_fractional_bv() {
    Outcome o;
    const auto r = run_config("fractional_bv.cfg");
    const auto mods = rows_named(r, "modulus");
    bool nondecreasing = mods.size() == 6;
    for (std::size_t i = 1; i < mods.size(); ++i)
        nondecreasing = nondecreasing && mods[i]->param_value > mods[i - 1]->param_value &&
                        mods[i]->stat.mean >= mods[i - 1]->stat.mean;
    o.require(nondecreasing, "omega(delta) non-decreasing on " + std::to_string(mods.size()) + " dyadic deltas");
    const double rate = slope_row(r, "modulus_vs_delta");
    o.require(rate > 0.1 && rate <= 1.0, "exponent " + fmt(rate) + " in (0.1, 1]");
    const auto besov = rows_named(r, "besov_seminorm");
    o.require(besov.size() == 1 && std::isfinite(besov[0]->stat.mean) && besov[0]->param_value == 0.75,
              "besov(mu=0.75) " + (besov.empty() ? std::string("missing") : fmt(besov[0]->stat.mean)));
    return o;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome ac12_determinism() {
    Outcome o;
    const auto root = std::filesystem::temp_directory_path() / "levy_scl_acceptance_determinism";
    std::filesystem::remove_all(root);
    for (const std::string name : {"error_rate.cfg", "continuous_dependence_noise.cfg", "entropy_check.cfg"}) {
        auto cfg = parse_config(kConfigs / name);
        std::vector<std::string> outputs;
        int run = 0;
        for (std::size_t threads : {1u, 8u, 1u, 8u}) {
            cfg.threads = threads;
            const auto dir = root / (name + std::to_string(run++));
            emit_report(run_experiment(cfg), dir);
            outputs.push_back(read_file(dir / "report.csv") + read_file(dir / "verdicts.csv") +
                              read_file(dir / "snapshots.csv"));
        }
        bool same = !outputs[0].empty();
        for (const auto& s : outputs) same = same && s == outputs[0];
        o.require(same, name + " identical at 1/8/1/8 workers");
    }
    std::filesystem::remove_all(root);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 heat kernel", ac1_heat_kernel},
        {"AC2 Burgers shock", ac2_burgers_shock},
        {"AC3 viscosity rate", ac3_viscosity_rate},
        {"AC4 BV monotonicity", ac4_bv_monotone},
        {"AC5 continuous dependence in noise", ac5_noise_dependence},
        {"AC6 continuous dependence in flux", ac6_flux_dependence},
        {"AC7 entropy family invariants", ac7_beta_invariants},
        {"AC8 Ito correction", ac8_ito_correction},
        {"AC9 mean mass conservation", ac9_mass},
        {"AC10 entropy residual", ac10_entropy},
        {"AC11 fractional BV", ac11_fractional_bv},
        {"AC12 determinism", ac12_determinism},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
