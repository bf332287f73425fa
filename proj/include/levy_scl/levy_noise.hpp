#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "levy_scl/quadrature.hpp"

namespace levy_scl {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Lévy measures
// ---------------------------------------------------------------------------

struct Atom {
    double mark = 0.0;
    double weight = 0.0;
};

/// Finite sum of point masses: nu = sum_i w_i delta_{z_i}.
struct AtomicMeasure {
    std::vector<Atom> atoms;
};

/// nu(dz) = c |z|^{-1-alpha} dz on (0, z_max], mirrored onto [-z_max, 0) when
/// two_sided is set. The density may be singular at the origin.
struct PowerLawDensity {
    double alpha = 0.5;
    double scale = 1.0;
    double z_max = 1.0;
    bool two_sided = false;
};

struct LevyMeasureSpec {
    std::variant<AtomicMeasure, PowerLawDensity> shape;
    /// Smallest simulated jump magnitude kappa.
    double cut = 1.0;

    bool is_atomic() const { return std::holds_alternative<AtomicMeasure>(shape); }
};

LevyMeasureSpec make_atomic(std::vector<Atom> atoms, double cut);
LevyMeasureSpec make_power_law(double alpha, double scale, double z_max, bool two_sided, double cut);

/// Throws ValidationError naming the offending parameter.
void validate(const LevyMeasureSpec& measure);

struct SmallJumpReport {
    /// int_{|z|>0} (1 ^ |z|^2) nu(dz)
    double total = 0.0;
    /// int_{|z|<cut} (|z| ^ 1)^2 nu(dz): the variance dropped by truncating at the cut.
    double truncation_proxy = 0.0;
};

SmallJumpReport small_jump_check(const LevyMeasureSpec& measure);

/// lambda_kappa = nu({|z| >= cut}).
double truncated_intensity(const LevyMeasureSpec& measure, double cut);

/// Smallest-effort cut whose truncation proxy is at most `ratio` times the retained part.
/// Atomic measures get the smallest atom magnitude (nothing is neglected).
double default_cut(const LevyMeasureSpec& measure, double ratio = 1e-4);

/// int_{|z| >= cut} f(z) nu(dz); cut = 0 integrates over all of |z| > 0.
/// Exact sum for atomic measures. Power-law densities use composite Gauss-Legendre
/// after a change of variables that flattens the density (log z near the cut,
/// z^{2-alpha} when integrating down to the origin, z^{-alpha} above |z| = 1).
/// `kinks` lists marks where f is not smooth; panels are split there.
double integrate_measure(const LevyMeasureSpec& measure, double cut,
                         const std::function<double(double)>& f,
                         const quadrature::Options& opts = {}, const std::vector<double>& kinks = {});

// ---------------------------------------------------------------------------
// Jump coefficients eta(x, u; z)
// ---------------------------------------------------------------------------

struct JumpCoefficient {
    std::string name;
    std::function<double(double x, double u, double z)> eval;
    double lambda_star = 0.0;
    double lipschitz_x = 0.0;
    std::function<double(double x)> growth;
    /// |u| range on which lipschitz_x is claimed. Infinite for x-independent presets.
    double state_bound = 0.0;
    bool x_dependent = false;
    /// eta == 0 everywhere; solvers then ignore jump paths entirely.
    bool identically_zero = false;

    // Optional product form eval(x,u,z) = amplitude(x,u) * mark_factor(z). Lets the
    // compensator integrate over marks once instead of once per cell.
    std::function<double(double x, double u)> amplitude;
    std::function<double(double z)> mark_factor;

    double operator()(double x, double u, double z) const { return eval(x, u, z); }
    bool separable() const { return static_cast<bool>(amplitude) && static_cast<bool>(mark_factor); }
};

inline double mark_cap(double z) { return std::min(std::abs(z), 1.0); }

JumpCoefficient zero_coefficient();
/// eta(u; z) = scale * u * (|z| ^ 1)
JumpCoefficient linear_coefficient(double scale);
/// eta(x, u; z) = scale * g(x) * u * (|z| ^ 1), g(x) = exp(-(x - center)^2 / (2 width^2)).
/// lipschitz_x holds for |u| <= state_bound.
JumpCoefficient bump_coefficient(double scale, double center, double width, double state_bound);

struct AssumptionCheck {
    double worst_lipschitz_ratio = 0.0;
    double worst_growth_ratio = 0.0;
    std::size_t samples = 0;
    bool holds() const { return worst_lipschitz_ratio <= 1.0 + 1e-12 && worst_growth_ratio <= 1.0 + 1e-12; }
};

/// Spot-checks the Lipschitz bound (lambda*|u-v| + K|x-y|)(|z|^1) and the growth
/// envelope g(x)(1+|u|)(|z|^1) on random triples. Ratios are lhs/rhs.
AssumptionCheck check_assumptions(const JumpCoefficient& coeff, Rng& rng, std::size_t samples,
                                  double x_lo, double x_hi, double u_bound, double z_bound);

// ---------------------------------------------------------------------------
// Jump paths and seeds
// ---------------------------------------------------------------------------

struct JumpEvent {
    double time = 0.0;
    double mark = 0.0;
    bool operator==(const JumpEvent&) const = default;
};

/// One realization of N(dz, dt) restricted to |z| >= cut on (0, horizon].
class JumpPath {
public:
    JumpPath(double horizon, double cut, std::vector<JumpEvent> events);

    double horizon() const { return horizon_; }
    double cut() const { return cut_; }
    const std::vector<JumpEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }

    bool operator==(const JumpPath&) const = default;

private:
    double horizon_;
    double cut_;
    std::vector<JumpEvent> events_;
};

enum class StreamPurpose : std::uint64_t {
    jump_path = 1,
    initial_data = 2,
    calibration = 3,
};

/// Deterministic per-(path, purpose) generators from one master seed.
class SeedDerivation {
public:
    explicit SeedDerivation(std::uint64_t master_seed) : master_(master_seed) {}

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t derive_seed(std::uint64_t path_index, StreamPurpose purpose) const;
    Rng stream(std::uint64_t path_index, StreamPurpose purpose) const {
        return Rng(derive_seed(path_index, purpose));
    }

private:
    std::uint64_t master_;
};

JumpPath sample_path(const LevyMeasureSpec& measure, double cut, double horizon, Rng& rng);

/// int_{|z| >= cut} eta(x, u; z) nu(dz): the drift subtracted between jump events.
double compensator_integral(const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut,
                            double x, double u);

}  // namespace levy_scl
