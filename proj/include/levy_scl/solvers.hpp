#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levy_scl/field.hpp"
#include "levy_scl/levy_noise.hpp"

namespace levy_scl {

struct FluxModel {
    std::string name;
    std::function<double(double)> F;
    std::function<double(double)> F_prime;
    /// sup |F''|, nullopt when unbounded.
    std::optional<double> second_bound;
    bool convex = true;
    /// Minimizer of a convex F, when it has one.
    std::optional<double> sonic_point;
    /// Set when F' is constant (linear flux).
    std::optional<double> constant_speed;

    double operator()(double u) const { return F(u); }
    /// sup |F'| on [lo, hi].
    double speed_bound(double lo, double hi) const;
};

FluxModel zero_flux();
FluxModel linear_flux(double speed);
/// F(u) = u^2/2 + shift * u
FluxModel burgers_flux(double shift = 0.0);

/// Checks F' against centered differences of F and that second_bound dominates
/// sampled second differences on [lo, hi]. Throws ValidationError.
void validate_flux(const FluxModel& flux, double lo, double hi);

enum class NumericalFlux { engquist_osher, godunov, lax_friedrichs };

std::string to_string(NumericalFlux scheme);
NumericalFlux numerical_flux_from_string(const std::string& name);

/// Two-point monotone flux H(a, b) at an interface with left state a and right state b.
double numerical_flux(const FluxModel& flux, NumericalFlux scheme, double a, double b);

struct SolverConfig {
    double epsilon = 0.0;
    double cfl = 0.5;
    NumericalFlux scheme = NumericalFlux::engquist_osher;
    std::vector<double> snapshot_times;
    /// Upper bound on dt regardless of wave speed.
    double max_dt = 1e-2;
    /// Store left and right states at every applied jump.
    bool record_jumps = false;
};

/// Throws ConfigError on an invalid configuration.
void validate(const SolverConfig& cfg);

struct Snapshot {
    double time = 0.0;
    Field field;
};

struct JumpRecord {
    double time = 0.0;
    double mark = 0.0;
    Field before;
    Field after;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::vector<JumpRecord> jumps;

    const Field& final_field() const { return snapshots.back().field; }
};

/// Largest dt allowed by the CFL condition for the current state.
double cfl_time_step(const Field& f, const FluxModel& flux, double cfl);

/// u_i <- u_i - dt/dx (H_{i+1/2} - H_{i-1/2}), periodic. Throws ConfigError when
/// dt violates the CFL bound.
Field hyperbolic_step(const Field& f, const FluxModel& flux, NumericalFlux scheme, double dt);

/// Backward Euler heat step (I - epsilon dt L) u_new = u_old, L the periodic
/// second difference. Solved as a cyclic tridiagonal system.
Field diffusion_step(const Field& f, double epsilon, double dt);

/// u_i <- u_i + eta(x_i, u_i; z)
Field jump_update(const Field& f, const JumpCoefficient& coeff, double mark);

/// u_i <- u_i - dt * int_{|z|>=cut} eta(x_i, u_i; z) nu(dz)
Field compensator_update(const Field& f, const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut,
                         double dt);

/// Lie splitting hyperbolic -> diffusion -> compensator, with every path event applied
/// at its exact time. Snapshots are taken after any jump that coincides with them.
Trajectory solve(const Field& u0, const FluxModel& flux, const JumpCoefficient& coeff,
                 const LevyMeasureSpec& measure, const SolverConfig& cfg, const JumpPath& path);

/// Periodic convolution with the heat kernel (4 pi eps t)^{-1/2} exp(-x^2 / (4 eps t)),
/// integrated exactly over each (piecewise constant) source cell.
Field heat_kernel_solution(const Field& u0, double epsilon, double t);

/// Columnar CSV: time,n_cells,x_min,x_max,u_0,...,u_{n-1}; 17 significant digits.
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);

}  // namespace levy_scl
