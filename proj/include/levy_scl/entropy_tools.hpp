#pragma once

#include <functional>
#include <vector>

#include "levy_scl/levy_noise.hpp"
#include "levy_scl/solvers.hpp"

namespace levy_scl {

/// beta_xi(r) = xi * beta(r / xi), with the even convex C^2 base profile
/// beta'(s) = s (3 - s^2) / 2 on |s| <= 1 and beta'(s) = sign(s) outside.
class EntropyFamily {
public:
    /// sup_{|s|<=1} | |s| - beta(s) |
    static constexpr double M1 = 3.0 / 8.0;
    /// sup_{|s|<=1} |beta''(s)|
    static constexpr double M2 = 3.0 / 2.0;

    explicit EntropyFamily(double xi);

    double xi() const { return xi_; }
    double beta(double r) const;
    double beta_prime(double r) const;
    double beta_second(double r) const;
    /// beta(r + eta) - beta(r) - eta beta'(r), evaluated without cancellation
    double bregman(double r, double eta) const;

private:
    double xi_;
};

/// sign(a - b) (F(a) - F(b))
double kruzkov_flux(const FluxModel& flux, double a, double b);

struct EntropyFluxPair {
    FluxModel flux;
    EntropyFamily family;
    int max_panels = 1 << 12;
};

/// F^beta(a, b) = int_b^a beta_xi'(s - b) F'(s) ds, to relative tolerance 1e-9.
/// Closed form c * beta_xi(a - b) for linear fluxes.
double entropy_flux_beta(const EntropyFluxPair& pair, double a, double b);

/// int [beta(u - k + eta) - beta(u - k) - eta beta'(u - k)] nu(dz) over |z| >= cut
/// (cut = 0: the whole measure). Nonnegative by convexity.
double ito_correction(const EntropyFamily& family, const JumpCoefficient& coeff, const LevyMeasureSpec& measure,
                      double x, double u, double k = 0.0, double cut = 0.0);

struct NoiseDistance {
    double value = 0.0;
    double argmax_u = 0.0;
};

/// sup over an n_u-point grid on [u_lo, u_hi] of int (eta - sigma)^2 / (1 + u^2) nu(dz).
/// Both coefficients must be x-independent.
NoiseDistance noise_distance(const JumpCoefficient& eta, const JumpCoefficient& sigma, const LevyMeasureSpec& measure,
                             double u_lo, double u_hi, std::size_t n_u);

/// Smooth nonnegative space-time weight with compact support
/// [t_lo, t_hi] x [x_lo, x_hi] and analytic partial derivatives.
class TestFunction {
public:
    TestFunction() = default;
    TestFunction(std::function<double(double, double)> value, std::function<double(double, double)> d_dt,
                 std::function<double(double, double)> d_dx, double t_lo, double t_hi, double x_lo, double x_hi);

    /// psi(t, x) = b((t - t_c)/t_w) * b((x - x_c)/x_w), b(s) = (1 - s^2)^3 on |s| < 1.
    static TestFunction product_bump(double t_center, double t_halfwidth, double x_center, double x_halfwidth,
                                     double amplitude = 1.0);
    static TestFunction zero();

    double operator()(double t, double x) const { return value_(t, x); }
    double dt(double t, double x) const { return d_dt_(t, x); }
    double dx(double t, double x) const { return d_dx_(t, x); }
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    bool is_zero() const { return zero_; }

private:
    std::function<double(double, double)> value_;
    std::function<double(double, double)> d_dt_;
    std::function<double(double, double)> d_dx_;
    double t_lo_ = 0.0, t_hi_ = 0.0, x_lo_ = 0.0, x_hi_ = 0.0;
    bool zero_ = false;
};

/// Discrete left side of the stochastic entropy inequality for one path, entropy
/// beta_xi(. - k) and flux F^beta(., k):
///   int psi(0) beta(u0 - k) + int int [psi_t beta(u - k) + zeta(u) psi_x]
///   + sum_jumps int [beta(u- + eta - k) - beta(u- - k)] psi
///   - int int int [beta(u + eta - k) - beta(u - k)] psi nu(dz)      (compensator)
///   + int int ito_correction psi.
/// Time integrals use the trapezoid rule between snapshots and jump records
/// (left limits before each jump). Requires cfg.record_jumps trajectories.
double entropy_residual_path(const Trajectory& traj, const EntropyFluxPair& pair, const TestFunction& psi,
                             const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut, double k);

struct EntropyResidual {
    double k = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Ensemble mean of entropy_residual_path for each k. Throws ContractError when the
/// spatial support of psi reaches the boundary cells or its time support leaves
/// [0, last snapshot].
std::vector<EntropyResidual> entropy_residual(const std::vector<Trajectory>& ensemble, const EntropyFluxPair& pair,
                                              const TestFunction& psi, const JumpCoefficient& coeff,
                                              const LevyMeasureSpec& measure, double cut,
                                              const std::vector<double>& k_values);

/// eps * int int beta_xi''(u) |u_x|^2 dx dt, forward differences in x, trapezoid in time.
double dissipation_functional(const Trajectory& traj, const EntropyFamily& family, double epsilon);

}  // namespace levy_scl
