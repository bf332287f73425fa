#pragma once

#include <functional>

namespace levy_scl::quadrature {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int initial_panels = 4;
    int max_panels = 1 << 14;
};

/// Composite 8-point Gauss-Legendre on [a, b], panel count doubled until two
/// successive estimates agree to within max(abs_tol, rel_tol * |I|).
/// Throws NumericalError when max_panels is reached without agreement.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

/// Single fixed-panel composite rule, no refinement.
double integrate_fixed(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace levy_scl::quadrature
