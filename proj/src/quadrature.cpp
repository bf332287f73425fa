#include "levy_scl/quadrature.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "levy_scl/errors.hpp"

namespace levy_scl::quadrature {

namespace {

constexpr std::array<double, 8> kNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int panels) {
    if (a == b) return 0.0;
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double s = 0.0;
        for (std::size_t k = 0; k < kNodes.size(); ++k) s += kWeights[k] * f(mid + 0.5 * h * kNodes[k]);
        total += 0.5 * h * s;
    }
    return total;
}

double integrate(const std::function<double(double)>& f, double a, double b, const Options& opts) {
    if (a == b) return 0.0;
    int panels = opts.initial_panels;
    double prev = integrate_fixed(f, a, b, panels);
    while (panels < opts.max_panels) {
        panels *= 2;
        const double cur = integrate_fixed(f, a, b, panels);
        if (std::abs(cur - prev) <= std::max(opts.abs_tol, opts.rel_tol * std::abs(cur))) return cur;
        prev = cur;
    }
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge with " << panels << " panels";
    throw NumericalError(msg.str());
}

}  // namespace levy_scl::quadrature
