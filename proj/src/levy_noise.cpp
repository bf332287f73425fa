#include "levy_scl/levy_noise.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "levy_scl/errors.hpp"

namespace levy_scl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// int_0^b (1 ^ z^2) c z^{-1-alpha} dz, one side.
double power_law_second_moment(const PowerLawDensity& d, double b) {
    b = std::min(b, d.z_max);
    if (b <= 0.0) return 0.0;
    const double lo_end = std::min(b, 1.0);
    double value = d.scale * std::pow(lo_end, 2.0 - d.alpha) / (2.0 - d.alpha);
    if (b > 1.0) value += d.scale * (1.0 - std::pow(b, -d.alpha)) / d.alpha;
    return value;
}

double sides(const PowerLawDensity& d) { return d.two_sided ? 2.0 : 1.0; }

// One-sided integral of f over [lo, z_max] against c z^{-1-alpha} dz.
// Integrates g over [a, b] (either orientation) in pieces between the given points.
double integrate_pieces(const std::function<double(double)>& g, double a, double b, std::vector<double> points,
                        const quadrature::Options& opts) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> edges{lo};
    std::sort(points.begin(), points.end());
    for (double p : points)
        if (p > lo && p < hi) edges.push_back(p);
    edges.push_back(hi);
    double total = 0.0;
    for (std::size_t i = 1; i < edges.size(); ++i) total += quadrature::integrate(g, edges[i - 1], edges[i], opts);
    return a <= b ? total : -total;
}

// kinks: positive marks where f is not smooth.
double power_law_one_side(const PowerLawDensity& d, double lo, const std::function<double(double)>& f,
                          const quadrature::Options& opts, const std::vector<double>& kinks) {
    const double c = d.scale;
    const double a = d.alpha;
    double total = 0.0;
    const double mid = std::min(d.z_max, 1.0);
    auto mapped = [&](auto&& to) {
        std::vector<double> out;
        for (double k : kinks)
            if (k > 0.0) out.push_back(to(k));
        return out;
    };
    if (lo < mid) {
        if (lo > 0.0) {
            // z = e^y:  nu(dz) = c z^{-alpha} dy
            auto g = [&](double y) {
                const double z = std::exp(y);
                return f(z) * c * std::pow(z, -a);
            };
            total += integrate_pieces(g, std::log(lo), std::log(mid), mapped([](double k) { return std::log(k); }), opts);
        } else {
            // w = z^{2-alpha}:  nu(dz) = c / (2-alpha) * dw / z^2
            const double p = 2.0 - a;
            auto g = [&](double w) {
                const double z = std::pow(w, 1.0 / p);
                return f(z) / (z * z) * c / p;
            };
            total += integrate_pieces(g, 0.0, std::pow(mid, p), mapped([p](double k) { return std::pow(k, p); }), opts);
        }
    }
    const double upper_lo = std::max(lo, 1.0);
    if (d.z_max > upper_lo) {
        // s = z^{-alpha}:  nu(dz) = (c / alpha) ds
        auto g = [&](double s) { return f(std::pow(s, -1.0 / a)) * c / a; };
        total += integrate_pieces(g, std::pow(d.z_max, -a), std::pow(upper_lo, -a),
                                  mapped([a](double k) { return std::pow(k, -a); }), opts);
    }
    return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

LevyMeasureSpec make_atomic(std::vector<Atom> atoms, double cut) {
    LevyMeasureSpec m{AtomicMeasure{std::move(atoms)}, cut};
    validate(m);
    return m;
}

LevyMeasureSpec make_power_law(double alpha, double scale, double z_max, bool two_sided, double cut) {
    LevyMeasureSpec m{PowerLawDensity{alpha, scale, z_max, two_sided}, cut};
    validate(m);
    return m;
}

void validate(const LevyMeasureSpec& measure) {
    if (!(measure.cut > 0.0) || !std::isfinite(measure.cut))
        throw ValidationError("measure.cut: truncation cut must be positive and finite");
    std::visit(overloaded{
                   [](const AtomicMeasure& a) {
                       for (std::size_t i = 0; i < a.atoms.size(); ++i) {
                           const auto& atom = a.atoms[i];
                           if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
                               std::ostringstream msg;
                               msg << "measure.atoms[" << i << "]: weight must be positive, got " << atom.weight;
                               throw ValidationError(msg.str());
                           }
                           if (!(std::abs(atom.mark) > 0.0) || !std::isfinite(atom.mark)) {
                               std::ostringstream msg;
                               msg << "measure.atoms[" << i << "]: mark must be nonzero, got " << atom.mark;
                               throw ValidationError(msg.str());
                           }
                       }
                   },
                   [](const PowerLawDensity& d) {
                       if (!(d.alpha > 0.0 && d.alpha < 2.0)) {
                           std::ostringstream msg;
                           msg << "measure.alpha: stability index must lie in (0, 2), got " << d.alpha
                               << " (int (1^|z|^2) nu(dz) diverges otherwise)";
                           throw ValidationError(msg.str());
                       }
                       if (!(d.scale > 0.0) || !std::isfinite(d.scale))
                           throw ValidationError("measure.scale: density scale must be positive");
                       if (!(d.z_max > 0.0) || !std::isfinite(d.z_max))
                           throw ValidationError("measure.z_max: support bound must be positive and finite");
                   }},
               measure.shape);
}

SmallJumpReport small_jump_check(const LevyMeasureSpec& measure) {
    validate(measure);
    const double cut = measure.cut;
    return std::visit(overloaded{
                          [cut](const AtomicMeasure& a) {
                              SmallJumpReport r;
                              for (const auto& atom : a.atoms) {
                                  const double m = mark_cap(atom.mark);
                                  r.total += atom.weight * m * m;
                                  if (std::abs(atom.mark) < cut) r.truncation_proxy += atom.weight * m * m;
                              }
                              return r;
                          },
                          [cut](const PowerLawDensity& d) {
                              SmallJumpReport r;
                              r.total = sides(d) * power_law_second_moment(d, d.z_max);
                              r.truncation_proxy = sides(d) * power_law_second_moment(d, cut);
                              return r;
                          }},
                      measure.shape);
}

double truncated_intensity(const LevyMeasureSpec& measure, double cut) {
    if (!(cut > 0.0)) throw ArgumentError("truncated_intensity: cut must be positive");
    return std::visit(overloaded{
                          [cut](const AtomicMeasure& a) {
                              double total = 0.0;
                              for (const auto& atom : a.atoms)
                                  if (std::abs(atom.mark) >= cut) total += atom.weight;
                              return total;
                          },
                          [cut](const PowerLawDensity& d) {
                              if (cut >= d.z_max) return 0.0;
                              return sides(d) * d.scale * (std::pow(cut, -d.alpha) - std::pow(d.z_max, -d.alpha)) /
                                     d.alpha;
                          }},
                      measure.shape);
}

double default_cut(const LevyMeasureSpec& measure, double ratio) {
    return std::visit(overloaded{
                          [](const AtomicMeasure& a) {
                              double smallest = std::numeric_limits<double>::infinity();
                              for (const auto& atom : a.atoms) smallest = std::min(smallest, std::abs(atom.mark));
                              return std::isfinite(smallest) ? smallest : 1.0;
                          },
                          [ratio](const PowerLawDensity& d) {
                              const double total = power_law_second_moment(d, d.z_max);
                              auto excess = [&](double k) {
                                  const double dropped = power_law_second_moment(d, k);
                                  return dropped - ratio * (total - dropped);
                              };
                              // excess is increasing in k; bisect in log space.
                              double lo = std::log(1e-300);
                              double hi = std::log(d.z_max);
                              for (int it = 0; it < 200; ++it) {
                                  const double mid = 0.5 * (lo + hi);
                                  if (excess(std::exp(mid)) > 0.0) hi = mid;
                                  else lo = mid;
                              }
                              return std::exp(lo);
                          }},
                      measure.shape);
}

double integrate_measure(const LevyMeasureSpec& measure, double cut, const std::function<double(double)>& f,
                         const quadrature::Options& opts, const std::vector<double>& kinks) {
    if (cut < 0.0) throw ArgumentError("integrate_measure: cut must be nonnegative");
    return std::visit(overloaded{
                          [&](const AtomicMeasure& a) {
                              double total = 0.0;
                              for (const auto& atom : a.atoms)
                                  if (std::abs(atom.mark) >= cut) total += atom.weight * f(atom.mark);
                              return total;
                          },
                          [&](const PowerLawDensity& d) {
                              double total = power_law_one_side(d, cut, f, opts, kinks);
                              if (d.two_sided) {
                                  auto mirrored = [&](double z) { return f(-z); };
                                  std::vector<double> flipped;
                                  for (double k : kinks) flipped.push_back(-k);
                                  total += power_law_one_side(d, cut, mirrored, opts, flipped);
                              }
                              return total;
                          }},
                      measure.shape);
}

// ---------------------------------------------------------------------------

JumpCoefficient zero_coefficient() {
    JumpCoefficient c;
    c.name = "zero";
    c.identically_zero = true;
    c.eval = [](double, double, double) { return 0.0; };
    c.lambda_star = 0.0;
    c.lipschitz_x = 0.0;
    c.growth = [](double) { return 0.0; };
    c.state_bound = std::numeric_limits<double>::infinity();
    c.amplitude = [](double, double) { return 0.0; };
    c.mark_factor = [](double) { return 0.0; };
    return c;
}

JumpCoefficient linear_coefficient(double scale) {
    JumpCoefficient c;
    c.name = "linear";
    c.eval = [scale](double, double u, double z) { return scale * u * mark_cap(z); };
    c.lambda_star = std::abs(scale);
    c.lipschitz_x = 0.0;
    c.growth = [scale](double) { return std::abs(scale); };
    c.state_bound = std::numeric_limits<double>::infinity();
    c.amplitude = [scale](double, double u) { return scale * u; };
    c.mark_factor = [](double z) { return mark_cap(z); };
    return c;
}

JumpCoefficient bump_coefficient(double scale, double center, double width, double state_bound) {
    if (!(width > 0.0)) throw ArgumentError("bump_coefficient: width must be positive");
    if (!(state_bound > 0.0)) throw ArgumentError("bump_coefficient: state_bound must be positive");
    auto g = [center, width](double x) {
        const double s = (x - center) / width;
        return std::exp(-0.5 * s * s);
    };
    JumpCoefficient c;
    c.name = "bump";
    c.eval = [scale, g](double x, double u, double z) { return scale * g(x) * u * mark_cap(z); };
    c.lambda_star = std::abs(scale);
    // sup |g'| = 1 / (width sqrt(e))
    c.lipschitz_x = std::abs(scale) * state_bound / (width * std::sqrt(std::exp(1.0)));
    c.growth = [scale, g](double x) { return std::abs(scale) * g(x); };
    c.state_bound = state_bound;
    c.x_dependent = true;
    c.amplitude = [scale, g](double x, double u) { return scale * g(x) * u; };
    c.mark_factor = [](double z) { return mark_cap(z); };
    return c;
}

AssumptionCheck check_assumptions(const JumpCoefficient& coeff, Rng& rng, std::size_t samples, double x_lo,
                                  double x_hi, double u_bound, double z_bound) {
    const double ub = std::min(u_bound, coeff.state_bound);
    std::uniform_real_distribution<double> ux(x_lo, x_hi);
    std::uniform_real_distribution<double> uu(-ub, ub);
    std::uniform_real_distribution<double> uz(-z_bound, z_bound);
    AssumptionCheck out;
    out.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        const double x = ux(rng);
        const double y = coeff.x_dependent ? ux(rng) : x;
        const double u = uu(rng);
        const double v = uu(rng);
        const double z = uz(rng);
        const double cap = mark_cap(z);
        if (cap == 0.0) continue;
        const double lhs = std::abs(coeff(x, u, z) - coeff(y, v, z));
        const double rhs = (coeff.lambda_star * std::abs(u - v) + coeff.lipschitz_x * std::abs(x - y)) * cap;
        if (lhs > 0.0) out.worst_lipschitz_ratio = std::max(out.worst_lipschitz_ratio, rhs > 0.0 ? lhs / rhs : INFINITY);
        const double glhs = std::abs(coeff(x, u, z));
        const double grhs = coeff.growth(x) * (1.0 + std::abs(u)) * cap;
        if (glhs > 0.0) out.worst_growth_ratio = std::max(out.worst_growth_ratio, grhs > 0.0 ? glhs / grhs : INFINITY);
    }
    return out;
}

// ---------------------------------------------------------------------------

JumpPath::JumpPath(double horizon, double cut, std::vector<JumpEvent> events)
    : horizon_(horizon), cut_(cut), events_(std::move(events)) {
    if (!(horizon_ > 0.0)) throw ArgumentError("JumpPath: horizon must be positive");
    if (!(cut_ > 0.0)) throw ArgumentError("JumpPath: cut must be positive");
    double prev = 0.0;
    for (const auto& e : events_) {
        if (!(e.time > prev) || e.time > horizon_)
            throw ContractError("JumpPath: event times must be strictly increasing in (0, horizon]");
        if (!(std::abs(e.mark) >= cut_)) throw ContractError("JumpPath: event mark below the cut");
        prev = e.time;
    }
}

std::uint64_t SeedDerivation::derive_seed(std::uint64_t path_index, StreamPurpose purpose) const {
    std::uint64_t h = splitmix64(master_);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(purpose) * 0xd1b54a32d192ed03ULL));
    h = splitmix64(h ^ path_index);
    return h;
}

JumpPath sample_path(const LevyMeasureSpec& measure, double cut, double horizon, Rng& rng) {
    if (!(horizon > 0.0)) throw ArgumentError("sample_path: horizon must be positive");
    const double intensity = truncated_intensity(measure, cut);
    if (!std::isfinite(intensity)) throw ArgumentError("sample_path: truncated intensity is not finite");
    std::vector<JumpEvent> events;
    if (intensity > 0.0) {
        std::poisson_distribution<long> count_dist(intensity * horizon);
        const long count = count_dist(rng);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        events.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) events.push_back({horizon * (1.0 - unit(rng)), 0.0});

        std::visit(overloaded{
                       [&](const AtomicMeasure& a) {
                           std::vector<double> marks;
                           std::vector<double> weights;
                           for (const auto& atom : a.atoms)
                               if (std::abs(atom.mark) >= cut) {
                                   marks.push_back(atom.mark);
                                   weights.push_back(atom.weight);
                               }
                           std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
                           for (auto& e : events) e.mark = marks[pick(rng)];
                       },
                       [&](const PowerLawDensity& d) {
                           // Inverse CDF of z^{-1-alpha} restricted to [cut, z_max].
                           const double top = std::pow(cut, -d.alpha);
                           const double bottom = std::pow(d.z_max, -d.alpha);
                           for (auto& e : events) {
                               const double u = unit(rng);
                               double z = std::pow(top - u * (top - bottom), -1.0 / d.alpha);
                               z = std::clamp(z, cut, d.z_max);
                               if (d.two_sided && unit(rng) < 0.5) z = -z;
                               e.mark = z;
                           }
                       }},
                   measure.shape);

        std::stable_sort(events.begin(), events.end(),
                         [](const JumpEvent& l, const JumpEvent& r) { return l.time < r.time; });
        for (std::size_t i = 1; i < events.size(); ++i)
            if (events[i].time <= events[i - 1].time)
                events[i].time = std::nextafter(events[i - 1].time, INFINITY);
        if (!events.empty() && events.back().time > horizon) events.pop_back();
    }
    return JumpPath(horizon, cut, std::move(events));
}

double compensator_integral(const JumpCoefficient& coeff, const LevyMeasureSpec& measure, double cut, double x,
                            double u) {
    if (coeff.separable()) {
        const double a = coeff.amplitude(x, u);
        if (a == 0.0) return 0.0;
        return a * integrate_measure(measure, cut, coeff.mark_factor);
    }
    return integrate_measure(measure, cut, [&](double z) { return coeff(x, u, z); });
}

}  // namespace levy_scl
