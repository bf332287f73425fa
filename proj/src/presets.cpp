#include "levy_scl/presets.hpp"

#include <cmath>

#include "levy_scl/errors.hpp"

namespace levy_scl {

double PresetSpec::get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError("preset '" + kind + "' has no parameter '" + key + "'");
    return it->second;
}

const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> catalog = {
        {"initial", "gaussian", "base + amplitude * exp(-(x - center)^2 / (2 width^2))",
         {{"amplitude", 1.0}, {"center", 0.0}, {"width", 0.5}, {"base", 0.0}}},
        {"initial", "box", "base + height on [left, right], edges mollified over +-mollify",
         {{"height", 1.0}, {"left", -0.5}, {"right", 0.5}, {"mollify", 0.0}, {"base", 0.0}}},
        {"initial", "riemann", "u_left for x < position, u_right beyond (periodic wrap at the box edge)",
         {{"u_left", 1.0}, {"u_right", 0.0}, {"position", 0.0}}},
        {"initial", "constant", "value everywhere", {{"value", 1.0}}},
        {"initial", "expansion", "amplitude * sign(x - position): a non-entropy standing discontinuity for Burgers",
         {{"amplitude", 1.0}, {"position", 0.0}}},
        {"flux", "burgers", "F(u) = u^2 / 2 + shift * u", {{"shift", 0.0}}},
        {"flux", "linear", "F(u) = (speed + shift) * u", {{"speed", 1.0}, {"shift", 0.0}}},
        {"flux", "zero", "F(u) = 0", {}},
    };
    return catalog;
}

const PresetInfo* find_preset(const std::string& family, const std::string& kind) {
    for (const auto& p : preset_catalog())
        if (p.family == family && p.kind == kind) return &p;
    return nullptr;
}

PresetSpec complete_preset(const std::string& family, PresetSpec spec) {
    const PresetInfo* info = find_preset(family, spec.kind);
    if (!info) throw ConfigError(family + ".kind: unknown preset '" + spec.kind + "'");
    for (const auto& [key, value] : spec.params) {
        bool known = false;
        for (const auto& d : info->defaults) known = known || d.first == key;
        if (!known) throw ConfigError(family + "." + key + ": not a parameter of preset '" + spec.kind + "'");
    }
    for (const auto& [key, value] : info->defaults) spec.params.try_emplace(key, value);
    return spec;
}

double smooth_step(double s) {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double s2 = s * s;
    return 0.5 + (35.0 / 32.0) * s * (1.0 - s2 + 0.6 * s2 * s2 - s2 * s2 * s2 / 7.0);
}

Field make_initial_field(const Grid1D& grid, const PresetSpec& raw) {
    const PresetSpec spec = complete_preset("initial", raw);
    if (spec.kind == "gaussian") {
        const double a = spec.get("amplitude"), c = spec.get("center"), w = spec.get("width"), b = spec.get("base");
        if (!(w > 0.0)) throw ConfigError("initial.width must be positive");
        return Field::sample(grid, [=](double x) { return b + a * std::exp(-0.5 * (x - c) * (x - c) / (w * w)); });
    }
    if (spec.kind == "box") {
        const double h = spec.get("height"), l = spec.get("left"), r = spec.get("right"), m = spec.get("mollify"),
                     b = spec.get("base");
        if (!(r > l)) throw ConfigError("initial.left must be below initial.right");
        if (m < 0.0) throw ConfigError("initial.mollify must be >= 0");
        return Field::sample(grid, [=](double x) {
            if (m == 0.0) return b + ((x >= l && x < r) ? h : 0.0);
            return b + h * (smooth_step((x - l) / m) - smooth_step((x - r) / m));
        });
    }
    if (spec.kind == "riemann") {
        const double ul = spec.get("u_left"), ur = spec.get("u_right"), p = spec.get("position");
        return Field::sample(grid, [=](double x) { return x < p ? ul : ur; });
    }
    if (spec.kind == "constant") {
        return Field(grid, spec.get("value"));
    }
    if (spec.kind == "expansion") {
        const double a = spec.get("amplitude"), p = spec.get("position");
        return Field::sample(grid, [=](double x) { return x < p ? -a : a; });
    }
    throw ConfigError("initial.kind: unknown preset '" + spec.kind + "'");
}

FluxModel make_flux(const PresetSpec& raw) {
    const PresetSpec spec = complete_preset("flux", raw);
    if (spec.kind == "burgers") return burgers_flux(spec.get("shift"));
    if (spec.kind == "linear") return linear_flux(spec.get("speed") + spec.get("shift"));
    if (spec.kind == "zero") return zero_flux();
    throw ConfigError("flux.kind: unknown preset '" + spec.kind + "'");
}

JumpCoefficient make_noise(const NoiseSpec& spec) {
    JumpCoefficient c;
    if (spec.kind == "zero") {
        return zero_coefficient();
    } else if (spec.kind == "linear") {
        if (spec.x_dependence == "none") {
            c = linear_coefficient(spec.scale);
        } else if (spec.x_dependence == "bump") {
            if (!(spec.bump_width > 0.0)) throw ConfigError("noise.bump_width must be positive");
            if (!(spec.state_bound > 0.0)) throw ConfigError("noise.state_bound must be positive");
            c = bump_coefficient(spec.scale, spec.bump_center, spec.bump_width, spec.state_bound);
        } else {
            throw ConfigError("noise.x_dependence: unknown value '" + spec.x_dependence + "' (none | bump)");
        }
    } else {
        throw ConfigError("noise.kind: unknown preset '" + spec.kind + "' (zero | linear)");
    }
    if (spec.lambda_star) c.lambda_star = *spec.lambda_star;
    if (!(c.lambda_star < 1.0))
        throw ConfigError("noise.lambda_star: the Lipschitz constant in u must be below 1, got " +
                          std::to_string(c.lambda_star));
    return c;
}

bool MeasureConfig::operator==(const MeasureConfig& o) const {
    if (kind != o.kind || cut != o.cut || atoms.size() != o.atoms.size()) return false;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].mark != o.atoms[i].mark || atoms[i].weight != o.atoms[i].weight) return false;
    return alpha == o.alpha && scale == o.scale && z_max == o.z_max && two_sided == o.two_sided;
}

LevyMeasureSpec make_measure(const MeasureConfig& cfg) {
    LevyMeasureSpec m;
    if (cfg.kind == "atomic") {
        m.shape = AtomicMeasure{cfg.atoms};
    } else if (cfg.kind == "power_law") {
        m.shape = PowerLawDensity{cfg.alpha, cfg.scale, cfg.z_max, cfg.two_sided};
    } else {
        throw ConfigError("measure.kind: unknown measure '" + cfg.kind + "' (atomic | power_law)");
    }
    m.cut = 1.0;
    try {
        validate(m);
        m.cut = cfg.cut ? *cfg.cut : default_cut(m);
        validate(m);
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
    return m;
}

}  // namespace levy_scl
