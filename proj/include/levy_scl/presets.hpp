#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levy_scl/field.hpp"
#include "levy_scl/levy_noise.hpp"
#include "levy_scl/solvers.hpp"

namespace levy_scl {

/// A named preset with numeric parameters, e.g. initial.kind = box, initial.height = 1.
struct PresetSpec {
    std::string kind;
    std::map<std::string, double> params;

    double get(const std::string& key) const;
    bool operator==(const PresetSpec&) const = default;
};

struct PresetInfo {
    std::string family;  // "initial" or "flux"
    std::string kind;
    std::string description;
    std::vector<std::pair<std::string, double>> defaults;
};

/// Every initial-data and flux preset with its parameter defaults.
const std::vector<PresetInfo>& preset_catalog();
const PresetInfo* find_preset(const std::string& family, const std::string& kind);

/// Fills unset parameters with defaults. Throws ConfigError for unknown kinds or params.
PresetSpec complete_preset(const std::string& family, PresetSpec spec);

Field make_initial_field(const Grid1D& grid, const PresetSpec& spec);
FluxModel make_flux(const PresetSpec& spec);

/// Smooth step rising from 0 to 1 on [-1, 1]: the CDF of the normalized (1 - s^2)^3 bump.
double smooth_step(double s);

struct NoiseSpec {
    std::string kind = "zero";  // zero | linear
    double scale = 0.0;
    std::optional<double> lambda_star;
    std::string x_dependence = "none";  // none | bump
    double bump_center = 0.0;
    double bump_width = 1.0;
    double state_bound = 10.0;

    bool operator==(const NoiseSpec&) const = default;
};

JumpCoefficient make_noise(const NoiseSpec& spec);

struct MeasureConfig {
    std::string kind = "atomic";  // atomic | power_law
    std::vector<Atom> atoms;
    double alpha = 0.5;
    double scale = 1.0;
    double z_max = 1.0;
    bool two_sided = false;
    std::optional<double> cut;

    bool operator==(const MeasureConfig& o) const;
};

/// Builds the measure; an unset cut resolves to default_cut().
LevyMeasureSpec make_measure(const MeasureConfig& cfg);

}  // namespace levy_scl
