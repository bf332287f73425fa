#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "levy_scl/presets.hpp"
#include "levy_scl/solvers.hpp"

namespace levy_scl {

enum class ExperimentKind { error_rate, continuous_dependence, bv_monotone, fractional_bv, entropy_check };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct Dataset {
    PresetSpec initial{"box", {}};
    PresetSpec flux{"burgers", {}};
    NoiseSpec noise;

    bool operator==(const Dataset&) const = default;
};

enum class SweepKind { none, noise_factor, flux_shift };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::error_rate;
    Dataset u;
    std::optional<Dataset> v;
    MeasureConfig measure;

    double x_min = -4.0;
    double x_max = 4.0;
    std::size_t n_cells = 400;

    double cfl = 0.5;
    NumericalFlux scheme = NumericalFlux::engquist_osher;
    double max_dt = 1e-2;

    /// Viscosities. error_rate sweeps them (strictly decreasing); the other kinds use
    /// every entry (bv_monotone) or the first one, 0 when empty.
    std::vector<double> eps_list;

    double horizon = 0.5;
    /// Explicit snapshot times; when empty, n_snapshots uniform times on [0, horizon].
    std::vector<double> snapshots;
    std::size_t n_snapshots = 5;

    std::size_t paths = 64;
    std::uint64_t seed = 1;
    std::size_t threads = 1;

    SweepKind sweep = SweepKind::none;
    std::vector<double> sweep_values;

    std::optional<double> phi_radius;
    double phi_decay = 1.0;

    std::optional<double> xi;
    std::vector<double> k_values{-1.0, 0.0, 1.0};
    double entropy_tol_factor = 1.0;
    bool inject_expansion_shock = false;
    std::optional<double> psi_t_center;
    std::optional<double> psi_t_halfwidth;
    std::optional<double> psi_x_center;
    std::optional<double> psi_x_halfwidth;

    double u_lo = -8.0;
    double u_hi = 8.0;
    std::size_t n_u = 1601;

    std::optional<double> delta_min;
    std::optional<double> delta_max;
    std::optional<double> modulus_radius;
    double besov_mu = 0.75;

    std::optional<double> slope_min;
    std::optional<double> slope_max;
    double bv_slack = 0.05;
    double max_rel_stderr = 0.2;
    double rate_min = 0.0;
    double rate_max = 1.0;

    bool self_reference = false;

    bool operator==(const ExperimentConfig&) const = default;

    Grid1D grid() const { return Grid1D(x_min, x_max, n_cells); }
    /// Explicit snapshots or the uniform default, always including the horizon.
    std::vector<double> snapshot_times() const;
};

/// Parses the `key = value` format. `source` names the input in error messages.
/// Throws ConfigError with "source:line: ..." locations.
ExperimentConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Canonical text form; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

/// Cross-field checks: presets exist, eps list ordering, ensemble size, dataset and
/// noise requirements per kind, assumption spot-checks. Throws ConfigError.
/// Returns warnings that do not block a run.
std::vector<std::string> validate(const ExperimentConfig& cfg);

/// Documentation of every accepted key, for `levy-scl presets`.
std::string config_schema();

}  // namespace levy_scl
