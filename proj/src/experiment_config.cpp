#include "levy_scl/experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "levy_scl/errors.hpp"
#include "levy_scl/format.hpp"

namespace levy_scl {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::error_rate: return "error_rate";
        case ExperimentKind::continuous_dependence: return "continuous_dependence";
        case ExperimentKind::bv_monotone: return "bv_monotone";
        case ExperimentKind::fractional_bv: return "fractional_bv";
        case ExperimentKind::entropy_check: return "entropy_check";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    for (auto k : {ExperimentKind::error_rate, ExperimentKind::continuous_dependence, ExperimentKind::bv_monotone,
                   ExperimentKind::fractional_bv, ExperimentKind::entropy_check})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown experiment kind '" + name + "'");
}

std::vector<double> ExperimentConfig::snapshot_times() const {
    std::vector<double> times = snapshots;
    if (times.empty()) {
        const std::size_t n = std::max<std::size_t>(n_snapshots, 2);
        for (std::size_t i = 0; i < n; ++i)
            times.push_back(i + 1 == n ? horizon : horizon * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    if (times.back() != horizon) times.push_back(horizon);
    return times;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("expected a number, got '" + s + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("expected a nonnegative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ConfigError("integer out of range: '" + s + "'");
    }
}

bool parse_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError("expected true or false, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty list element in '" + s + "'");
        out.push_back(item);
    }
    return out;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_double(item));
    return out;
}

std::vector<Atom> parse_atoms(const std::string& s) {
    std::vector<Atom> atoms;
    for (const auto& item : split_list(s)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("atoms are written mark:weight, got '" + item + "'");
        atoms.push_back({parse_double(trim(item.substr(0, colon))), parse_double(trim(item.substr(colon + 1)))});
    }
    return atoms;
}

std::string list_text(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
    return out;
}

SweepKind sweep_from_string(const std::string& s) {
    if (s == "none") return SweepKind::none;
    if (s == "noise_factor") return SweepKind::noise_factor;
    if (s == "flux_shift") return SweepKind::flux_shift;
    throw ConfigError("unknown sweep kind '" + s + "' (none | noise_factor | flux_shift)");
}

std::string to_string(SweepKind k) {
    switch (k) {
        case SweepKind::none: return "none";
        case SweepKind::noise_factor: return "noise_factor";
        case SweepKind::flux_shift: return "flux_shift";
    }
    return "none";
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

// Keys that apply to a dataset, relative to its prefix ("" or "v.").
std::map<std::string, std::function<void(Dataset&, const std::string&)>> dataset_setters() {
    return {
        {"initial.kind", [](Dataset& d, const std::string& v) { d.initial.kind = v; }},
        {"flux.kind", [](Dataset& d, const std::string& v) { d.flux.kind = v; }},
        {"noise.kind", [](Dataset& d, const std::string& v) { d.noise.kind = v; }},
        {"noise.scale", [](Dataset& d, const std::string& v) { d.noise.scale = parse_double(v); }},
        {"noise.lambda_star", [](Dataset& d, const std::string& v) { d.noise.lambda_star = parse_double(v); }},
        {"noise.x_dependence", [](Dataset& d, const std::string& v) { d.noise.x_dependence = v; }},
        {"noise.bump_center", [](Dataset& d, const std::string& v) { d.noise.bump_center = parse_double(v); }},
        {"noise.bump_width", [](Dataset& d, const std::string& v) { d.noise.bump_width = parse_double(v); }},
        {"noise.state_bound", [](Dataset& d, const std::string& v) { d.noise.state_bound = parse_double(v); }},
    };
}

std::map<std::string, Setter> global_setters() {
    return {
        {"experiment.kind", [](ExperimentConfig& c, const std::string& v) { c.kind = experiment_kind_from_string(v); }},
        {"grid.x_min", [](ExperimentConfig& c, const std::string& v) { c.x_min = parse_double(v); }},
        {"grid.x_max", [](ExperimentConfig& c, const std::string& v) { c.x_max = parse_double(v); }},
        {"grid.n_cells", [](ExperimentConfig& c, const std::string& v) { c.n_cells = parse_unsigned(v); }},
        {"solver.cfl", [](ExperimentConfig& c, const std::string& v) { c.cfl = parse_double(v); }},
        {"solver.flux", [](ExperimentConfig& c, const std::string& v) { c.scheme = numerical_flux_from_string(v); }},
        {"solver.max_dt", [](ExperimentConfig& c, const std::string& v) { c.max_dt = parse_double(v); }},
        {"viscosity.eps_list", [](ExperimentConfig& c, const std::string& v) { c.eps_list = parse_list(v); }},
        {"time.horizon", [](ExperimentConfig& c, const std::string& v) { c.horizon = parse_double(v); }},
        {"time.snapshots", [](ExperimentConfig& c, const std::string& v) { c.snapshots = parse_list(v); }},
        {"time.n_snapshots", [](ExperimentConfig& c, const std::string& v) { c.n_snapshots = parse_unsigned(v); }},
        {"ensemble.paths", [](ExperimentConfig& c, const std::string& v) { c.paths = parse_unsigned(v); }},
        {"ensemble.seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_unsigned(v); }},
        {"ensemble.threads", [](ExperimentConfig& c, const std::string& v) { c.threads = parse_unsigned(v); }},
        {"measure.kind", [](ExperimentConfig& c, const std::string& v) { c.measure.kind = v; }},
        {"measure.atoms", [](ExperimentConfig& c, const std::string& v) { c.measure.atoms = parse_atoms(v); }},
        {"measure.alpha", [](ExperimentConfig& c, const std::string& v) { c.measure.alpha = parse_double(v); }},
        {"measure.scale", [](ExperimentConfig& c, const std::string& v) { c.measure.scale = parse_double(v); }},
        {"measure.z_max", [](ExperimentConfig& c, const std::string& v) { c.measure.z_max = parse_double(v); }},
        {"measure.two_sided", [](ExperimentConfig& c, const std::string& v) { c.measure.two_sided = parse_bool(v); }},
        {"measure.cut", [](ExperimentConfig& c, const std::string& v) { c.measure.cut = parse_double(v); }},
        {"sweep.kind", [](ExperimentConfig& c, const std::string& v) { c.sweep = sweep_from_string(v); }},
        {"sweep.values", [](ExperimentConfig& c, const std::string& v) { c.sweep_values = parse_list(v); }},
        {"phi.radius", [](ExperimentConfig& c, const std::string& v) { c.phi_radius = parse_double(v); }},
        {"phi.decay", [](ExperimentConfig& c, const std::string& v) { c.phi_decay = parse_double(v); }},
        {"entropy.xi", [](ExperimentConfig& c, const std::string& v) { c.xi = parse_double(v); }},
        {"entropy.k_values", [](ExperimentConfig& c, const std::string& v) { c.k_values = parse_list(v); }},
        {"entropy.tol_factor", [](ExperimentConfig& c, const std::string& v) { c.entropy_tol_factor = parse_double(v); }},
        {"entropy.inject_expansion_shock",
         [](ExperimentConfig& c, const std::string& v) { c.inject_expansion_shock = parse_bool(v); }},
        {"entropy.psi_t_center", [](ExperimentConfig& c, const std::string& v) { c.psi_t_center = parse_double(v); }},
        {"entropy.psi_t_halfwidth",
         [](ExperimentConfig& c, const std::string& v) { c.psi_t_halfwidth = parse_double(v); }},
        {"entropy.psi_x_center", [](ExperimentConfig& c, const std::string& v) { c.psi_x_center = parse_double(v); }},
        {"entropy.psi_x_halfwidth",
         [](ExperimentConfig& c, const std::string& v) { c.psi_x_halfwidth = parse_double(v); }},
        {"distance.u_range",
         [](ExperimentConfig& c, const std::string& v) {
             const auto r = parse_list(v);
             if (r.size() != 2) throw ConfigError("distance.u_range takes two numbers: lo, hi");
             c.u_lo = r[0];
             c.u_hi = r[1];
         }},
        {"distance.n_u", [](ExperimentConfig& c, const std::string& v) { c.n_u = parse_unsigned(v); }},
        {"modulus.delta_min", [](ExperimentConfig& c, const std::string& v) { c.delta_min = parse_double(v); }},
        {"modulus.delta_max", [](ExperimentConfig& c, const std::string& v) { c.delta_max = parse_double(v); }},
        {"modulus.radius", [](ExperimentConfig& c, const std::string& v) { c.modulus_radius = parse_double(v); }},
        {"besov.mu", [](ExperimentConfig& c, const std::string& v) { c.besov_mu = parse_double(v); }},
        {"verdict.slope_min", [](ExperimentConfig& c, const std::string& v) { c.slope_min = parse_double(v); }},
        {"verdict.slope_max", [](ExperimentConfig& c, const std::string& v) { c.slope_max = parse_double(v); }},
        {"verdict.bv_slack", [](ExperimentConfig& c, const std::string& v) { c.bv_slack = parse_double(v); }},
        {"verdict.max_rel_stderr", [](ExperimentConfig& c, const std::string& v) { c.max_rel_stderr = parse_double(v); }},
        {"verdict.rate_min", [](ExperimentConfig& c, const std::string& v) { c.rate_min = parse_double(v); }},
        {"verdict.rate_max", [](ExperimentConfig& c, const std::string& v) { c.rate_max = parse_double(v); }},
        {"reference.mode",
         [](ExperimentConfig& c, const std::string& v) {
             if (v == "scheme") c.self_reference = false;
             else if (v == "self") c.self_reference = true;
             else throw ConfigError("reference.mode must be scheme or self, got '" + v + "'");
         }},
    };
}

struct Entry {
    std::string key;
    std::string value;
    int line;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// "initial.height" -> ("initial", "height") when it names a preset parameter.
std::optional<std::pair<std::string, std::string>> preset_param_key(const std::string& key) {
    for (const std::string family : {"initial", "flux"}) {
        const std::string prefix = family + ".";
        if (starts_with(key, prefix) && key != family + ".kind") return std::make_pair(family, key.substr(prefix.size()));
    }
    return std::nullopt;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& source) {
    std::vector<Entry> entries;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    auto where = [&](int line) { return source + ":" + std::to_string(line) + ": "; };
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where(line_no) + "malformed line, expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key.find_first_of(" \t") != std::string::npos)
            throw ConfigError(where(line_no) + "malformed key '" + key + "'");
        if (value.empty()) throw ConfigError(where(line_no) + "missing value for '" + key + "'");
        if (auto it = seen.find(key); it != seen.end())
            throw ConfigError(where(line_no) + "duplicate key '" + key + "' (first set on line " +
                              std::to_string(it->second) + ")");
        seen[key] = line_no;
        entries.push_back({key, value, line_no});
    }

    for (const std::string mandatory :
         {"experiment.kind", "grid.x_min", "grid.x_max", "grid.n_cells", "time.horizon", "initial.kind", "flux.kind"})
        if (!seen.count(mandatory)) throw ConfigError(source + ": missing mandatory key '" + mandatory + "'");

    const auto globals = global_setters();
    const auto per_dataset = dataset_setters();
    ExperimentConfig cfg;
    cfg.u.initial = {"", {}};
    cfg.u.flux = {"", {}};

    auto apply_dataset = [&](Dataset& d, const Entry& e, const std::string& rel) -> bool {
        if (auto it = per_dataset.find(rel); it != per_dataset.end()) {
            it->second(d, e.value);
            return true;
        }
        if (auto p = preset_param_key(rel)) {
            auto& spec = p->first == "initial" ? d.initial : d.flux;
            spec.params[p->second] = parse_double(e.value);
            return true;
        }
        return false;
    };

    bool has_v = false;
    for (const auto& e : entries) {
        try {
            if (starts_with(e.key, "v.")) {
                has_v = true;
                continue;
            }
            if (auto it = globals.find(e.key); it != globals.end()) {
                it->second(cfg, e.value);
            } else if (!apply_dataset(cfg.u, e, e.key)) {
                throw ConfigError("unknown key '" + e.key + "'");
            }
        } catch (const ConfigError& err) {
            throw ConfigError(where(e.line) + err.what());
        }
    }
    if (has_v) {
        Dataset v = cfg.u;
        // A new kind resets the preset's parameters inherited from u.
        for (const auto& e : entries) {
            if (e.key == "v.initial.kind" && e.value != v.initial.kind) v.initial.params.clear();
            if (e.key == "v.flux.kind" && e.value != v.flux.kind) v.flux.params.clear();
        }
        for (const auto& e : entries) {
            if (!starts_with(e.key, "v.")) continue;
            try {
                if (!apply_dataset(v, e, e.key.substr(2))) throw ConfigError("unknown key '" + e.key + "'");
            } catch (const ConfigError& err) {
                throw ConfigError(where(e.line) + err.what());
            }
        }
        cfg.v = v;
    }

    // Preset parameter names are checked once the kinds are known.
    auto check_preset = [&](const std::string& prefix, const std::string& family, const PresetSpec& spec) {
        const PresetInfo* info = find_preset(family, spec.kind);
        const int kind_line = seen.count(prefix + family + ".kind") ? seen.at(prefix + family + ".kind")
                                                                    : seen.at(family + ".kind");
        if (!info) throw ConfigError(where(kind_line) + "unknown " + family + " preset '" + spec.kind + "'");
        for (const auto& [param, value] : spec.params) {
            bool known = false;
            for (const auto& d : info->defaults) known = known || d.first == param;
            if (!known) {
                const std::string key = prefix + family + "." + param;
                const int line = seen.count(key) ? seen.at(key) : seen.at(family + "." + param);
                throw ConfigError(where(line) + "'" + param + "' is not a parameter of " + family + " preset '" +
                                  spec.kind + "'");
            }
        }
    };
    check_preset("", "initial", cfg.u.initial);
    check_preset("", "flux", cfg.u.flux);
    if (cfg.v) {
        check_preset("v.", "initial", cfg.v->initial);
        check_preset("v.", "flux", cfg.v->flux);
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

namespace {

void write_dataset(std::ostream& os, const Dataset& d, const std::string& prefix) {
    os << prefix << "initial.kind = " << d.initial.kind << '\n';
    for (const auto& [k, v] : d.initial.params) os << prefix << "initial." << k << " = " << format_double(v) << '\n';
    os << prefix << "flux.kind = " << d.flux.kind << '\n';
    for (const auto& [k, v] : d.flux.params) os << prefix << "flux." << k << " = " << format_double(v) << '\n';
    os << prefix << "noise.kind = " << d.noise.kind << '\n';
    os << prefix << "noise.scale = " << format_double(d.noise.scale) << '\n';
    if (d.noise.lambda_star) os << prefix << "noise.lambda_star = " << format_double(*d.noise.lambda_star) << '\n';
    os << prefix << "noise.x_dependence = " << d.noise.x_dependence << '\n';
    os << prefix << "noise.bump_center = " << format_double(d.noise.bump_center) << '\n';
    os << prefix << "noise.bump_width = " << format_double(d.noise.bump_width) << '\n';
    os << prefix << "noise.state_bound = " << format_double(d.noise.state_bound) << '\n';
}

void write_opt(std::ostream& os, const char* key, const std::optional<double>& v) {
    if (v) os << key << " = " << format_double(*v) << '\n';
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "experiment.kind = " << to_string(c.kind) << '\n';
    os << "grid.x_min = " << format_double(c.x_min) << '\n';
    os << "grid.x_max = " << format_double(c.x_max) << '\n';
    os << "grid.n_cells = " << c.n_cells << '\n';
    os << "solver.cfl = " << format_double(c.cfl) << '\n';
    os << "solver.flux = " << to_string(c.scheme) << '\n';
    os << "solver.max_dt = " << format_double(c.max_dt) << '\n';
    if (!c.eps_list.empty()) os << "viscosity.eps_list = " << list_text(c.eps_list) << '\n';
    os << "time.horizon = " << format_double(c.horizon) << '\n';
    if (!c.snapshots.empty()) os << "time.snapshots = " << list_text(c.snapshots) << '\n';
    os << "time.n_snapshots = " << c.n_snapshots << '\n';
    os << "ensemble.paths = " << c.paths << '\n';
    os << "ensemble.seed = " << c.seed << '\n';
    os << "ensemble.threads = " << c.threads << '\n';
    os << "measure.kind = " << c.measure.kind << '\n';
    if (!c.measure.atoms.empty()) {
        os << "measure.atoms = ";
        for (std::size_t i = 0; i < c.measure.atoms.size(); ++i)
            os << (i ? ", " : "") << format_double(c.measure.atoms[i].mark) << ':'
               << format_double(c.measure.atoms[i].weight);
        os << '\n';
    }
    os << "measure.alpha = " << format_double(c.measure.alpha) << '\n';
    os << "measure.scale = " << format_double(c.measure.scale) << '\n';
    os << "measure.z_max = " << format_double(c.measure.z_max) << '\n';
    os << "measure.two_sided = " << (c.measure.two_sided ? "true" : "false") << '\n';
    write_opt(os, "measure.cut", c.measure.cut);
    write_dataset(os, c.u, "");
    if (c.v) write_dataset(os, *c.v, "v.");
    os << "sweep.kind = " << to_string(c.sweep) << '\n';
    if (!c.sweep_values.empty()) os << "sweep.values = " << list_text(c.sweep_values) << '\n';
    write_opt(os, "phi.radius", c.phi_radius);
    os << "phi.decay = " << format_double(c.phi_decay) << '\n';
    write_opt(os, "entropy.xi", c.xi);
    if (!c.k_values.empty()) os << "entropy.k_values = " << list_text(c.k_values) << '\n';
    os << "entropy.tol_factor = " << format_double(c.entropy_tol_factor) << '\n';
    os << "entropy.inject_expansion_shock = " << (c.inject_expansion_shock ? "true" : "false") << '\n';
    write_opt(os, "entropy.psi_t_center", c.psi_t_center);
    write_opt(os, "entropy.psi_t_halfwidth", c.psi_t_halfwidth);
    write_opt(os, "entropy.psi_x_center", c.psi_x_center);
    write_opt(os, "entropy.psi_x_halfwidth", c.psi_x_halfwidth);
    os << "distance.u_range = " << format_double(c.u_lo) << ", " << format_double(c.u_hi) << '\n';
    os << "distance.n_u = " << c.n_u << '\n';
    write_opt(os, "modulus.delta_min", c.delta_min);
    write_opt(os, "modulus.delta_max", c.delta_max);
    write_opt(os, "modulus.radius", c.modulus_radius);
    os << "besov.mu = " << format_double(c.besov_mu) << '\n';
    write_opt(os, "verdict.slope_min", c.slope_min);
    write_opt(os, "verdict.slope_max", c.slope_max);
    os << "verdict.bv_slack = " << format_double(c.bv_slack) << '\n';
    os << "verdict.max_rel_stderr = " << format_double(c.max_rel_stderr) << '\n';
    os << "verdict.rate_min = " << format_double(c.rate_min) << '\n';
    os << "verdict.rate_max = " << format_double(c.rate_max) << '\n';
    os << "reference.mode = " << (c.self_reference ? "self" : "scheme") << '\n';
    return os.str();
}

std::vector<std::string> validate(const ExperimentConfig& c) {
    std::vector<std::string> warnings;
    if (c.n_cells < 3) throw ConfigError("grid.n_cells must be at least 3");
    if (!(c.x_max > c.x_min)) throw ConfigError("grid.x_max must exceed grid.x_min");
    if (!(c.horizon > 0.0)) throw ConfigError("time.horizon must be positive");
    for (double t : c.snapshots)
        if (t < 0.0 || t > c.horizon) throw ConfigError("time.snapshots must lie in [0, time.horizon]");
    if (c.paths < 2) throw ConfigError("ensemble.paths must be at least 2");
    if (c.threads < 1) throw ConfigError("ensemble.threads must be at least 1");
    for (double e : c.eps_list)
        if (!(e >= 0.0)) throw ConfigError("viscosity.eps_list entries must be >= 0");
    for (std::size_t i = 1; i < c.eps_list.size(); ++i)
        if (!(c.eps_list[i] < c.eps_list[i - 1])) throw ConfigError("viscosity.eps_list must be strictly decreasing");

    SolverConfig sc;
    sc.epsilon = c.eps_list.empty() ? 0.0 : c.eps_list.front();
    sc.cfl = c.cfl;
    sc.max_dt = c.max_dt;
    sc.scheme = c.scheme;
    sc.snapshot_times = c.snapshot_times();
    validate(sc);

    const Grid1D grid = c.grid();
    auto check_dataset = [&](const Dataset& d, const std::string& prefix) {
        make_initial_field(grid, d.initial);
        const FluxModel flux = make_flux(d.flux);
        if (c.scheme != NumericalFlux::lax_friedrichs && !flux.convex)
            throw ConfigError(prefix + "flux.kind: " + to_string(c.scheme) + " needs a convex flux");
        const JumpCoefficient coeff = make_noise(d.noise);
        Rng rng = SeedDerivation(c.seed).stream(0, StreamPurpose::calibration);
        const AssumptionCheck check =
            check_assumptions(coeff, rng, 2000, c.x_min, c.x_max, std::min(coeff.state_bound, 100.0), 4.0);
        if (!check.holds())
            throw ConfigError(prefix + "noise: Lipschitz/growth bounds violated on sampled triples (ratio " +
                              std::to_string(std::max(check.worst_lipschitz_ratio, check.worst_growth_ratio)) + ")");
        return coeff;
    };
    const JumpCoefficient cu = check_dataset(c.u, "");
    make_measure(c.measure);
    if (c.v) check_dataset(*c.v, "v.");

    switch (c.kind) {
        case ExperimentKind::error_rate:
            if (c.eps_list.empty()) throw ConfigError("error_rate needs viscosity.eps_list");
            break;
        case ExperimentKind::continuous_dependence: {
            if (!c.v) throw ConfigError("continuous_dependence requires a second dataset (v.* keys)");
            if (cu.x_dependent || make_noise(c.v->noise).x_dependent)
                throw ConfigError("continuous_dependence requires x-independent noise in both datasets");
            if (c.sweep != SweepKind::none && c.sweep_values.size() < 2)
                throw ConfigError("sweep.values needs at least two entries");
            break;
        }
        case ExperimentKind::bv_monotone:
            if (cu.x_dependent) throw ConfigError("bv_monotone requires x-independent noise");
            break;
        case ExperimentKind::fractional_bv:
            if (!cu.x_dependent)
                warnings.push_back("fractional_bv with x-independent noise degenerates to the BV case");
            if (!(c.besov_mu > 0.0 && c.besov_mu < 1.0)) throw ConfigError("besov.mu must lie in (0, 1)");
            break;
        case ExperimentKind::entropy_check:
            if (c.k_values.empty()) throw ConfigError("entropy.k_values must not be empty");
            break;
    }
    return warnings;
}

std::string config_schema() {
    return R"(Config format: one `key = value` per line, `#` starts a comment, lists are comma separated.

experiment.kind        error_rate | continuous_dependence | bv_monotone | fractional_bv | entropy_check  (required)
grid.x_min, grid.x_max, grid.n_cells                                                                    (required)
solver.cfl             Courant number in (0, 1]                              default 0.5
solver.flux            engquist_osher | godunov | lax_friedrichs             default engquist_osher
solver.max_dt          upper bound on the time step                          default 0.01
viscosity.eps_list     viscosities, strictly decreasing
time.horizon           final time                                                                        (required)
time.snapshots         explicit snapshot times; otherwise time.n_snapshots uniform times (default 5)
ensemble.paths         Monte Carlo paths M >= 2                              default 64
ensemble.seed          master seed                                           default 1
ensemble.threads       worker threads (results do not depend on it)          default 1
measure.kind           atomic | power_law                                    default atomic
measure.atoms          mark:weight, ...                                      (atomic)
measure.alpha, measure.scale, measure.z_max, measure.two_sided              (power_law)
measure.cut            smallest simulated jump; default: smallest atom, or the power-law cut whose
                       neglected variance is 1e-4 of the retained one
initial.kind           initial-data preset, initial.<param> sets its parameters                          (required)
flux.kind              flux preset, flux.<param> sets its parameters                                     (required)
noise.kind             zero | linear: eta = scale * u * min(|z|, 1)
noise.scale, noise.lambda_star
noise.x_dependence     none | bump: eta additionally multiplied by exp(-(x - bump_center)^2 / (2 bump_width^2))
noise.bump_center, noise.bump_width, noise.state_bound
v.<any dataset key>    second dataset (copy of the first, then overridden)
sweep.kind             none | noise_factor (sigma = (1 + c) eta) | flux_shift (G = F + c u)
sweep.values           perturbation sizes c
phi.radius, phi.decay  weight phi(x) = 1 on |x| <= R, exp(-C(|x| - R)) beyond
entropy.xi             smoothing radius of beta_xi                           default 4 dx
entropy.k_values       Kruzkov constants                                     default -1, 0, 1
entropy.tol_factor     residual tolerance c in c (dx + 1/sqrt(M))            default 1
entropy.inject_expansion_shock   replace the ensemble by a standing expansion shock
entropy.psi_t_center, entropy.psi_t_halfwidth, entropy.psi_x_center, entropy.psi_x_halfwidth
distance.u_range       lo, hi for the sup in the noise distance              default -8, 8
distance.n_u           grid points for that sup                              default 1601
modulus.delta_min, modulus.delta_max, modulus.radius                         default 2 dx, 64 dx
besov.mu               Besov exponent in (0, 1)                              default 0.75
verdict.slope_min, verdict.slope_max, verdict.bv_slack, verdict.max_rel_stderr,
verdict.rate_min, verdict.rate_max
reference.mode         scheme (eps = 0 run) | self (smallest eps run)        default scheme
)";
}

}  // namespace levy_scl
