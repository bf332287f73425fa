#include <doctest.h>

#include <filesystem>
#include <string>

#include "levy_scl/errors.hpp"
#include "levy_scl/experiment_config.hpp"

using namespace levy_scl;

namespace {

const std::string kMinimal = R"(experiment.kind = bv_monotone
grid.x_min = -2
grid.x_max = 2
grid.n_cells = 64
time.horizon = 0.25
initial.kind = box
flux.kind = burgers
)";

std::string error_of(const std::string& text) {
    try {
        parse_config_text(text, "t.cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const auto cfg = parse_config_text(kMinimal);
    CHECK(cfg.kind == ExperimentKind::bv_monotone);
    CHECK(cfg.n_cells == 64);
    CHECK(cfg.x_min == -2.0);
    CHECK(cfg.horizon == 0.25);
    CHECK(cfg.u.initial.kind == "box");
    CHECK(!cfg.v.has_value());
    CHECK(validate(cfg).empty());
    const auto times = cfg.snapshot_times();
    CHECK(times.front() == 0.0);
    CHECK(times.back() == 0.25);
}

TEST_CASE("serialize round trip") {
    const std::string text = kMinimal + R"(viscosity.eps_list = 0.01, 0.005
ensemble.paths = 12
ensemble.seed = 99
measure.kind = power_law
measure.alpha = 1.3
noise.kind = linear
noise.scale = 0.1
initial.height = 0.7
v.flux.kind = burgers
v.flux.shift = 0.25
entropy.k_values = -0.5, 0.5
time.snapshots = 0.1, 0.2
)";
    const auto cfg = parse_config_text(text);
    const auto again = parse_config_text(serialize_config(cfg));
    CHECK(again == cfg);
    CHECK(serialize_config(again) == serialize_config(cfg));
}

TEST_CASE("comments and blank lines are ignored") {
    const auto cfg = parse_config_text("# header\n\n" + kMinimal + "ensemble.paths = 7   # trailing\n");
    CHECK(cfg.paths == 7);
}

TEST_CASE("errors carry line numbers") {
    SUBCASE("duplicate key names both lines") {
        const auto msg = error_of(kMinimal + "grid.n_cells = 32\n");
        CHECK(contains(msg, "t.cfg:8:"));
        CHECK(contains(msg, "duplicate key 'grid.n_cells'"));
        CHECK(contains(msg, "line 4"));
    }
    SUBCASE("unknown key") {
        const auto msg = error_of(kMinimal + "grid.cells = 32\n");
        CHECK(contains(msg, "t.cfg:8:"));
        CHECK(contains(msg, "unknown key 'grid.cells'"));
    }
    SUBCASE("malformed line") {
        const auto msg = error_of("experiment.kind bv_monotone\n" + kMinimal);
        CHECK(contains(msg, "t.cfg:1:"));
        CHECK(contains(msg, "malformed"));
    }
    SUBCASE("bad number") {
        const auto msg = error_of(kMinimal + "ensemble.paths = many\n");
        CHECK(contains(msg, "t.cfg:8:"));
        CHECK(contains(msg, "many"));
    }
    SUBCASE("unknown preset parameter") {
        const auto msg = error_of(kMinimal + "initial.widht = 2\n");
        CHECK(contains(msg, "t.cfg:8:"));
        CHECK(contains(msg, "widht"));
    }
    SUBCASE("unknown preset") {
        const auto msg = error_of("flux.kind = cubic_spline\n" + kMinimal.substr(0, kMinimal.find("flux.kind")));
        CHECK(contains(msg, "t.cfg:1:"));
        CHECK(contains(msg, "cubic_spline"));
    }
}

TEST_CASE("missing mandatory key") {
    std::string text = kMinimal;
    text.erase(text.find("time.horizon"), std::string("time.horizon = 0.25\n").size());
    const auto msg = error_of(text);
    CHECK(contains(msg, "time.horizon"));
    CHECK(contains(msg, "missing"));
}

TEST_CASE("v dataset inherits from u and resets parameters on a kind change") {
    const auto cfg = parse_config_text(kMinimal + "initial.height = 0.5\nv.initial.height = 0.75\n");
    REQUIRE(cfg.v.has_value());
    CHECK(cfg.v->initial.kind == "box");
    CHECK(cfg.v->initial.params.at("height") == 0.75);
    CHECK(cfg.u.initial.params.at("height") == 0.5);

    const auto other = parse_config_text(kMinimal + "initial.height = 0.5\nv.initial.kind = expansion\n");
    REQUIRE(other.v.has_value());
    CHECK(other.v->initial.params.count("height") == 0);
}

TEST_CASE("validation rejects inconsistent configs") {
    auto cfg = parse_config_text(kMinimal);
    SUBCASE("eps must decrease") {
        cfg.kind = ExperimentKind::error_rate;
        cfg.eps_list = {0.01, 0.02};
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("error_rate needs a viscosity list") {
        cfg.kind = ExperimentKind::error_rate;
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("continuous dependence needs a second dataset") {
        cfg.kind = ExperimentKind::continuous_dependence;
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("too few paths") {
        cfg.paths = 1;
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("tiny grid") {
        cfg.n_cells = 2;
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("besov exponent range") {
        cfg.kind = ExperimentKind::fractional_bv;
        cfg.besov_mu = 1.0;
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
}

TEST_CASE("shipped configs parse, validate and round trip") {
    const std::filesystem::path dir = LEVY_SCL_CONFIG_DIR;
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".cfg") continue;
        CAPTURE(entry.path().string());
        ++count;
        const auto cfg = parse_config(entry.path());
        CHECK_NOTHROW(validate(cfg));
        CHECK(parse_config_text(serialize_config(cfg)) == cfg);
    }
    CHECK(count >= 8);
}

TEST_CASE("schema mentions every mandatory key") {
    const auto schema = config_schema();
    for (const char* key : {"experiment.kind", "grid.n_cells", "time.horizon", "initial.kind", "flux.kind"})
        CHECK(contains(schema, key));
}
