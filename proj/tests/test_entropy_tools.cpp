#include <doctest.h>

#include <cmath>
#include <random>

#include "levy_scl/entropy_tools.hpp"
#include "levy_scl/errors.hpp"

using namespace levy_scl;

namespace {

const LevyMeasureSpec kAtom = make_atomic({{1.0, 2.0}}, 1.0);

// Independent evaluation of beta_1 by integrating the spline derivative in closed form.
double beta_unit_oracle(double r) {
    const double s = std::abs(r);
    if (s >= 1.0) return s - 3.0 / 8.0;
    return 0.75 * s * s - s * s * s * s / 8.0;
}

}  // namespace

TEST_CASE("beta_xi values") {
    for (double xi : {1e-3, 0.1, 1.0, 7.0}) {
        const EntropyFamily b(xi);
        CHECK(b.beta(0.0) == 0.0);
        CHECK(b.beta_prime(xi) == 1.0);
        CHECK(b.beta_prime(3 * xi) == 1.0);
        CHECK(b.beta_prime(-2 * xi) == -1.0);
        CHECK(b.beta(5 * xi) == doctest::Approx(5 * xi - 3.0 / 8.0 * xi));
    }
    CHECK(EntropyFamily(1.0).beta(1.0) == doctest::Approx(5.0 / 8.0));
    Rng rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 200; ++k) {
        const double r = u(rng);
        CHECK(EntropyFamily(1.0).beta(r) == doctest::Approx(beta_unit_oracle(r)).epsilon(1e-14));
        CHECK(EntropyFamily(0.25).beta(r) == doctest::Approx(0.25 * beta_unit_oracle(r / 0.25)).epsilon(1e-14));
    }
}

TEST_CASE("beta derivatives agree with finite differences") {
    const EntropyFamily b(0.3);
    for (double r : {-0.7, -0.29, -0.1, 0.0, 0.05, 0.2, 0.31, 1.0}) {
        const double h = 1e-6;
        CHECK(b.beta_prime(r) == doctest::Approx((b.beta(r + h) - b.beta(r - h)) / (2 * h)).epsilon(1e-7));
        CHECK(b.beta_second(r) == doctest::Approx((b.beta_prime(r + h) - b.beta_prime(r - h)) / (2 * h)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("beta_xi sandwich, evenness, support of the second derivative") {
    for (double xi : {0.01, 0.1, 1.0}) {
        const EntropyFamily b(xi);
        double max_second = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double r = xi * (-10.0 + 20.0 * i / 1000.0);
            CHECK(b.beta(r) <= std::abs(r));
            CHECK(b.beta(r) >= std::abs(r) - EntropyFamily::M1 * xi);
            CHECK(b.beta(r) == b.beta(-r));
            CHECK(b.beta_second(r) >= 0.0);
            if (std::abs(r) > xi) CHECK(b.beta_second(r) == 0.0);
            max_second = std::max(max_second, b.beta_second(r));
        }
        CHECK(b.beta_second(0.0) == doctest::Approx(EntropyFamily::M2 / xi).epsilon(1e-12));
        CHECK(max_second <= EntropyFamily::M2 / xi * (1 + 1e-12));
    }
}

TEST_CASE("kruzkov_flux") {
    const FluxModel f = burgers_flux();
    CHECK(kruzkov_flux(f, 0.4, 0.4) == 0.0);
    CHECK(kruzkov_flux(f, 2.0, 0.0) == doctest::Approx(2.0));
    Rng rng(1);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 100; ++k) {
        const double a = u(rng), b = u(rng);
        CHECK(kruzkov_flux(f, a, b) == kruzkov_flux(f, b, a));
    }
}

TEST_CASE("entropy_flux_beta") {
    const EntropyFluxPair lin{linear_flux(1.7), EntropyFamily(0.2)};
    const EntropyFluxPair bur{burgers_flux(), EntropyFamily(0.2)};
    CHECK(entropy_flux_beta(bur, 0.3, 0.3) == 0.0);
    Rng rng(2);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 100; ++k) {
        const double a = u(rng), b = u(rng);
        CHECK(entropy_flux_beta(lin, a, b) == doctest::Approx(1.7 * lin.family.beta(a - b)).epsilon(1e-12));
        // Kruzkov limit within M1 xi sup|F'| once |a - b| >= xi.
        if (std::abs(a - b) >= 0.2) {
            const double sup = std::max(std::abs(a), std::abs(b));
            CHECK(std::abs(entropy_flux_beta(bur, a, b) - kruzkov_flux(bur.flux, a, b)) <=
                  EntropyFamily::M1 * 0.2 * sup + 1e-12);
        }
    }
    SUBCASE("the gap to the Kruzkov flux shrinks with xi") {
        double prev = INFINITY;
        for (double xi : {0.5, 0.1, 0.02, 0.004}) {
            const EntropyFluxPair p{burgers_flux(), EntropyFamily(xi)};
            double worst = 0.0;
            Rng r2(5);
            for (int k = 0; k < 50; ++k) {
                const double a = u(r2), b = u(r2);
                worst = std::max(worst, std::abs(entropy_flux_beta(p, a, b) - kruzkov_flux(p.flux, a, b)));
            }
            CHECK(worst <= EntropyFamily::M1 * xi * 2.0 + 1e-12);
            CHECK(worst <= prev);
            prev = worst;
        }
    }
    SUBCASE("brute-force quadrature oracle") {
        const double a = 1.3, b = -0.4, xi = 0.2;
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double s = b + (a - b) * (i + 0.5) / n;
            sum += EntropyFamily(xi).beta_prime(s - b) * s;
        }
        sum *= (a - b) / n;
        CHECK(entropy_flux_beta(bur, a, b) == doctest::Approx(sum).epsilon(1e-8));
    }
}

TEST_CASE("ito_correction") {
    const EntropyFamily b1(1.0);
    CHECK(ito_correction(b1, zero_coefficient(), kAtom, 0.0, 2.0) == 0.0);

    JumpCoefficient ident = linear_coefficient(1.0);
    ident.lambda_star = 0.5;
    const auto unit = make_atomic({{1.0, 1.0}}, 1.0);
    CHECK(ito_correction(b1, ident, unit, 0.0, 2.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(std::abs(ito_correction(b1, ident, unit, 0.0, 2.0)) <= 1e-15);

    SUBCASE("nonnegative on random tuples") {
        Rng rng(10);
        std::uniform_real_distribution<double> u(-5, 5), s(-0.9, 0.9), xi(0.01, 2.0);
        const std::vector<LevyMeasureSpec> measures{kAtom, make_atomic({{-0.3, 5.0}, {2.0, 0.5}}, 0.3),
                                                    make_power_law(1.2, 1.0, 2.0, true, 0.05)};
        for (int k = 0; k < 2000; ++k) {
            const EntropyFamily fam(xi(rng));
            const auto coeff = k % 3 == 0 ? bump_coefficient(s(rng), 0.0, 1.0, 10.0) : linear_coefficient(s(rng));
            const double val = ito_correction(fam, coeff, measures[k % 3], u(rng), u(rng), u(rng));
            CHECK(val >= 0.0);
        }
    }
    SUBCASE("vanishes when the jump stays outside [-xi, xi] after shifting by k") {
        const EntropyFamily fam(0.1);
        CHECK(ito_correction(fam, linear_coefficient(0.2), kAtom, 0.0, 3.0, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
        CHECK(ito_correction(fam, linear_coefficient(0.2), kAtom, 0.0, 1.02, 1.0) > 0.0);
    }
}

TEST_CASE("noise_distance") {
    const auto a = linear_coefficient(0.2), b = linear_coefficient(0.3), c = linear_coefficient(-0.1);
    CHECK(noise_distance(a, a, kAtom, -8, 8, 1601).value == 0.0);
    const auto d = noise_distance(a, b, kAtom, -8, 8, 1601);
    CHECK(d.value == doctest::Approx(0.01 * 2 * 64.0 / 65.0).epsilon(1e-13));
    CHECK(std::abs(d.argmax_u) == 8.0);
    CHECK(noise_distance(b, a, kAtom, -8, 8, 1601).value == d.value);
    CHECK(noise_distance(a, c, kAtom, -8, 8, 1601).value <=
          2 * noise_distance(a, b, kAtom, -8, 8, 1601).value + 2 * noise_distance(b, c, kAtom, -8, 8, 1601).value);
    // Quadratic homogeneity in the gap.
    const double base = noise_distance(a, linear_coefficient(0.25), kAtom, -8, 8, 1601).value;
    for (double t : {0.5, 2.0, 3.0}) {
        const double scaled = noise_distance(a, linear_coefficient(0.2 + t * 0.05), kAtom, -8, 8, 1601).value;
        CHECK(scaled == doctest::Approx(t * t * base).epsilon(1e-12));
    }
    CHECK_THROWS_AS(noise_distance(a, bump_coefficient(0.2, 0, 1, 5), kAtom, -8, 8, 11), ContractError);
}

TEST_CASE("test functions") {
    const auto psi = TestFunction::product_bump(0.5, 0.5, 0.0, 1.0);
    CHECK(psi(0.5, 0.0) == 1.0);
    CHECK(psi(0.0, 0.0) == 0.0);
    CHECK(psi(0.5, 1.0) == 0.0);
    const double h = 1e-6;
    CHECK(psi.dt(0.3, 0.2) == doctest::Approx((psi(0.3 + h, 0.2) - psi(0.3 - h, 0.2)) / (2 * h)).epsilon(1e-6));
    CHECK(psi.dx(0.3, 0.2) == doctest::Approx((psi(0.3, 0.2 + h) - psi(0.3, 0.2 - h)) / (2 * h)).epsilon(1e-6));
    CHECK(TestFunction::zero().is_zero());
}

TEST_CASE("entropy residual") {
    const Grid1D g(-2, 2, 100);
    const double T = 0.4;
    std::vector<double> times;
    for (int i = 0; i <= 40; ++i) times.push_back(T * i / 40);
    const EntropyFluxPair pair{burgers_flux(), EntropyFamily(4 * g.dx())};
    const auto psi = TestFunction::product_bump(T / 2, T / 2, 0.0, 1.2);

    SUBCASE("zero test function gives zero") {
        Trajectory t;
        for (double s : times) t.snapshots.push_back({s, Field(g, 0.3)});
        CHECK(entropy_residual_path(t, pair, TestFunction::zero(), zero_coefficient(), kAtom, 1.0, 0.0) == 0.0);
    }
    SUBCASE("an expansion shock is detected") {
        Trajectory t;
        const Field u = Field::sample(g, [](double x) { return x < 0 ? -1.0 : 1.0; });
        for (double s : times) t.snapshots.push_back({s, u});
        CHECK(entropy_residual_path(t, pair, psi, zero_coefficient(), kAtom, 1.0, 0.0) < -0.1);
    }
    SUBCASE("the admissible standing shock is not flagged") {
        Trajectory t;
        const Field u = Field::sample(g, [](double x) { return x < 0 ? 1.0 : -1.0; });
        for (double s : times) t.snapshots.push_back({s, u});
        for (double k : {-1.0, 0.0, 1.0})
            CHECK(entropy_residual_path(t, pair, psi, zero_coefficient(), kAtom, 1.0, k) >= -0.02);
    }
    SUBCASE("scheme ensemble with jump noise") {
        const Field u0 = Field::sample(g, [](double x) { return std::abs(x) < 0.7 ? 1.0 : 0.0; });
        SolverConfig cfg;
        cfg.snapshot_times = times;
        cfg.record_jumps = true;
        const SeedDerivation seeds(3);
        std::vector<Trajectory> ens;
        for (std::size_t m = 0; m < 16; ++m) {
            Rng r = seeds.stream(m, StreamPurpose::jump_path);
            ens.push_back(solve(u0, burgers_flux(), linear_coefficient(0.2), kAtom, cfg, sample_path(kAtom, 1.0, T, r)));
        }
        const auto res = entropy_residual(ens, pair, psi, linear_coefficient(0.2), kAtom, 1.0, {-1.0, 0.0, 1.0});
        REQUIRE(res.size() == 3);
        const double tol = g.dx() + 1.0 / std::sqrt(16.0);
        for (const auto& r : res) {
            CHECK(r.n_samples == 16);
            CHECK(r.mean >= -tol);
        }
    }
    SUBCASE("support touching the boundary is a contract error") {
        Trajectory t;
        for (double s : times) t.snapshots.push_back({s, Field(g, 0.0)});
        const auto wide = TestFunction::product_bump(T / 2, T / 2, 0.0, 2.0);
        CHECK_THROWS_AS(entropy_residual({t}, pair, wide, zero_coefficient(), kAtom, 1.0, {0.0}), ContractError);
        const auto late = TestFunction::product_bump(T, T / 2, 0.0, 1.0);
        CHECK_THROWS_AS(entropy_residual({t}, pair, late, zero_coefficient(), kAtom, 1.0, {0.0}), ContractError);
    }
}

TEST_CASE("dissipation functional") {
    const Grid1D g(-1, 1, 200);
    const EntropyFamily fam(0.2);
    auto traj_of = [&](const Field& f) {
        Trajectory t;
        t.snapshots.push_back({0.0, f});
        t.snapshots.push_back({1.0, f});
        return t;
    };
    CHECK(dissipation_functional(traj_of(Field(g, 0.4)), fam, 0.1) == 0.0);
    CHECK(dissipation_functional(traj_of(Field::sample(g, [](double x) { return x < 0 ? -1.0 : 1.0; })), fam, 0.1) ==
          doctest::Approx(0.0).scale(1.0));
    // u = x: eps T sum beta''(x_i) dx approximates eps T int beta'' = eps T (beta'(xi) - beta'(-xi)) = 2 eps T.
    const double v = dissipation_functional(traj_of(Field::sample(g, [](double x) { return x; })), fam, 0.1);
    CHECK(v == doctest::Approx(0.1 * 1.0 * 2.0).epsilon(1e-2));
}

TEST_CASE("bregman matches the direct difference away from cancellation") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (double xi : {0.05, 0.7, 2.0}) {
        const levy_scl::EntropyFamily fam(xi);
        for (int i = 0; i < 5000; ++i) {
            const double r = U(rng);
            const double eta = U(rng);
            const double direct = fam.beta(r + eta) - fam.beta(r) - eta * fam.beta_prime(r);
            const double stable = fam.bregman(r, eta);
            CHECK(stable >= 0.0);
            CHECK(stable == doctest::Approx(direct).epsilon(1e-9).scale(10.0));
        }
        // quadratic behaviour for tiny increments
        const double r = 0.3 * xi;
        const double h = 1e-7 * xi;
        CHECK(fam.bregman(r, h) / (h * h) == doctest::Approx(0.5 * fam.beta_second(r)).epsilon(1e-6));
    }
}
