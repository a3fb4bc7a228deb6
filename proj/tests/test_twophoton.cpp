#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gpfranson/twophoton.hpp"
#include "oracles.hpp"

using namespace gpf::twophoton;
using std::numbers::pi;

namespace {

SetupConfig base_setup() {
    SetupConfig c;
    c.rate_constant = 100.0;
    c.visibility_factor = 1.0;
    return c;
}

} // namespace

TEST_CASE("deltas: symmetric alternatives cancel") {
    TwoPhotonPaths p;
    // Dyadic lengths so the cancellation is exact in binary floating point.
    p.l_s1 = p.l_s2 = 0.5;
    p.l_i1 = p.l_i2 = 0.25;
    p.l_p1 = p.l_p2 = 0.375;
    const PathDeltas d = deltas(p);
    CHECK(d.delta_l == 0.0);
    CHECK(d.delta_l_prime == 0.0);
    CHECK(d.delta_phi == 0.0);
}

TEST_CASE("deltas: lengthening one signal path by 2a shifts dL by a and dL' by 2a") {
    const double a = 3.5e-6;
    TwoPhotonPaths p;
    p.l_s1 = 0.30 + 2.0 * a;
    p.l_s2 = 0.30;
    p.l_i1 = p.l_i2 = 0.30;
    p.l_p1 = p.l_p2 = 0.0;
    const PathDeltas d = deltas(p);
    CHECK(d.delta_l == doctest::Approx(a).epsilon(1e-12));
    CHECK(d.delta_l_prime == doctest::Approx(2.0 * a).epsilon(1e-12));
}

TEST_CASE("deltas: phases combine as (sum of 1) minus (sum of 2)") {
    TwoPhotonPaths p;
    p.phi_s1 = 0.6;
    p.phi_i1 = 0.8;
    p.phi_p2 = -pi;
    const PathDeltas d = deltas(p);
    CHECK(d.delta_phi == doctest::Approx(0.6 + 0.8 + pi).epsilon(1e-15));
}

TEST_CASE("paths_from_setup reproduces the configured displacements and phases") {
    SetupConfig c = base_setup();

    SUBCASE("balanced, plates at zero") {
        const PathDeltas d = deltas(paths_from_setup(c));
        CHECK(d.delta_l == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(d.delta_l_prime == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(d.delta_phi == doctest::Approx(pi).epsilon(1e-9));
    }
    SUBCASE("opposite mirror displacements leave dL untouched") {
        c.x_s = 10e-6;
        c.x_i = -10e-6;
        const PathDeltas d = deltas(paths_from_setup(c));
        CHECK(d.delta_l == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.delta_l_prime == doctest::Approx(40e-6).epsilon(1e-12));
    }
    SUBCASE("quarter-turn on both plates advances the phase to 2*pi") {
        c.beta_s = pi / 4.0;
        c.beta_i = pi / 4.0;
        const PathDeltas d = deltas(paths_from_setup(c));
        CHECK(d.delta_phi == doctest::Approx(2.0 * pi).epsilon(1e-9));
    }
    SUBCASE("the geometric phase comes from the loop, modulo 2*pi") {
        c.beta_s = 0.35;
        c.beta_i = 1.1;
        const PathDeltas d = deltas(paths_from_setup(c));
        CHECK(oracle::wrap2pi(d.delta_phi - (2.0 * 0.35 + 2.0 * 1.1 + pi))
              == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("path lengths stay non-negative for micron displacements") {
        c.x_s = -5e-6;
        const TwoPhotonPaths p = paths_from_setup(c);
        for (double l : {p.l_s1, p.l_i1, p.l_p1, p.l_s2, p.l_i2, p.l_p2})
            CHECK(l >= 0.0);
    }
}

TEST_CASE("correlation envelopes: unit center, FWHM at half height, even") {
    const SourceModel s;
    CHECK(gamma_pump(0.0, s) == 1.0);
    CHECK(gamma_si(0.0, s) == 1.0);
    CHECK(gamma_pump(+s.pump_coherence_length / 2.0, s)
          == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gamma_pump(-s.pump_coherence_length / 2.0, s)
          == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gamma_si(+s.si_coherence_length / 2.0, s) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gamma_si(-s.si_coherence_length / 2.0, s) == doctest::Approx(0.5).epsilon(1e-12));
    for (double z : {1e-6, 17e-6, 80e-6, 2e-4}) {
        CHECK(gamma_si(z, s) == doctest::Approx(gamma_si(-z, s)).epsilon(1e-15));
        CHECK(gamma_pump(z, s) <= 1.0);
    }
    // 40 um against the default 100 um width sits between half and full height.
    const double mid = gamma_si(40e-6, s);
    CHECK(mid > 0.5);
    CHECK(mid < 1.0);
    CHECK(mid == doctest::Approx(std::exp(-4.0 * std::log(2.0) * 0.16)).epsilon(1e-12));
}

TEST_CASE("source model validation") {
    CHECK_THROWS_AS(SourceModel(0.0, 0.05, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(SourceModel(1e7, 0.0, 1e-4), std::invalid_argument);
    CHECK_THROWS_AS(SourceModel(1e7, 0.05, 0.0), std::invalid_argument);
    const SourceModel def;
    CHECK(def.k0 == doctest::Approx(2.0 * pi / 363.8e-9).epsilon(1e-15));
    CHECK(def.pump_coherence_length == 0.05);
    CHECK(def.si_coherence_length == 100e-6);
}

TEST_CASE("setup validation") {
    SetupConfig c;
    c.rate_constant = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.rate_constant = 10.0;
    c.visibility_factor = 1.2;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.visibility_factor = -0.1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("coincidence_rate: dark and bright fringe extremes") {
    SetupConfig c = base_setup();
    // Balanced, plates at zero: the two alternatives cancel exactly.
    CHECK(coincidence_rate(c) == doctest::Approx(0.0).epsilon(1e-10));
    // Plate settings summing to a half turn put the fringe at its crest.
    c.beta_s = pi / 4.0;
    c.beta_i = pi / 4.0;
    CHECK(coincidence_rate(c)
          == doctest::Approx(2.0 * c.rate_constant).epsilon(1e-9));
}

TEST_CASE("coincidence_rate: interference dies when the pump envelope is exhausted") {
    SetupConfig c = base_setup();
    c.x_s = 0.1;
    c.x_i = 0.1; // dL = 0.2 m >> 5 cm coherence
    CHECK(coincidence_rate(c) == doctest::Approx(c.rate_constant).epsilon(1e-9));
}

TEST_CASE("rates are bounded by [0, 2C]") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        SetupConfig c;
        c.x_s = (u(rng) - 0.5) * 4e-4;
        c.x_i = (u(rng) - 0.5) * 4e-4;
        c.beta_s = u(rng) * pi;
        c.beta_i = u(rng) * pi;
        c.rate_constant = 1.0 + 200.0 * u(rng);
        c.visibility_factor = u(rng);
        for (double r : {coincidence_rate(c), reduced_rate(c)}) {
            CHECK(r >= 0.0);
            CHECK(r <= 2.0 * c.rate_constant + 1e-12);
        }
    }
}

TEST_CASE("reduced_rate: explicit law") {
    SetupConfig c = base_setup();
    CHECK(reduced_rate(c) == doctest::Approx(0.0).epsilon(1e-12));
    c.beta_s = pi / 2.0;
    CHECK(reduced_rate(c) == doctest::Approx(2.0 * c.rate_constant).epsilon(1e-12));
    c.beta_s = 0.4;
    c.beta_i = 0.9;
    c.x_s = 3e-8;
    c.x_i = -1e-8;
    c.visibility_factor = 0.77;
    const double expected = c.rate_constant
        * (1.0 - 0.77 * std::cos(c.source.k0 * (c.x_s + c.x_i) + 2.0 * c.beta_s + 2.0 * c.beta_i));
    CHECK(reduced_rate(c) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("reduced_rate traces one full fringe per 2*pi of plate phase") {
    SetupConfig c = base_setup();
    c.visibility_factor = 0.77;
    int minima = 0;
    const int n = 64;
    double prev2 = 0, prev1 = 0;
    for (int k = 0; k < n + 2; ++k) {
        c.beta_s = pi * k / n; // 2*beta_s covers [0, 2*pi]
        const double r = reduced_rate(c);
        if (k >= 2 && prev1 < prev2 && prev1 < r) ++minima;
        prev2 = prev1;
        prev1 = r;
    }
    CHECK(minima == 1);
}

TEST_CASE("geometric and dynamic phase shifts are interchangeable in the reduced law") {
    SetupConfig a = base_setup();
    SetupConfig b = base_setup();
    const double shift = 0.8; // rad
    a.beta_s = shift / 2.0;
    b.x_s = shift / b.source.k0;
    CHECK(reduced_rate(a) == doctest::Approx(reduced_rate(b)).epsilon(1e-12));
}

TEST_CASE("plate angles act modulo pi in the full rate") {
    SetupConfig a = base_setup();
    a.visibility_factor = 0.8;
    a.beta_s = 0.3;
    SetupConfig b = a;
    b.beta_s = 0.3 + pi; // same physical plate orientation
    CHECK(coincidence_rate(a) == doctest::Approx(coincidence_rate(b)).epsilon(1e-12));
}

TEST_CASE("reduced and full laws agree in the short-displacement regime") {
    SetupConfig c = base_setup(); // visibility 1: worst case
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        c.x_s = u(rng) * 0.25e-6;
        c.x_i = u(rng) * 0.25e-6; // |dL'| <= 1 um = si_coherence/100
        c.beta_s = (u(rng) + 1.0) * pi / 2.0;
        c.beta_i = (u(rng) + 1.0) * pi / 2.0;
        worst = std::max(worst,
                         std::abs(reduced_rate(c) - coincidence_rate(c)));
    }
    CHECK(worst < 1e-3 * c.rate_constant);
}

TEST_CASE("a short signal-idler correlation makes the envelope move with the mirror") {
    SetupConfig c = base_setup();
    c.source = SourceModel(c.source.k0, c.source.pump_coherence_length, 2e-6);
    // |gamma'| over a 2 um sweep of x_s collapses by far more than 10%.
    double lo = 1.0, hi = 0.0;
    for (int k = 0; k <= 20; ++k) {
        c.x_s = -1e-6 + 2e-6 * k / 20.0;
        const auto d = deltas(paths_from_setup(c));
        const double g = gamma_si(d.delta_l_prime, c.source);
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((hi - lo) / hi > 0.10);
}
