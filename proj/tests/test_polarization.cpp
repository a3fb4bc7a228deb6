#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gpfranson/errors.hpp"
#include "gpfranson/polarization.hpp"
#include "oracles.hpp"

using namespace gpf::polarization;
using std::numbers::pi;

namespace {

StokesPoint stokes_of(const Eigen::Vector2cd& v) {
    return to_stokes(PolarizationState{v(0), v(1)});
}

Eigen::Vector2cd act(const Eigen::Matrix2cd& m, const PolarizationState& p) {
    return m * Eigen::Vector2cd(p.e_h, p.e_v);
}

oracle::V3 as_array(const StokesPoint& s) { return {s.s1, s.s2, s.s3}; }

std::vector<oracle::V3> as_arrays(const GeodesicCircuit& c) {
    std::vector<oracle::V3> out;
    for (const auto& v : c.vertices) out.push_back(as_array(v));
    return out;
}

} // namespace

TEST_CASE("retarder matrix: zero retardance is the identity") {
    const Eigen::Matrix2cd m = retarder_matrix(Retarder{0.0, 0.7});
    CHECK((m - Eigen::Matrix2cd::Identity()).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("retarder matrix matches the rotation-sandwich construction") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double delta = u(rng) * 2.0 * pi * 0.999;
        const double theta = u(rng) * pi;
        const Eigen::Matrix2cd m = retarder_matrix(Retarder{delta, theta});
        const oracle::Mat2 ref = oracle::sandwich_retarder(delta, theta);
        CHECK(std::abs(m(0, 0) - ref.a) < 1e-12);
        CHECK(std::abs(m(0, 1) - ref.b) < 1e-12);
        CHECK(std::abs(m(1, 0) - ref.c) < 1e-12);
        CHECK(std::abs(m(1, 1) - ref.d) < 1e-12);
        CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
        CHECK((m * m.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("quarter-wave plate at 45 deg turns H into an equal-weight circular state") {
    const Eigen::Matrix2cd q = retarder_matrix(Retarder::quarter_wave(pi / 4.0));
    const Eigen::Vector2cd out = act(q, PolarizationState::horizontal());
    CHECK(std::abs(out(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(out(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    const StokesPoint s = stokes_of(out);
    CHECK(s.s1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.s2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.s3 == doctest::Approx(1.0).epsilon(1e-12)); // right-circular pole
}

TEST_CASE("half-wave plate at theta maps H to a linear state at 2*theta") {
    for (double theta : {0.1, 0.35, 0.6, 1.2, 2.9}) {
        const Eigen::Matrix2cd h = retarder_matrix(Retarder::half_wave(theta));
        const StokesPoint s = stokes_of(act(h, PolarizationState::horizontal()));
        CHECK(s.s1 == doctest::Approx(std::cos(4.0 * theta)).epsilon(1e-12));
        CHECK(s.s2 == doctest::Approx(std::sin(4.0 * theta)).epsilon(1e-12));
        CHECK(s.s3 == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("fast axis is periodic modulo pi and retardance wraps into [0, 2*pi)") {
    const Retarder a(pi / 2.0, 0.3);
    const Retarder b(pi / 2.0, 0.3 + pi);
    CHECK(a.fast_axis == doctest::Approx(b.fast_axis).epsilon(1e-12));
    CHECK((retarder_matrix(a) - retarder_matrix(b)).norm() < 1e-12);
    const Retarder c(5.0 * pi, 0.0); // = pi mod 2*pi
    CHECK(c.retardance == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("propagate: a zero-retardance element leaves the phase at zero") {
    const std::vector<Element> loop{Retarder{0.0, 0.0}};
    const auto r = propagate(loop, PolarizationState::horizontal());
    CHECK(r.accumulated_phase == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(r.output.e_h - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("propagate: the double-pass loop returns H with phase 2*beta") {
    for (double beta : {0.0, pi / 8.0, pi / 4.0, 0.4, 1.1}) {
        const auto elements = double_pass_loop(beta);
        REQUIRE(elements.size() == 5);
        const auto r = propagate(elements, PolarizationState::horizontal());
        CHECK(wrap_angle(r.accumulated_phase - 2.0 * beta)
              == doctest::Approx(0.0).epsilon(1e-9));
        const StokesPoint s = to_stokes(r.output);
        CHECK(s.s1 == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(loop_phase(pi / 8.0) == doctest::Approx(pi / 4.0).epsilon(1e-9));
    CHECK(loop_phase(0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("propagate refuses orthogonal output and empty element lists") {
    const std::vector<Element> flip{Retarder::half_wave(pi / 4.0)}; // H -> V
    CHECK_THROWS_AS(propagate(flip, PolarizationState::horizontal()), gpf::PhaseUndefined);
    const std::vector<Element> empty;
    CHECK_THROWS_AS(propagate(empty, PolarizationState::horizontal()), std::invalid_argument);
}

TEST_CASE("to_stokes: cardinal states and global-phase gauge") {
    const StokesPoint h = to_stokes(PolarizationState::horizontal());
    CHECK(h.s1 == 1.0);
    CHECK(h.s2 == 0.0);
    CHECK(h.s3 == 0.0);
    const StokesPoint v = to_stokes(PolarizationState::vertical());
    CHECK(v.s1 == -1.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const auto p = PolarizationState::normalized({u(rng), u(rng)}, {u(rng), u(rng)});
        const double chi = 3.0 * u(rng);
        const auto rotated = PolarizationState{p.e_h * std::polar(1.0, chi),
                                               p.e_v * std::polar(1.0, chi)};
        const StokesPoint a = to_stokes(p);
        const StokesPoint b = to_stokes(rotated);
        CHECK(std::abs(a.s1 - b.s1) < 1e-14);
        CHECK(std::abs(a.s2 - b.s2) < 1e-14);
        CHECK(std::abs(a.s3 - b.s3) < 1e-14);
        CHECK(a.s1 * a.s1 + a.s2 * a.s2 + a.s3 * a.s3
              == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("circuit_for_loop traces H -> pole -> equator -> opposite pole") {
    const double beta = 0.3;
    const GeodesicCircuit c = circuit_for_loop(beta);
    REQUIRE(c.vertices.size() == 4);
    CHECK(c.vertices[0].s1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.vertices[1].s3 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.vertices[2].s1 == doctest::Approx(std::cos(2.0 * beta)).epsilon(1e-12));
    CHECK(c.vertices[2].s2 == doctest::Approx(std::sin(2.0 * beta)).epsilon(1e-12));
    CHECK(c.vertices[2].s3 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.vertices[3].s3 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(circuit_for_loop(pi), std::invalid_argument);
    CHECK_THROWS_AS(circuit_for_loop(-0.1), std::invalid_argument);
}

TEST_CASE("solid_angle: octant triangle, orientation, and degenerate loop") {
    const GeodesicCircuit octant{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK(solid_angle(octant) == doctest::Approx(pi / 2.0).epsilon(1e-12));
    const GeodesicCircuit reversed{{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}};
    CHECK(solid_angle(reversed) == doctest::Approx(-pi / 2.0).epsilon(1e-12));
    CHECK(geometric_phase(octant) == doctest::Approx(-pi / 4.0).epsilon(1e-12));

    // beta = 0: the path climbs to the pole and retraces; zero area.
    CHECK(std::abs(solid_angle(circuit_for_loop(0.0))) < 1e-12);
    CHECK(std::abs(geometric_phase(circuit_for_loop(0.0))) < 1e-12);
}

TEST_CASE("solid_angle rejects bad circuits") {
    const GeodesicCircuit antipodal{{{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}}};
    CHECK_THROWS_AS(solid_angle(antipodal), gpf::DegenerateEdge);
    const GeodesicCircuit two{{{1, 0, 0}, {0, 1, 0}}};
    CHECK_THROWS_AS(solid_angle(two), std::invalid_argument);
}

TEST_CASE("loop circuit encloses a lune of solid angle 4*beta") {
    const double omega = solid_angle(circuit_for_loop(pi / 4.0));
    CHECK(std::abs(std::abs(omega) - pi) < 1e-9);
    CHECK(geometric_phase(circuit_for_loop(pi / 4.0))
          == doctest::Approx(pi / 2.0).epsilon(1e-9));
    CHECK(geometric_phase(circuit_for_loop(pi / 8.0))
          == doctest::Approx(pi / 4.0).epsilon(1e-9));
}

TEST_CASE("solid_angle agrees with the turning-angle identity") {
    // Loop circuits away from the beta = 0 cusp, including the great-circle
    // configuration at beta = pi/2.
    for (int k = 1; k < 40; ++k) {
        const double beta = 0.02 + (pi - 0.04) * k / 40.0;
        const GeodesicCircuit c = circuit_for_loop(beta);
        const double impl = solid_angle(c);
        const double ref = oracle::turning_solid_angle(as_arrays(c));
        CHECK(std::abs(oracle::solid_angle_difference(impl, ref)) < 1e-9);
    }
    // Random spherical triangles with healthy separations.
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    int accepted = 0;
    while (accepted < 100) {
        oracle::V3 a = oracle::normalized({g(rng), g(rng), g(rng)});
        oracle::V3 b = oracle::normalized({g(rng), g(rng), g(rng)});
        oracle::V3 c3 = oracle::normalized({g(rng), g(rng), g(rng)});
        const double lim = 0.9;
        if (std::abs(oracle::dot(a, b)) > lim || std::abs(oracle::dot(b, c3)) > lim
            || std::abs(oracle::dot(c3, a)) > lim)
            continue;
        ++accepted;
        const GeodesicCircuit tri{{{a[0], a[1], a[2]}, {b[0], b[1], b[2]}, {c3[0], c3[1], c3[2]}}};
        const double impl = solid_angle(tri);
        const double ref = oracle::turning_solid_angle({a, b, c3});
        CHECK(std::abs(oracle::solid_angle_difference(impl, ref)) < 1e-9);
    }
}

TEST_CASE("Jones phase equals the geometric phase across the full beta range") {
    // Dense grid including beta = 0 (degenerate lune) and beta = pi/2
    // (great-circle circuit).
    for (int k = 0; k < 100; ++k) {
        const double beta = pi * k / 100.0;
        const double jones = loop_phase(beta);
        const double geo = geometric_phase(circuit_for_loop(beta));
        CHECK(std::abs(wrap_angle(jones - geo)) < 1e-9);
        CHECK(std::abs(wrap_angle(jones - 2.0 * beta)) < 1e-9);
        CHECK(std::abs(wrap_angle(geo - 2.0 * beta)) < 1e-9);
    }
}

TEST_CASE("circuit vertices stay on the unit sphere") {
    for (double beta : {0.01, 0.7, 1.5707963267948966, 2.8}) {
        for (const auto& v : circuit_for_loop(beta).vertices) {
            CHECK(v.s1 * v.s1 + v.s2 * v.s2 + v.s3 * v.s3
                  == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
