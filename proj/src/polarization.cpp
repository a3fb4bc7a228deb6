#include "gpfranson/polarization.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpfranson/errors.hpp"

namespace gpf::polarization {

namespace {

using std::numbers::pi;

constexpr double two_pi = 2.0 * std::numbers::pi;

double positive_mod(double x, double m) {
    double r = std::fmod(x, m);
    if (r < 0.0) r += m;
    return r;
}

using Vec3 = std::array<double, 3>;

Vec3 as_vec(const StokesPoint& p) { return {p.s1, p.s2, p.s3}; }

double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return scaled(a, 1.0 / n);
}

// Oriented solid angle of the geodesic triangle (a, b, c); unit inputs.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double num = dot(a, cross(b, c));
    const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(num, den);
}

// splitmix64; used only to derive fallback fan apexes deterministically.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// The fan apex must stay clear of every vertex's antipode or the two-argument
// arctangent in triangle_solid_angle loses all precision.
double apex_margin(const Vec3& apex, const std::vector<Vec3>& v) {
    double m = 2.0;
    for (const auto& p : v) m = std::min(m, 1.0 + dot(apex, p));
    return m;
}

Vec3 select_apex(const std::vector<Vec3>& v) {
    constexpr double enough = 1e-6;
    if (apex_margin(v[0], v) > enough) return v[0];
    for (std::size_t k = 1; k < v.size(); ++k)
        if (apex_margin(v[k], v) > enough) return v[k];
    const std::array<Vec3, 6> axes = {Vec3{1, 0, 0},  Vec3{-1, 0, 0},
                                      Vec3{0, 1, 0},  Vec3{0, -1, 0},
                                      Vec3{0, 0, 1},  Vec3{0, 0, -1}};
    for (const auto& a : axes)
        if (apex_margin(a, v) > enough) return a;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec3 mid = {v[k][0] + v[(k + 1) % v.size()][0],
                          v[k][1] + v[(k + 1) % v.size()][1],
                          v[k][2] + v[(k + 1) % v.size()][2]};
        if (norm(mid) > 1e-9 && apex_margin(normalized(mid), v) > enough)
            return normalized(mid);
    }
    for (std::uint64_t trial = 0; trial < 64; ++trial) {
        const double u = double(mix64(trial * 3 + 1) >> 11) * 0x1.0p-53;
        const double w = double(mix64(trial * 3 + 2) >> 11) * 0x1.0p-53;
        const double z = 2.0 * u - 1.0;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Vec3 cand = {r * std::cos(two_pi * w), r * std::sin(two_pi * w), z};
        if (apex_margin(cand, v) > enough) return cand;
    }
    throw DegenerateEdge("no usable fan apex for the circuit");
}

} // namespace

PolarizationState PolarizationState::normalized(complexd eh, complexd ev) {
    const double n = std::sqrt(std::norm(eh) + std::norm(ev));
    if (n == 0.0)
        throw std::invalid_argument("cannot normalize the zero polarization");
    return {eh / n, ev / n};
}

Retarder::Retarder(double retardance_, double fast_axis_)
    : retardance(positive_mod(retardance_, two_pi)),
      fast_axis(positive_mod(fast_axis_, pi)) {}

Retarder Retarder::quarter_wave(double fast_axis_) {
    return Retarder(pi / 2.0, fast_axis_);
}

Retarder Retarder::half_wave(double fast_axis_) {
    return Retarder(pi, fast_axis_);
}

Eigen::Matrix2cd retarder_matrix(const Retarder& r) {
    const double c = std::cos(r.retardance / 2.0);
    const double s = std::sin(r.retardance / 2.0);
    const double c2 = std::cos(2.0 * r.fast_axis);
    const double s2 = std::sin(2.0 * r.fast_axis);
    Eigen::Matrix2cd m;
    m(0, 0) = complexd(c, s * c2);
    m(0, 1) = complexd(0.0, s * s2);
    m(1, 0) = complexd(0.0, s * s2);
    m(1, 1) = complexd(c, -s * c2);
    return m;
}

Eigen::Matrix2cd element_matrix(const Element& e) {
    if (const auto* r = std::get_if<Retarder>(&e)) return retarder_matrix(*r);
    return Eigen::Matrix2cd::Identity();
}

PropagationResult propagate(std::span<const Element> elements,
                            const PolarizationState& input) {
    if (elements.empty())
        throw std::invalid_argument("propagate needs at least one element");
    Eigen::Vector2cd v(input.e_h, input.e_v);
    const Eigen::Vector2cd in = v;
    for (const Element& e : elements) v = element_matrix(e) * v;
    const complexd overlap = in.dot(v); // conjugates the first argument
    if (std::abs(overlap) < 1e-12)
        throw PhaseUndefined("output state is orthogonal to the input");
    return {{v(0), v(1)}, std::arg(overlap)};
}

StokesPoint to_stokes(const PolarizationState& p) {
    const complexd c = std::conj(p.e_h) * p.e_v;
    return {std::norm(p.e_h) - std::norm(p.e_v), 2.0 * c.real(), 2.0 * c.imag()};
}

std::vector<Element> double_pass_loop(double beta) {
    const Retarder first = Retarder::quarter_wave(pi / 4.0);
    const Retarder second = Retarder::quarter_wave(3.0 * pi / 4.0 + beta);
    return {first, second, Mirror{}, second, first};
}

double loop_phase(double beta) {
    const auto loop = double_pass_loop(beta);
    return propagate(loop, PolarizationState::horizontal()).accumulated_phase;
}

GeodesicCircuit circuit_for_loop(double beta) {
    if (!(beta >= 0.0 && beta < pi))
        throw std::invalid_argument("loop circuit needs beta in [0, pi)");
    const auto loop = double_pass_loop(beta);
    std::vector<StokesPoint> raw;
    raw.push_back(to_stokes(PolarizationState::horizontal()));
    PolarizationState state = PolarizationState::horizontal();
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const Eigen::Vector2cd v =
            element_matrix(loop[k]) * Eigen::Vector2cd(state.e_h, state.e_v);
        state = {v(0), v(1)};
        raw.push_back(to_stokes(state));
    }
    GeodesicCircuit c;
    for (const auto& p : raw) {
        if (!c.vertices.empty()) {
            const auto& prev = c.vertices.back();
            const Vec3 d = {p.s1 - prev.s1, p.s2 - prev.s2, p.s3 - prev.s3};
            if (norm(d) < 1e-9) continue;
        }
        c.vertices.push_back(p);
    }
    // Drop the closing vertex when the path returns to its start.
    if (c.vertices.size() > 1) {
        const auto& first = c.vertices.front();
        const auto& last = c.vertices.back();
        const Vec3 d = {last.s1 - first.s1, last.s2 - first.s2,
                        last.s3 - first.s3};
        if (norm(d) < 1e-9) c.vertices.pop_back();
    }
    return c;
}

double solid_angle(const GeodesicCircuit& c) {
    const auto& verts = c.vertices;
    if (verts.size() < 3)
        throw std::invalid_argument("a circuit needs at least three vertices");
    std::vector<Vec3> v;
    v.reserve(verts.size());
    for (const auto& p : verts) v.push_back(normalized(as_vec(p)));
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec3& a = v[k];
        const Vec3& b = v[(k + 1) % v.size()];
        if (1.0 + dot(a, b) < 1e-12)
            throw DegenerateEdge("consecutive antipodal vertices have no "
                                 "unique connecting geodesic");
    }
    const Vec3 apex = select_apex(v);
    double omega = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        omega += triangle_solid_angle(apex, v[k], v[(k + 1) % v.size()]);
    // Reduce into (-4*pi, 4*pi); the fan can wind once around the sphere.
    omega = std::remainder(omega, 8.0 * pi);
    if (omega > 4.0 * pi) omega -= 8.0 * pi;
    if (omega <= -4.0 * pi) omega += 8.0 * pi;
    return omega;
}

double geometric_phase(const GeodesicCircuit& c) {
    return wrap_angle(-0.5 * solid_angle(c));
}

double wrap_angle(double a) {
    double r = std::remainder(a, two_pi);
    if (r <= -pi) r += two_pi;
    return r;
}

} // namespace gpf::polarization
