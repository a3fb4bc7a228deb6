#pragma once

// Jones calculus on the (e_h, e_v) basis and circuit geometry on the
// Poincare sphere.
//
// Conventions (these fix every sign in the package):
//  - Retarders are unit-determinant (SU(2)): the fast axis advances by
//    +delta/2 and the slow axis by -delta/2.
//  - Stokes components: s1 = |e_h|^2 - |e_v|^2, s2 = 2 Re(e_h* e_v),
//    s3 = 2 Im(e_h* e_v).  A quarter-wave plate at 45 deg maps H to the
//    s3 = +1 pole (that state is called right-circular here).
//  - solid_angle() is positive for circuits traversed counterclockwise as
//    seen from outside the sphere; geometric_phase() is minus half of it,
//    so the double-pass waveplate loop below acquires phase +2*beta.

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace gpf::polarization {

using complexd = std::complex<double>;

/// Transverse field amplitudes on the horizontal/vertical basis.
/// States produced by this module have |e_h|^2 + |e_v|^2 = 1 (within 1e-12).
struct PolarizationState {
    complexd e_h{1.0, 0.0};
    complexd e_v{0.0, 0.0};

    static PolarizationState horizontal() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static PolarizationState vertical() { return {{0.0, 0.0}, {1.0, 0.0}}; }
    /// Normalizes (eh, ev); throws std::invalid_argument on the zero vector.
    static PolarizationState normalized(complexd eh, complexd ev);

    double norm() const { return std::sqrt(std::norm(e_h) + std::norm(e_v)); }
};

/// Linear retarder. retardance is stored in [0, 2*pi), fast_axis modulo pi
/// (a fast axis at theta + pi is the same physical plate).
struct Retarder {
    double retardance = 0.0;
    double fast_axis = 0.0;

    Retarder() = default;
    Retarder(double retardance_, double fast_axis_);

    static Retarder quarter_wave(double fast_axis_);
    static Retarder half_wave(double fast_axis_);
};

/// Normal-incidence mirror: identity on (e_h, e_v).  Its reflection phase is
/// a path-bookkeeping constant, not part of the polarization geometry.
struct Mirror {};

using Element = std::variant<Retarder, Mirror>;

/// Point on the Poincare sphere; unit norm within 1e-12 for outputs of
/// to_stokes on normalized states.
struct StokesPoint {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

/// Closed vertex cycle joined by minor-arc geodesics.  Valid circuits have
/// >= 3 vertices and no consecutive antipodal pair.
struct GeodesicCircuit {
    std::vector<StokesPoint> vertices;
};

struct PropagationResult {
    PolarizationState output;
    /// arg<input|output>, in (-pi, pi].
    double accumulated_phase = 0.0;
};

/// Jones matrix of a retarder; det = 1 within 1e-12.
Eigen::Matrix2cd retarder_matrix(const Retarder& r);

/// Jones matrix of any element (mirror -> identity).
Eigen::Matrix2cd element_matrix(const Element& e);

/// Applies elements in list order to the input state.
/// Throws PhaseUndefined if the output is orthogonal to the input, and
/// std::invalid_argument on an empty element list.
PropagationResult propagate(std::span<const Element> elements,
                            const PolarizationState& input);

/// Global-phase invariant map to the Poincare sphere.
StokesPoint to_stokes(const PolarizationState& p);

/// Element sequence of the double-pass loop: quarter-wave at 45 deg,
/// quarter-wave at 135 deg + beta, mirror, and back through both plates.
/// An H input returns to H with accumulated phase 2*beta.
std::vector<Element> double_pass_loop(double beta);

/// arg<H|loop(beta) H>; equals 2*beta modulo 2*pi.
double loop_phase(double beta);

/// Poincare circuit traced by an H input through double_pass_loop(beta):
/// prefixes of the element sequence mapped with to_stokes, consecutive
/// duplicates and the closing vertex dropped.  Requires beta in [0, pi).
GeodesicCircuit circuit_for_loop(double beta);

/// Signed solid angle enclosed by the circuit, in (-4*pi, 4*pi), as the sum
/// of spherical excesses of the triangulation fanned from vertex 0 (the fan
/// apex is re-seated only when a vertex is numerically antipodal to it,
/// which leaves the result unchanged modulo 4*pi).
/// Throws DegenerateEdge on consecutive antipodal vertices.
double solid_angle(const GeodesicCircuit& c);

/// Pancharatnam phase of the circuit: -solid_angle(c)/2.  Sign convention
/// chosen so that geometric_phase(circuit_for_loop(beta)) = +2*beta (mod 2*pi).
double geometric_phase(const GeodesicCircuit& c);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

} // namespace gpf::polarization
