#pragma once

// Two-photon path bookkeeping and coincidence rates for the double-pass
// interferometer: a cw pump drives collinear downconversion, signal and
// idler retrace either the short route or the mirror route, and the two
// indistinguishable alternatives interfere.

#include <cstdint>

namespace gpf::twophoton {

/// Path lengths (m) and phases (rad) of the two interfering alternatives.
/// Subscript 1: signal/idler reflect off their mirrors; subscript 2: the
/// pump reflects instead.  Lengths are finite and non-negative.
struct TwoPhotonPaths {
    double l_s1 = 0.0, l_i1 = 0.0, l_p1 = 0.0;
    double l_s2 = 0.0, l_i2 = 0.0, l_p2 = 0.0;
    double phi_s1 = 0.0, phi_i1 = 0.0, phi_p1 = 0.0;
    double phi_s2 = 0.0, phi_i2 = 0.0, phi_p2 = 0.0;
};

/// Effective path differences controlling the interference.
struct PathDeltas {
    double delta_l = 0.0;       ///< (l_s1 + l_i1)/2 + l_p1 - (l_s2 + l_i2)/2 - l_p2
    double delta_l_prime = 0.0; ///< (l_s1 - l_i1) - (l_s2 - l_i2)
    double delta_phi = 0.0;     ///< (phi_s1 + phi_i1 + phi_p1) - (phi_s2 + phi_i2 + phi_p2)
};

enum class EnvelopeShape { gaussian };

/// Spectral model of the source.  Correlation envelopes are Gaussian with
/// FWHM equal to the corresponding coherence length.
struct SourceModel {
    double k0;                     ///< mean pump vacuum wavevector, 1/m
    double pump_coherence_length;  ///< m
    double si_coherence_length;    ///< signal-idler correlation length, m
    EnvelopeShape envelope_shape;

    /// 363.8 nm pump, 5 cm pump coherence, 100 um signal-idler correlation.
    SourceModel();
    /// Throws std::invalid_argument unless k0 > 0 and both lengths > 0.
    SourceModel(double k0_, double pump_coherence_length_,
                double si_coherence_length_,
                EnvelopeShape shape = EnvelopeShape::gaussian);
};

/// One operating point of the apparatus.
struct SetupConfig {
    double x_s = 0.0;    ///< signal mirror displacement from balance, m
    double x_i = 0.0;    ///< idler mirror displacement from balance, m
    double beta_s = 0.0; ///< rotation of the second signal quarter-wave plate, rad
    double beta_i = 0.0; ///< rotation of the second idler quarter-wave plate, rad
    SourceModel source;
    double rate_constant = 18.0;    ///< C, coincidences/s at unit bracket
    double visibility_factor = 0.77;

    /// Throws std::invalid_argument unless rate_constant > 0,
    /// 0 <= visibility_factor <= 1, and all fields are finite.
    void validate() const;
};

/// Exact path-difference reduction of TwoPhotonPaths.
PathDeltas deltas(const TwoPhotonPaths& p);

/// Builds the two alternatives for a setup: a balanced 0.15 m arm plus the
/// mirror displacements, geometric phases phi_s1 = 2*beta_s and
/// phi_i1 = 2*beta_i obtained by propagating H through the actual
/// double-pass loop, and the pump-mirror reflection booked as phi_p2 = -pi.
/// Resulting deltas: (x_s + x_i, 2*x_s - 2*x_i, 2*beta_s + 2*beta_i + pi),
/// the phase modulo 2*pi.
TwoPhotonPaths paths_from_setup(const SetupConfig& config);

/// Pump correlation envelope gamma(delta_l); gamma(0) = 1, even,
/// gamma(+-FWHM/2) = 1/2.
double gamma_pump(double delta_l, const SourceModel& source);

/// Signal-idler correlation envelope gamma'(delta_l_prime); same shape.
double gamma_si(double delta_l_prime, const SourceModel& source);

/// Full interference law:
///   C * [1 + v * gamma(dL) * gamma'(dL') * cos(k0*dL + dphi)],
/// evaluated on paths_from_setup(config).  Always in [0, 2C].
double coincidence_rate(const SetupConfig& config);

/// Short-displacement reduction:
///   C * {1 - v * cos[k0*(x_s + x_i) + 2*beta_s + 2*beta_i]}.
/// Agrees with coincidence_rate within 0.1% of C whenever
/// |dL| < pump_coherence_length/100 and |dL'| < si_coherence_length/100.
double reduced_rate(const SetupConfig& config);

} // namespace gpf::twophoton
