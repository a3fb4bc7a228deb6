#include "gpfranson/twophoton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gpfranson/polarization.hpp"

namespace gpf::twophoton {

namespace {

using std::numbers::pi;

// Distance from the beamsplitter to each balanced mirror.  Any common value
// cancels in delta_l_prime and contributes a fixed offset to delta_l that the
// pump reflection path removes; it is kept non-zero so path lengths are
// physical.
constexpr double arm_length = 0.15;

double gaussian_fwhm(double x, double width) {
    const double t = x / width;
    return std::exp(-4.0 * std::numbers::ln2 * t * t);
}

double bracket(const SetupConfig& config) {
    const TwoPhotonPaths p = paths_from_setup(config);
    const PathDeltas d = deltas(p);
    return config.visibility_factor * gamma_pump(d.delta_l, config.source)
           * gamma_si(d.delta_l_prime, config.source)
           * std::cos(config.source.k0 * d.delta_l + d.delta_phi);
}

} // namespace

SourceModel::SourceModel()
    : SourceModel(2.0 * pi / 363.8e-9, 0.05, 100e-6) {}

SourceModel::SourceModel(double k0_, double pump_coherence_length_,
                         double si_coherence_length_, EnvelopeShape shape)
    : k0(k0_),
      pump_coherence_length(pump_coherence_length_),
      si_coherence_length(si_coherence_length_),
      envelope_shape(shape) {
    if (!(std::isfinite(k0) && k0 > 0.0))
        throw std::invalid_argument("k0 must be positive and finite");
    if (!(std::isfinite(pump_coherence_length) && pump_coherence_length > 0.0))
        throw std::invalid_argument("pump coherence length must be positive");
    if (!(std::isfinite(si_coherence_length) && si_coherence_length > 0.0))
        throw std::invalid_argument("signal-idler coherence length must be positive");
}

void SetupConfig::validate() const {
    const bool finite = std::isfinite(x_s) && std::isfinite(x_i)
                        && std::isfinite(beta_s) && std::isfinite(beta_i)
                        && std::isfinite(rate_constant)
                        && std::isfinite(visibility_factor);
    if (!finite) throw std::invalid_argument("setup fields must be finite");
    if (!(rate_constant > 0.0))
        throw std::invalid_argument("rate constant must be positive");
    if (visibility_factor < 0.0 || visibility_factor > 1.0)
        throw std::invalid_argument("visibility factor must lie in [0, 1]");
}

PathDeltas deltas(const TwoPhotonPaths& p) {
    PathDeltas d;
    d.delta_l = 0.5 * (p.l_s1 + p.l_i1) + p.l_p1 - 0.5 * (p.l_s2 + p.l_i2)
                - p.l_p2;
    d.delta_l_prime = (p.l_s1 - p.l_i1) - (p.l_s2 - p.l_i2);
    d.delta_phi = (p.phi_s1 + p.phi_i1 + p.phi_p1)
                  - (p.phi_s2 + p.phi_i2 + p.phi_p2);
    return d;
}

TwoPhotonPaths paths_from_setup(const SetupConfig& config) {
    config.validate();
    TwoPhotonPaths p;
    // Alternative 1: signal and idler make round trips to their mirrors.
    p.l_s1 = 2.0 * (arm_length + config.x_s);
    p.l_i1 = 2.0 * (arm_length + config.x_i);
    p.l_p1 = 0.0;
    p.phi_s1 = polarization::loop_phase(config.beta_s);
    p.phi_i1 = polarization::loop_phase(config.beta_i);
    p.phi_p1 = 0.0;
    // Alternative 2: the pump makes the round trip before downconverting.
    p.l_s2 = 0.0;
    p.l_i2 = 0.0;
    p.l_p2 = 2.0 * arm_length;
    p.phi_s2 = 0.0;
    p.phi_i2 = 0.0;
    p.phi_p2 = -pi;
    if (p.l_s1 < 0.0 || p.l_i1 < 0.0)
        throw std::invalid_argument("mirror displacement exceeds the arm length");
    return p;
}

double gamma_pump(double delta_l, const SourceModel& source) {
    return gaussian_fwhm(delta_l, source.pump_coherence_length);
}

double gamma_si(double delta_l_prime, const SourceModel& source) {
    return gaussian_fwhm(delta_l_prime, source.si_coherence_length);
}

double coincidence_rate(const SetupConfig& config) {
    return config.rate_constant * (1.0 + bracket(config));
}

double reduced_rate(const SetupConfig& config) {
    config.validate();
    const double phase = config.source.k0 * (config.x_s + config.x_i)
                         + 2.0 * config.beta_s + 2.0 * config.beta_i;
    return config.rate_constant
           * (1.0 - config.visibility_factor * std::cos(phase));
}

} // namespace gpf::twophoton
