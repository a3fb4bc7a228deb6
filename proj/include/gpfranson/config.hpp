#pragma once

// Experiment configuration file: flat "key = value [unit]" lines.
//
//   # comment
//   mirrors.x_s              = 0 um
//   mirrors.x_i              = 0 um
//   waveplates.beta_s        = 0 rad        (deg also accepted)
//   waveplates.beta_i        = 0 rad
//   source.pump_wavelength   = 363.8 nm
//   source.pump_coherence_length = 5 cm
//   source.si_coherence_length   = 100 um
//   counting.rate_constant   = 18           (coincidences/s)
//   counting.dwell_time      = 5 s
//   counting.visibility_factor = 0.77
//   scan.points              = 16
//   seed                     = 12345
//
// Lengths take m/cm/mm/um/nm, angles rad/deg, times s/ms; the unit tag is
// mandatory for dimensioned keys and rejected for bare scalars.  Unknown or
// duplicate keys are errors.  All values are stored in SI base units.

#include <cstdint>
#include <string>

#include "gpfranson/montecarlo.hpp"
#include "gpfranson/twophoton.hpp"

namespace gpf::config {

struct ExperimentConfig {
    double x_s = 0.0;
    double x_i = 0.0;
    double beta_s = 0.0;
    double beta_i = 0.0;
    double pump_wavelength = 363.8e-9;
    double pump_coherence_length = 0.05;
    double si_coherence_length = 100e-6;
    double rate_constant = 18.0;
    double dwell_time = 5.0;
    double visibility_factor = 0.77;
    int scan_points = 16;
    std::uint64_t seed = 12345;
};

/// Parses config text; throws ParseError with 1-based line/column on bad
/// syntax, unknown keys, missing or wrong units, or duplicate keys.
ExperimentConfig parse_config(const std::string& text);

/// Reads and parses a config file; throws std::runtime_error if unreadable.
ExperimentConfig load_config(const std::string& path);

/// Canonical full-precision rendering; parse_config(dump_config(c)) == c.
std::string dump_config(const ExperimentConfig& c);

/// Physics view of the config (k0 = 2*pi / pump_wavelength).
twophoton::SetupConfig to_setup(const ExperimentConfig& c);

/// Unit-tagged quantity parser shared with the CLI: "22.5 deg", "100um",
/// "0.05 m"...  kind selects the accepted unit set.
enum class QuantityKind { length, angle, time, scalar };
double parse_quantity(const std::string& text, QuantityKind kind);

} // namespace gpf::config
