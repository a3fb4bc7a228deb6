#pragma once

// Photon-counting simulation: Poisson draws of coincidence counts along a
// scan of one setup variable.
//
// Every scan point gets its own random stream, derived from
// (seed, bit pattern of the point value) with splitmix64.  Streams therefore
// depend on what is measured, not on evaluation order: permuting the point
// list permutes the counts, and points may be evaluated concurrently.

#include <cstdint>
#include <random>
#include <vector>

#include "gpfranson/twophoton.hpp"

namespace gpf::montecarlo {

enum class ScanVariable { two_beta_s, two_beta_i, x_s, x_i };

/// One scan prescription.  two_beta_* points are in rad (the waveplate is
/// rotated by half the point value); x_* points are in m.
struct ScanSpec {
    ScanVariable variable = ScanVariable::two_beta_s;
    std::vector<double> points;
    double dwell_time = 5.0; ///< s
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless there are >= 2 points and
    /// dwell_time > 0.
    void validate() const;
};

/// Scan result: counts[i] ~ Poisson(rate(points[i]) * dwell_time).
struct FringeScan {
    ScanSpec spec;
    twophoton::SetupConfig base_config;
    std::vector<std::uint64_t> counts;
};

/// Deterministic uniform stream (mt19937_64 under the hood; doubles are
/// built from the top 53 bits so the sequence is implementation-independent).
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t key) : engine_(key) {}
    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

/// splitmix64 mix of (seed, value bits); -0.0 is normalized to +0.0.
RandomStream point_stream(std::uint64_t seed, double point_value);

/// One Poisson draw with mean rate*dwell.  Exact sampler for all means
/// (product method below mean 10, PTRS transformed rejection above).
/// Throws std::invalid_argument on negative rate or non-positive dwell.
std::uint64_t sample_counts(double rate, double dwell, RandomStream& stream);

/// base with one variable replaced by a scan point value.
twophoton::SetupConfig apply_point(const twophoton::SetupConfig& base,
                                   ScanVariable variable, double value);

/// Simulates the scan; byte-identical for identical (base, spec).
FringeScan run_scan(const twophoton::SetupConfig& base, const ScanSpec& spec);

} // namespace gpf::montecarlo
