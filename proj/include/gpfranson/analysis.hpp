#pragma once

// Fringe estimation and Bell-inequality numbers.
//
// Fits are weighted linear least squares on the basis {1, cos(w x), sin(w x)}
// with the fringe frequency held fixed; Poisson weights use variance
// max(count, 1).  The CHSH parameter follows S = 2*sqrt(2)*V for a fringe
// of visibility V at the optimal settings.

#include <array>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "gpfranson/montecarlo.hpp"

namespace gpf::analysis {

/// Result of fitting counts y ~ A + B*cos(w x + phi0), B >= 0.
struct FringeFit {
    double offset = 0.0;         ///< A
    double amplitude = 0.0;      ///< B
    double phase = 0.0;          ///< phi0, in (-pi, pi]
    double visibility = 0.0;     ///< V = B/A, not clamped
    Eigen::Matrix3d covariance;  ///< over (A, B*cos(phi0), -B*sin(phi0))
    double sigma_visibility = 0.0;
    double sigma_phase = 0.0;
};

/// CHSH summary.  degenerate marks noiseless input (sigma_S = 0), in which
/// case violation_sigmas is +-infinity.
struct BellResult {
    double S = 0.0;
    double sigma_S = 0.0;
    double violation_sigmas = 0.0; ///< (S - 2) / sigma_S
    double pooled_visibility = 0.0;
    double sigma_pooled_visibility = 0.0;
    bool degenerate = false;
    /// wrap(phase_k - phase_0 - k*pi/2) for k = 0..3.
    std::array<double, 4> phase_residuals{};
};

/// Four fringe scans at idler settings 2*beta_i in {0, pi/2, pi, 3*pi/2},
/// each scanning 2*beta_s, with their fits and the Bell summary.
struct BellExperiment {
    std::array<montecarlo::FringeScan, 4> scans;
    std::array<FringeFit, 4> fits;
    BellResult result;
};

/// Weighted least-squares fringe fit at fixed angular frequency.
/// Requires >= 4 points; throws IllConditioned if the design matrix is
/// numerically singular (e.g. all points at one phase).
FringeFit fit_fringe(std::span<const double> x, std::span<const double> y,
                     double angular_frequency);

/// Fit of a simulated scan; frequency is per unit of the scanned variable
/// (1 for two_beta_* scans, k0 for mirror scans).
FringeFit fit_fringe(const montecarlo::FringeScan& scan,
                     double angular_frequency = 1.0);

/// S = 2*sqrt(2)*V.  Throws std::invalid_argument on V < 0.
double s_from_visibility(double visibility);

/// |E1 - E2 + E3 + E4| for correlations (E(a,b), E(a,b'), E(a',b), E(a',b')).
/// Throws DomainError if any |E| > 1 + 1e-9.
double chsh_from_settings(const std::array<double, 4>& correlations);

/// Pools four fits (2*beta_i = 0, pi/2, pi, 3*pi/2, in that order) by
/// inverse variance, forms S = 2*sqrt(2)*V_pooled, and checks that the
/// fitted phases climb the pi/2 ladder; throws PhasePatternMismatch if a
/// residual exceeds 5 of its propagated sigmas.
BellResult bell_report(const std::array<FringeFit, 4>& fits);

/// Runs the four-setting experiment: points_per_scan values of 2*beta_s on
/// [0, 2*pi), idler settings as in bell_report, Poisson counts with the
/// given dwell and per-setting seeds derived from seed.
BellExperiment run_bell_experiment(const twophoton::SetupConfig& base,
                                   int points_per_scan, double dwell_time,
                                   std::uint64_t seed);

} // namespace gpf::analysis
