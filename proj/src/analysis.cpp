#include "gpfranson/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gpfranson/errors.hpp"
#include "gpfranson/polarization.hpp"

namespace gpf::analysis {

namespace {

using std::numbers::pi;

// Residual sums below this are floating-point dust from an exact fit, many
// orders below the chi^2 of any counting dataset; snap them to zero so
// noiseless input reports zero uncertainty.
constexpr double exact_fit_chi2 = 1e-9;

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

FringeFit fit_fringe(std::span<const double> x, std::span<const double> y,
                     double angular_frequency) {
    const std::size_t n = x.size();
    if (n != y.size())
        throw std::invalid_argument("x and y must have equal length");
    if (n < 4)
        throw std::invalid_argument("fringe fit needs at least four points");
    if (!(angular_frequency != 0.0) || !std::isfinite(angular_frequency))
        throw std::invalid_argument("angular frequency must be finite and non-zero");

    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n), weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = angular_frequency * x[i];
        design(i, 0) = 1.0;
        design(i, 1) = std::cos(u);
        design(i, 2) = std::sin(u);
        rhs(i) = y[i];
        weight(i) = 1.0 / std::max(y[i], 1.0);
    }
    const Eigen::Matrix3d normal =
        design.transpose() * weight.asDiagonal() * design;
    const Eigen::Vector3d moment =
        design.transpose() * (weight.array() * rhs.array()).matrix();

    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
        normal, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(2) > 1e-12 * sv(0)))
        throw IllConditioned("fringe design matrix is numerically singular");
    const Eigen::Vector3d coef = svd.solve(moment);

    double chi2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rhs(i) - design.row(i).dot(coef);
        chi2 += weight(i) * r * r;
    }
    // The weights carry absolute Poisson variances, so (X^T W X)^-1 is the
    // covariance as-is; no reduced-chi^2 rescaling.
    const double scale = chi2 < exact_fit_chi2 ? 0.0 : 1.0;

    FringeFit fit;
    fit.offset = coef(0);
    fit.amplitude = std::hypot(coef(1), coef(2));
    fit.phase = polarization::wrap_angle(std::atan2(-coef(2), coef(1)));
    fit.visibility = fit.offset != 0.0
                         ? fit.amplitude / fit.offset
                         : std::numeric_limits<double>::quiet_NaN();
    fit.covariance = svd.solve(Eigen::Matrix3d::Identity()) * scale;

    const double a = fit.offset;
    const double b = fit.amplitude;
    if (a != 0.0 && b > 0.0) {
        const Eigen::Vector3d gv(-b / (a * a), coef(1) / (a * b),
                                 coef(2) / (a * b));
        fit.sigma_visibility = std::sqrt(gv.dot(fit.covariance * gv));
        const Eigen::Vector3d gp(0.0, coef(2) / (b * b), -coef(1) / (b * b));
        fit.sigma_phase = std::sqrt(gp.dot(fit.covariance * gp));
    } else if (a != 0.0) {
        // Flat fringe: the phase is unconstrained and V is |noise|/A.
        fit.sigma_visibility =
            std::sqrt(0.5 * (fit.covariance(1, 1) + fit.covariance(2, 2)))
            / std::abs(a);
        fit.sigma_phase = pi;
    } else {
        fit.sigma_visibility = std::numeric_limits<double>::quiet_NaN();
        fit.sigma_phase = pi;
    }
    return fit;
}

FringeFit fit_fringe(const montecarlo::FringeScan& scan,
                     double angular_frequency) {
    std::vector<double> y(scan.counts.begin(), scan.counts.end());
    return fit_fringe(scan.spec.points, y, angular_frequency);
}

double s_from_visibility(double visibility) {
    if (!(visibility >= 0.0))
        throw std::invalid_argument("visibility must be non-negative");
    return 2.0 * std::sqrt(2.0) * visibility;
}

double chsh_from_settings(const std::array<double, 4>& correlations) {
    for (double e : correlations)
        if (!(std::abs(e) <= 1.0 + 1e-9))
            throw DomainError("correlation outside [-1, 1]");
    return std::abs(correlations[0] - correlations[1] + correlations[2]
                    + correlations[3]);
}

BellResult bell_report(const std::array<FringeFit, 4>& fits) {
    // Quarter-turn ladder check before any pooling.
    std::array<double, 4> residuals{};
    for (int k = 0; k < 4; ++k) {
        residuals[k] = polarization::wrap_angle(fits[k].phase - fits[0].phase
                                                - k * pi / 2.0);
        const double sigma = std::sqrt(fits[k].sigma_phase * fits[k].sigma_phase
                                       + fits[0].sigma_phase * fits[0].sigma_phase);
        if (k > 0 && std::abs(residuals[k]) > std::max(5.0 * sigma, 1e-9))
            throw PhasePatternMismatch(
                "fitted fringe phases do not climb the pi/2 ladder");
    }

    BellResult r;
    r.phase_residuals = residuals;
    bool any_exact = false;
    for (const auto& f : fits) any_exact |= f.sigma_visibility == 0.0;
    if (any_exact) {
        double sum = 0.0;
        int m = 0;
        for (const auto& f : fits)
            if (f.sigma_visibility == 0.0) {
                sum += f.visibility;
                ++m;
            }
        r.pooled_visibility = sum / m;
        r.sigma_pooled_visibility = 0.0;
        r.degenerate = true;
    } else {
        double wsum = 0.0, vsum = 0.0;
        for (const auto& f : fits) {
            const double w = 1.0 / (f.sigma_visibility * f.sigma_visibility);
            wsum += w;
            vsum += w * f.visibility;
        }
        r.pooled_visibility = vsum / wsum;
        r.sigma_pooled_visibility = 1.0 / std::sqrt(wsum);
    }

    r.S = s_from_visibility(std::max(r.pooled_visibility, 0.0));
    r.sigma_S = 2.0 * std::sqrt(2.0) * r.sigma_pooled_visibility;
    if (r.sigma_S == 0.0) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        r.violation_sigmas = r.S > 2.0 ? inf : (r.S < 2.0 ? -inf : 0.0);
    } else {
        r.violation_sigmas = (r.S - 2.0) / r.sigma_S;
    }
    return r;
}

BellExperiment run_bell_experiment(const twophoton::SetupConfig& base,
                                   int points_per_scan, double dwell_time,
                                   std::uint64_t seed) {
    BellExperiment e;
    montecarlo::ScanSpec spec;
    spec.variable = montecarlo::ScanVariable::two_beta_s;
    spec.dwell_time = dwell_time;
    for (int j = 0; j < points_per_scan; ++j)
        spec.points.push_back(2.0 * pi * j / points_per_scan);
    for (int k = 0; k < 4; ++k) {
        twophoton::SetupConfig cfg = base;
        cfg.beta_i = k * pi / 4.0; // 2*beta_i = k*pi/2
        spec.seed = mix64(seed + std::uint64_t(k));
        e.scans[k] = montecarlo::run_scan(cfg, spec);
        e.fits[k] = fit_fringe(e.scans[k], 1.0);
    }
    e.result = bell_report(e.fits);
    return e;
}

} // namespace gpf::analysis
