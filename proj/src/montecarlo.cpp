#include "gpfranson/montecarlo.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gpf::montecarlo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Knuth's product method; exact, O(lambda) draws, used for small means.
std::uint64_t poisson_small(double lambda, RandomStream& stream) {
    const double limit = std::exp(-lambda);
    std::uint64_t k = 0;
    double product = 1.0;
    for (;;) {
        product *= stream.uniform();
        if (product <= limit) return k;
        ++k;
    }
}

// Transformed rejection with squeeze (PTRS); exact for lambda >= 10.
std::uint64_t poisson_ptrs(double lambda, RandomStream& stream) {
    const double log_lambda = std::log(lambda);
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = stream.uniform() - 0.5;
        const double v = stream.uniform();
        const double us = 0.5 - std::abs(u);
        const double kf =
            std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (kf < 0.0) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (us < 0.013 && v > us) continue;
        const double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b))
            <= k * log_lambda - lambda - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

} // namespace

void ScanSpec::validate() const {
    if (points.size() < 2)
        throw std::invalid_argument("a scan needs at least two points");
    if (!(dwell_time > 0.0) || !std::isfinite(dwell_time))
        throw std::invalid_argument("dwell time must be positive");
    for (double p : points)
        if (!std::isfinite(p))
            throw std::invalid_argument("scan points must be finite");
}

RandomStream point_stream(std::uint64_t seed, double point_value) {
    if (point_value == 0.0) point_value = 0.0; // collapse -0.0 onto +0.0
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(point_value);
    return RandomStream(splitmix64(splitmix64(seed) ^ bits));
}

std::uint64_t sample_counts(double rate, double dwell, RandomStream& stream) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("rate must be non-negative and finite");
    if (!(dwell > 0.0) || !std::isfinite(dwell))
        throw std::invalid_argument("dwell must be positive and finite");
    const double lambda = rate * dwell;
    if (lambda == 0.0) return 0;
    if (lambda < 10.0) return poisson_small(lambda, stream);
    return poisson_ptrs(lambda, stream);
}

twophoton::SetupConfig apply_point(const twophoton::SetupConfig& base,
                                   ScanVariable variable, double value) {
    twophoton::SetupConfig c = base;
    switch (variable) {
        case ScanVariable::two_beta_s: c.beta_s = value / 2.0; break;
        case ScanVariable::two_beta_i: c.beta_i = value / 2.0; break;
        case ScanVariable::x_s: c.x_s = value; break;
        case ScanVariable::x_i: c.x_i = value; break;
    }
    return c;
}

FringeScan run_scan(const twophoton::SetupConfig& base, const ScanSpec& spec) {
    spec.validate();
    base.validate();
    FringeScan scan;
    scan.spec = spec;
    scan.base_config = base;
    scan.counts.reserve(spec.points.size());
    for (double point : spec.points) {
        const auto cfg = apply_point(base, spec.variable, point);
        const double rate = twophoton::coincidence_rate(cfg);
        RandomStream stream = point_stream(spec.seed, point);
        scan.counts.push_back(sample_counts(rate, spec.dwell_time, stream));
    }
    return scan;
}

} // namespace gpf::montecarlo
