// Command-line front end: phase (loop phase two ways), scan (simulated
// fringe scan as CSV), bell (four-setting CHSH run), fit (fringe fit of a
// scan CSV).  Exit codes: 0 success, 1 usage, 2 parse/input, 3 numerical.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpfranson/analysis.hpp"
#include "gpfranson/config.hpp"
#include "gpfranson/csv.hpp"
#include "gpfranson/errors.hpp"
#include "gpfranson/montecarlo.hpp"
#include "gpfranson/polarization.hpp"
#include "gpfranson/twophoton.hpp"

namespace {

using gpf::config::ExperimentConfig;
using gpf::config::QuantityKind;
using gpf::montecarlo::ScanVariable;

constexpr double tau = 6.2831853071795865;

void print_value(std::ostream& out, const char* key, double v) {
    out << key << " = " << gpf::csv::format_full(v) << "\n";
}

int run_phase(const std::string& beta_text) {
    const double beta_raw =
        gpf::config::parse_quantity(beta_text, QuantityKind::angle);
    // The circuit construction needs the mirror angle folded into [0, pi).
    const double beta = beta_raw - std::floor(beta_raw / M_PI) * M_PI;
    const double jones = gpf::polarization::loop_phase(beta);
    const auto circuit = gpf::polarization::circuit_for_loop(beta);
    const double omega = gpf::polarization::solid_angle(circuit);
    const double geometric = gpf::polarization::geometric_phase(circuit);
    const double diff =
        std::abs(gpf::polarization::wrap_angle(jones - geometric));
    print_value(std::cout, "beta", beta_raw);
    print_value(std::cout, "jones_phase", jones);
    print_value(std::cout, "solid_angle", omega);
    print_value(std::cout, "geometric_phase", geometric);
    print_value(std::cout, "difference", diff);
    if (diff > 1e-9) {
        std::cerr << "phase computations disagree beyond 1e-9\n";
        return 3;
    }
    return 0;
}

QuantityKind kind_for(ScanVariable v) {
    return (v == ScanVariable::x_s || v == ScanVariable::x_i)
               ? QuantityKind::length
               : QuantityKind::angle;
}

int run_scan(const ExperimentConfig& config, ScanVariable variable,
             std::string from_text, std::string to_text, int points,
             double dwell, std::uint64_t seed, const std::string& output) {
    const bool angular = kind_for(variable) == QuantityKind::angle;
    if (from_text.empty()) from_text = angular ? "0 rad" : "-1 um";
    if (to_text.empty())
        to_text = angular ? gpf::csv::format_full(tau) + " rad" : "1 um";
    const double from = gpf::config::parse_quantity(from_text, kind_for(variable));
    const double to = gpf::config::parse_quantity(to_text, kind_for(variable));

    gpf::montecarlo::ScanSpec spec;
    spec.variable = variable;
    spec.dwell_time = dwell;
    spec.seed = seed;
    for (int j = 0; j < points; ++j)
        spec.points.push_back(from + j * (to - from) / points);

    const auto base = gpf::config::to_setup(config);
    const auto scan = gpf::montecarlo::run_scan(base, spec);

    gpf::csv::ScanTable table;
    table.setting = spec.points;
    table.counts = scan.counts;
    for (double p : spec.points)
        table.rate_theory.push_back(gpf::twophoton::coincidence_rate(
            gpf::montecarlo::apply_point(base, variable, p)));

    if (output.empty()) {
        gpf::csv::write_scan(std::cout, table);
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot write " << output << "\n";
            return 2;
        }
        gpf::csv::write_scan(out, table);
    }
    return 0;
}

int run_bell(const ExperimentConfig& config, int points, double dwell,
             std::uint64_t seed) {
    const auto base = gpf::config::to_setup(config);
    const auto e = gpf::analysis::run_bell_experiment(base, points, dwell, seed);
    char line[160];
    for (int k = 0; k < 4; ++k) {
        std::snprintf(line, sizeof line,
                      "setting %d: V = %.6f +/- %.6f, phase = %.6f rad\n", k,
                      e.fits[k].visibility, e.fits[k].sigma_visibility,
                      e.fits[k].phase);
        std::cout << line;
    }
    const auto& r = e.result;
    std::snprintf(line, sizeof line, "pooled_V = %.6f +/- %.6f\n",
                  r.pooled_visibility, r.sigma_pooled_visibility);
    std::cout << line;
    std::snprintf(line, sizeof line, "S = %.6f +/- %.6f\n", r.S, r.sigma_S);
    std::cout << line;
    std::snprintf(line, sizeof line, "violation_sigmas = %.3f\n",
                  r.violation_sigmas);
    std::cout << line;
    std::snprintf(line, sizeof line,
                  "ladder_residuals_rad = %.3e %.3e %.3e %.3e\n",
                  r.phase_residuals[0], r.phase_residuals[1],
                  r.phase_residuals[2], r.phase_residuals[3]);
    std::cout << line;
    std::cout << "VIOLATION: " << (r.violation_sigmas >= 3.0 ? "yes" : "no")
              << "\n";
    return 0;
}

int run_fit(const std::string& input, double frequency) {
    if (!std::filesystem::exists(input)) {
        std::cerr << "cannot read " << input << "\n";
        return 2;
    }
    const auto series = gpf::csv::load_setting_counts(input);
    const auto fit = gpf::analysis::fit_fringe(series.x, series.y, frequency);
    print_value(std::cout, "offset", fit.offset);
    print_value(std::cout, "amplitude", fit.amplitude);
    print_value(std::cout, "phase", fit.phase);
    print_value(std::cout, "visibility", fit.visibility);
    print_value(std::cout, "sigma_visibility", fit.sigma_visibility);
    print_value(std::cout, "sigma_phase", fit.sigma_phase);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-pass interferometer simulator"};
    app.require_subcommand(0, 1);

    std::string config_path;
    bool dump = false;
    app.add_option("-c,--config", config_path, "configuration file");
    app.add_flag("--dump-config", dump,
                 "print the effective configuration and exit");

    auto* phase = app.add_subcommand(
        "phase", "loop phase from the Jones matrix and from the solid angle");
    std::string beta_text;
    phase->add_option("--beta", beta_text, "waveplate rotation, e.g. '22.5 deg'")
        ->required();

    const std::map<std::string, ScanVariable> variables = {
        {"two_beta_s", ScanVariable::two_beta_s},
        {"two_beta_i", ScanVariable::two_beta_i},
        {"x_s", ScanVariable::x_s},
        {"x_i", ScanVariable::x_i}};
    auto* scan = app.add_subcommand("scan", "simulate one fringe scan as CSV");
    ScanVariable scan_variable = ScanVariable::two_beta_s;
    std::string from_text, to_text, output;
    int scan_points = -1;
    double scan_dwell = -1.0;
    std::int64_t scan_seed = -1;
    scan->add_option("--variable", scan_variable, "scanned setting")
        ->transform(CLI::CheckedTransformer(variables, CLI::ignore_case));
    scan->add_option("--from", from_text, "first point, e.g. '0 rad'");
    scan->add_option("--to", to_text, "end of the half-open range");
    scan->add_option("--points", scan_points, "number of points");
    scan->add_option("--dwell", scan_dwell, "dwell time per point, s");
    scan->add_option("--seed", scan_seed, "random seed");
    scan->add_option("--output", output, "write CSV here instead of stdout");

    auto* bell = app.add_subcommand("bell", "four-setting CHSH experiment");
    int bell_points = -1;
    double bell_dwell = -1.0;
    std::int64_t bell_seed = -1;
    bell->add_option("--points", bell_points, "points per scan");
    bell->add_option("--dwell", bell_dwell, "dwell time per point, s");
    bell->add_option("--seed", bell_seed, "random seed");

    auto* fit = app.add_subcommand("fit", "fringe fit of a scan CSV");
    std::string input;
    double frequency = 1.0;
    fit->add_option("--input", input, "CSV with setting and counts columns")
        ->required();
    fit->add_option("--frequency", frequency,
                    "fringe angular frequency per setting unit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        ExperimentConfig config;
        if (!config_path.empty()) {
            if (!std::filesystem::exists(config_path)) {
                std::cerr << "cannot read " << config_path << "\n";
                return 2;
            }
            config = gpf::config::load_config(config_path);
        }
        if (dump) {
            std::cout << gpf::config::dump_config(config);
            return 0;
        }
        if (phase->parsed()) return run_phase(beta_text);
        if (scan->parsed())
            return run_scan(
                config, scan_variable, from_text, to_text,
                scan_points > 0 ? scan_points : config.scan_points,
                scan_dwell > 0.0 ? scan_dwell : config.dwell_time,
                scan_seed >= 0 ? std::uint64_t(scan_seed) : config.seed, output);
        if (bell->parsed())
            return run_bell(config,
                            bell_points > 0 ? bell_points : config.scan_points,
                            bell_dwell > 0.0 ? bell_dwell : config.dwell_time,
                            bell_seed >= 0 ? std::uint64_t(bell_seed)
                                           : config.seed);
        if (fit->parsed()) return run_fit(input, frequency);
        std::cerr << app.help();
        return 1;
    } catch (const gpf::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
