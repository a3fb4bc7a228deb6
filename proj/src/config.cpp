#include "gpfranson/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>
#include <vector>

#include "gpfranson/csv.hpp"
#include "gpfranson/errors.hpp"

namespace gpf::config {

namespace {

using std::numbers::pi;

struct Unit {
    const char* name;
    double scale;
};

const std::vector<Unit>& units_for(QuantityKind kind) {
    static const std::vector<Unit> length = {
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    static const std::vector<Unit> angle = {{"rad", 1.0}, {"deg", pi / 180.0}};
    static const std::vector<Unit> time = {{"s", 1.0}, {"ms", 1e-3}};
    static const std::vector<Unit> none = {};
    switch (kind) {
        case QuantityKind::length: return length;
        case QuantityKind::angle: return angle;
        case QuantityKind::time: return time;
        default: return none;
    }
}

const char* kind_name(QuantityKind kind) {
    switch (kind) {
        case QuantityKind::length: return "length";
        case QuantityKind::angle: return "angle";
        case QuantityKind::time: return "time";
        default: return "scalar";
    }
}

const char* canonical_unit(QuantityKind kind) {
    switch (kind) {
        case QuantityKind::length: return " m";
        case QuantityKind::angle: return " rad";
        case QuantityKind::time: return " s";
        default: return "";
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Parses "<number> [unit]" and converts to base units.  line/column locate
// the token for error reporting; column points at the value start.
double quantity_at(std::string_view text, QuantityKind kind, int line,
                   int column) {
    const std::string buf(text);
    char* end = nullptr;
    const double value = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str())
        throw ParseError("expected a number", line, column);
    const std::string_view unit = trim(std::string_view(end));
    if (kind == QuantityKind::scalar) {
        if (!unit.empty())
            throw ParseError("no unit allowed on a scalar value", line,
                             column + int(end - buf.c_str()));
        return value;
    }
    if (unit.empty())
        throw ParseError(std::string("missing ") + kind_name(kind)
                             + " unit (value is dimensioned)",
                         line, column);
    for (const Unit& u : units_for(kind))
        if (unit == u.name) return value * u.scale;
    throw ParseError("unknown " + std::string(kind_name(kind)) + " unit '"
                         + std::string(unit) + "'",
                     line, column + int(end - buf.c_str()));
}

struct KeySpec {
    const char* name;
    QuantityKind kind;
    double ExperimentConfig::* field; // null for the integer keys
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> keys = {
        {"mirrors.x_s", QuantityKind::length, &ExperimentConfig::x_s},
        {"mirrors.x_i", QuantityKind::length, &ExperimentConfig::x_i},
        {"waveplates.beta_s", QuantityKind::angle, &ExperimentConfig::beta_s},
        {"waveplates.beta_i", QuantityKind::angle, &ExperimentConfig::beta_i},
        {"source.pump_wavelength", QuantityKind::length,
         &ExperimentConfig::pump_wavelength},
        {"source.pump_coherence_length", QuantityKind::length,
         &ExperimentConfig::pump_coherence_length},
        {"source.si_coherence_length", QuantityKind::length,
         &ExperimentConfig::si_coherence_length},
        {"counting.rate_constant", QuantityKind::scalar,
         &ExperimentConfig::rate_constant},
        {"counting.dwell_time", QuantityKind::time,
         &ExperimentConfig::dwell_time},
        {"counting.visibility_factor", QuantityKind::scalar,
         &ExperimentConfig::visibility_factor},
        {"scan.points", QuantityKind::scalar, nullptr},
        {"seed", QuantityKind::scalar, nullptr},
    };
    return keys;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::vector<bool> seen(key_table().size(), false);
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const int key_col = 1 + int(body.data() - line.data());

        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", line_no, key_col);
        const std::string_view key = trim(body.substr(0, eq));
        const std::string_view value = trim(body.substr(eq + 1));
        if (key.empty())
            throw ParseError("empty key", line_no, key_col);
        const int value_col =
            value.empty() ? key_col + int(eq) + 1
                          : 1 + int(value.data() - line.data());

        std::size_t index = key_table().size();
        for (std::size_t k = 0; k < key_table().size(); ++k)
            if (key == key_table()[k].name) {
                index = k;
                break;
            }
        if (index == key_table().size())
            throw ParseError("unknown key '" + std::string(key) + "'", line_no,
                             key_col);
        if (seen[index])
            throw ParseError("duplicate key '" + std::string(key) + "'",
                             line_no, key_col);
        seen[index] = true;

        const KeySpec& spec = key_table()[index];
        if (spec.field != nullptr) {
            config.*spec.field =
                quantity_at(value, spec.kind, line_no, value_col);
            continue;
        }
        // Integer keys: parsed exactly, so 64-bit seeds round-trip.
        const std::string buf(value);
        char* end = nullptr;
        errno = 0;
        if (key == "scan.points") {
            const long long v = std::strtoll(buf.c_str(), &end, 10);
            if (end == buf.c_str() || !trim(std::string_view(end)).empty()
                || errno == ERANGE || v < 2 || v > 1000000000)
                throw ParseError("scan.points must be an integer >= 2", line_no,
                                 value_col);
            config.scan_points = int(v);
        } else { // seed
            const unsigned long long v = std::strtoull(buf.c_str(), &end, 10);
            if (end == buf.c_str() || !trim(std::string_view(end)).empty()
                || errno == ERANGE || buf.find('-') != std::string::npos)
                throw ParseError("seed must be a non-negative integer", line_no,
                                 value_col);
            config.seed = v;
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& c) {
    std::string out;
    char line[160];
    const auto emit_double = [&](const char* key, double v, QuantityKind kind) {
        std::snprintf(line, sizeof line, "%-28s = %s%s\n", key,
                      csv::format_full(v).c_str(), canonical_unit(kind));
        out += line;
    };
    for (const KeySpec& spec : key_table()) {
        if (spec.field != nullptr) {
            emit_double(spec.name, c.*spec.field, spec.kind);
        } else if (std::string_view(spec.name) == "scan.points") {
            std::snprintf(line, sizeof line, "%-28s = %d\n", spec.name,
                          c.scan_points);
            out += line;
        } else {
            std::snprintf(line, sizeof line, "%-28s = %llu\n", spec.name,
                          static_cast<unsigned long long>(c.seed));
            out += line;
        }
    }
    return out;
}

twophoton::SetupConfig to_setup(const ExperimentConfig& c) {
    twophoton::SetupConfig s;
    s.x_s = c.x_s;
    s.x_i = c.x_i;
    s.beta_s = c.beta_s;
    s.beta_i = c.beta_i;
    s.source = twophoton::SourceModel(2.0 * pi / c.pump_wavelength,
                                      c.pump_coherence_length,
                                      c.si_coherence_length);
    s.rate_constant = c.rate_constant;
    s.visibility_factor = c.visibility_factor;
    return s;
}

double parse_quantity(const std::string& text, QuantityKind kind) {
    return quantity_at(trim(text), kind, 1, 1);
}

} // namespace gpf::config
