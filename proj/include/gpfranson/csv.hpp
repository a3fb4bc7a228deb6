#pragma once

// Scan CSV: header "setting,rate_theory,counts", one row per point, floats
// at 17 significant digits so reruns under the same seed are byte-identical.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gpf::csv {

struct ScanTable {
    std::vector<double> setting;
    std::vector<double> rate_theory;
    std::vector<std::uint64_t> counts;
};

void write_scan(std::ostream& out, const ScanTable& table);

/// Fit input: rows of (setting, counts).  Accepts any CSV with a header
/// containing "setting" and "counts" columns (extra columns ignored).
/// Throws ParseError with 1-based line/column.
struct XYSeries {
    std::vector<double> x;
    std::vector<double> y;
};
XYSeries read_setting_counts(const std::string& text);
XYSeries load_setting_counts(const std::string& path);

/// 17-significant-digit rendering used for all CSV floats.
std::string format_full(double v);

} // namespace gpf::csv
