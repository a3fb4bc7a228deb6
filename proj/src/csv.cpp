#include "gpfranson/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gpfranson/errors.hpp"

namespace gpf::csv {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// 1-based column of field `index` within the line.
int field_column(const std::string& line, std::size_t index) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < index; ++k) pos = line.find(',', pos) + 1;
    return int(pos) + 1;
}

double number_at(const std::string& cell, int line_no, int column) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        throw ParseError("expected a number, got '" + cell + "'", line_no,
                         column);
    return v;
}

} // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_scan(std::ostream& out, const ScanTable& table) {
    out << "setting,rate_theory,counts\n";
    for (std::size_t i = 0; i < table.setting.size(); ++i) {
        out << format_full(table.setting[i]) << ','
            << format_full(table.rate_theory[i]) << ',' << table.counts[i]
            << '\n';
    }
}

XYSeries read_setting_counts(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty input", 1, 1);
    const auto header = split_fields(line);
    std::size_t x_col = header.size(), y_col = header.size();
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == "setting") x_col = k;
        if (header[k] == "counts") y_col = k;
    }
    if (x_col == header.size() || y_col == header.size())
        throw ParseError("header must name 'setting' and 'counts' columns", 1, 1);

    XYSeries series;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size())
                                 + " fields, got "
                                 + std::to_string(fields.size()),
                             line_no, 1);
        series.x.push_back(number_at(fields[x_col], line_no,
                                     field_column(line, x_col)));
        series.y.push_back(number_at(fields[y_col], line_no,
                                     field_column(line, y_col)));
    }
    return series;
}

XYSeries load_setting_counts(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read CSV file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_setting_counts(buf.str());
}

} // namespace gpf::csv
