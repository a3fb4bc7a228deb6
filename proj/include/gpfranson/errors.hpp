#pragma once

#include <stdexcept>
#include <string>

namespace gpf {

/// Pancharatnam phase between orthogonal states: arg<in|out> has no value.
struct PhaseUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A circuit edge joins antipodal points; the connecting geodesic is not unique.
struct DegenerateEdge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The fit design matrix is numerically singular.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An input lies outside the mathematically admissible range (e.g. |E| > 1).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fitted fringe phases do not follow the expected pi/2 ladder.
struct PhasePatternMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config or CSV syntax error, with 1-based source position.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column "
                             + std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

} // namespace gpf
