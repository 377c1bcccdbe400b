#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oubstop {

/// 17 significant digits; integral values keep a trailing ".0" (1 -> "1.0").
std::string format_real(double v);

struct BoundaryTable {
    std::vector<double> t;
    std::vector<double> beta;
};

/// Header `t,beta`, one newline-terminated row per node.
void write_boundary_csv(std::ostream& out, const BoundaryTable& table);

/// Throws std::runtime_error on a malformed header or row.
BoundaryTable read_boundary_csv(std::istream& in);

}  // namespace oubstop
