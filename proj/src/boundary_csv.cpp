#include "oubstop/boundary_csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace oubstop {

std::string format_real(double v) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf, static_cast<std::size_t>(len));
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
}

void write_boundary_csv(std::ostream& out, const BoundaryTable& table) {
    if (table.t.size() != table.beta.size()) throw std::invalid_argument("write_boundary_csv: column size mismatch");
    out << "t,beta\n";
    for (std::size_t i = 0; i < table.t.size(); ++i) {
        out << format_real(table.t[i]) << ',' << format_real(table.beta[i]) << '\n';
    }
}

namespace {

double parse_field(const std::string& field, std::size_t line) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw std::runtime_error("boundary csv: bad number '" + field + "' on line " + std::to_string(line));
    }
    return v;
}

}  // namespace

BoundaryTable read_boundary_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("boundary csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,beta") throw std::runtime_error("boundary csv: expected header 't,beta'");

    BoundaryTable table;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw std::runtime_error("boundary csv: expected two columns on line " + std::to_string(lineno));
        }
        table.t.push_back(parse_field(line.substr(0, comma), lineno));
        table.beta.push_back(parse_field(line.substr(comma + 1), lineno));
    }
    return table;
}

}  // namespace oubstop
