#pragma once

#include "fdm/numerics.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdm::testing {

inline Real R(std::string_view text) { return Real::parse(text); }

/// Value and last-digit unit of a printed decimal such as "0.7655e-5" or
/// "35.25": the unit is 10^(exponent - digits after the point).
struct Printed {
    Real value;
    Real unit;
};

inline Printed parse_printed(std::string_view text)
{
    const auto e = text.find_first_of("eE");
    const std::string_view mantissa = text.substr(0, e);
    const long exponent = e == std::string_view::npos ? 0 : std::stol(std::string(text.substr(e + 1)));
    const auto dot = mantissa.find('.');
    const long decimals = dot == std::string_view::npos ? 0 : static_cast<long>(mantissa.size() - dot - 1);
    Printed p;
    p.value = Real::parse(text);
    p.unit = pow(Real(10L), exponent - decimals);
    return p;
}

/// |x - printed| <= units * (last printed digit).
inline bool within_printed(const Real& x, std::string_view printed, const Real& units)
{
    const Printed p = parse_printed(printed);
    return abs(x - p.value) <= units * p.unit;
}

/// x rounds to the printed digits.
inline bool rounds_to(const Real& x, std::string_view printed) { return within_printed(x, printed, Real::ratio(1, 2)); }

/// Whitespace-separated rows of a golden table; '#' lines are skipped.
inline std::vector<std::vector<std::string>> read_golden(const std::string& name)
{
    const std::string path = std::string(FDM_GOLDEN_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open golden file " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream fields(line);
        std::vector<std::string> row;
        for (std::string f; fields >> f;)
            row.push_back(f);
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace fdm::testing
