#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace wpw {

using Rat = boost::rational<std::int64_t>;

double to_double(const Rat& r);
std::string to_string(const Rat& r);

// Accepts "3", "-2", "3/4" and finite decimals such as "2.25".
Rat parse_rat(const std::string& text);

// Exact conversion of a double that holds a short decimal (at most 9
// fractional digits). Throws std::invalid_argument otherwise.
Rat rat_from_double(double v);

}  // namespace wpw
