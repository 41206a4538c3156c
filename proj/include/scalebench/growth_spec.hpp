#pragma once

#include <string>
#include <string_view>

#include "scalebench/growth.hpp"

namespace scalebench::growth {

// Parses the growth-spec mini-language, e.g. "kang(pow:1,exp:e)",
// "table:[1,1,2,3,5]+last+1", "rem(exp:2,3)". Throws ParseError.
GrowthFunction parse_spec(std::string_view text);

// Shortest decimal representation that parses back to the same double.
std::string format_number(double x);

}  // namespace scalebench::growth
