#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "covtrans/group.hpp"

namespace covtrans {

// "C4096", "D5", "S4", "EA(2,5)", and 'x'-joined products such as "C2xD3".
// Throws ParseError naming the offending token.
FiniteGroup parse_group(std::string_view descriptor);

// "tower:20,1024,131072" -> {20, 1024, 131072}.
std::vector<Element> parse_tower_descriptor(std::string_view descriptor);
std::string format_tower_descriptor(const std::vector<Element>& kernel_orders);

}  // namespace covtrans
