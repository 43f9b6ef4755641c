#include "covtrans/descriptor.hpp"

#include <charconv>
#include <optional>
#include <string>

#include "covtrans/errors.hpp"

namespace covtrans {

namespace {

Element parse_number(std::string_view text, std::string_view token) {
  Element value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw ParseError("expected a non-negative integer", std::string(token));
  return value;
}

FiniteGroup parse_factor(std::string_view token) {
  if (token.empty()) throw ParseError("empty group factor", std::string(token));
  try {
    if (token.starts_with("EA(")) {
      if (!token.ends_with(")")) throw ParseError("unterminated EA(p,d)", std::string(token));
      const auto body = token.substr(3, token.size() - 4);
      const auto comma = body.find(',');
      if (comma == std::string_view::npos) throw ParseError("EA needs (p,d)", std::string(token));
      const Element p = parse_number(body.substr(0, comma), token);
      const Element d = parse_number(body.substr(comma + 1), token);
      if (d > 64) throw ParseError("EA rank too large", std::string(token));
      return make_elementary_abelian(p, static_cast<unsigned>(d));
    }
    const auto rest = token.substr(1);
    switch (token.front()) {
      case 'C':
        return make_cyclic(parse_number(rest, token));
      case 'D':
        return make_dihedral(parse_number(rest, token));
      case 'S': {
        const Element m = parse_number(rest, token);
        if (m > 8) throw ParseError("symmetric degree must be at most 8", std::string(token));
        return make_symmetric(static_cast<unsigned>(m));
      }
      default:
        throw ParseError("unknown group family", std::string(token));
    }
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), std::string(token));
  }
}

}  // namespace

FiniteGroup parse_group(std::string_view descriptor) {
  std::optional<FiniteGroup> result;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= descriptor.size(); ++i) {
    const bool at_end = i == descriptor.size();
    if (!at_end) {
      if (descriptor[i] == '(') ++depth;
      if (descriptor[i] == ')') --depth;
    }
    if (at_end || (descriptor[i] == 'x' && depth == 0)) {
      FiniteGroup factor = parse_factor(descriptor.substr(start, i - start));
      if (result) {
        try {
          result = make_product(*result, factor);
        } catch (const PreconditionError& e) {
          throw ParseError(e.what(), std::string(descriptor));
        }
      } else {
        result = std::move(factor);
      }
      start = i + 1;
    }
  }
  return *result;
}

std::vector<Element> parse_tower_descriptor(std::string_view descriptor) {
  constexpr std::string_view prefix = "tower:";
  if (!descriptor.starts_with(prefix))
    throw ParseError("tower descriptor must start with 'tower:'", std::string(descriptor));
  std::vector<Element> orders;
  auto body = descriptor.substr(prefix.size());
  if (body.empty()) return orders;
  while (true) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    const Element n = parse_number(item, item);
    if (n == 0) throw ParseError("kernel orders must be positive", std::string(item));
    orders.push_back(n);
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return orders;
}

std::string format_tower_descriptor(const std::vector<Element>& kernel_orders) {
  std::string out = "tower:";
  for (std::size_t i = 0; i < kernel_orders.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(kernel_orders[i]);
  }
  return out;
}

}  // namespace covtrans
