#include "covtrans/subset.hpp"

#include <string>

#include "covtrans/errors.hpp"

namespace covtrans {

GroupSubset GroupSubset::full(Element universe) {
  GroupSubset s(universe);
  s.bits_.set();
  return s;
}

GroupSubset GroupSubset::from_elements(Element universe, std::span<const Element> members) {
  GroupSubset s(universe);
  for (const Element x : members) {
    if (x >= universe)
      throw PreconditionError("element " + std::to_string(x) + " outside group of order " +
                              std::to_string(universe));
    s.insert(x);
  }
  return s;
}

std::vector<Element> GroupSubset::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for (Element x = first(); x != npos; x = next(x)) out.push_back(x);
  return out;
}

GroupSubset left_translate(const FiniteGroup& group, Element g, const GroupSubset& y) {
  GroupSubset out(y.universe());
  for (Element x = y.first(); x != GroupSubset::npos; x = y.next(x)) out.insert(group.mul(g, x));
  return out;
}

GroupSubset right_translate(const FiniteGroup& group, const GroupSubset& x, Element g) {
  GroupSubset out(x.universe());
  for (Element a = x.first(); a != GroupSubset::npos; a = x.next(a)) out.insert(group.mul(a, g));
  return out;
}

}  // namespace covtrans
