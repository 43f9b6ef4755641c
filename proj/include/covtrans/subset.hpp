#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "covtrans/group.hpp"

namespace covtrans {

// Dense subset of {0, ..., universe-1}.
class GroupSubset {
 public:
  static constexpr Element npos = static_cast<Element>(-1);

  GroupSubset() = default;
  explicit GroupSubset(Element universe) : bits_(universe) {}

  static GroupSubset full(Element universe);
  // Throws PreconditionError for out-of-range members.
  static GroupSubset from_elements(Element universe, std::span<const Element> members);

  Element universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }

  bool contains(Element x) const { return x < bits_.size() && bits_.test(x); }
  void insert(Element x) { bits_.set(x); }
  void erase(Element x) { bits_.reset(x); }

  Element first() const { return bits_.find_first(); }
  Element next(Element x) const { return bits_.find_next(x); }

  // Ascending member list.
  std::vector<Element> elements() const;

  bool intersects(const GroupSubset& other) const { return bits_.intersects(other.bits_); }
  bool is_subset_of(const GroupSubset& other) const { return bits_.is_subset_of(other.bits_); }
  std::size_t intersection_size(const GroupSubset& other) const { return (bits_ & other.bits_).count(); }

  GroupSubset& operator&=(const GroupSubset& other) {
    bits_ &= other.bits_;
    return *this;
  }
  GroupSubset& operator|=(const GroupSubset& other) {
    bits_ |= other.bits_;
    return *this;
  }

  friend bool operator==(const GroupSubset& a, const GroupSubset& b) { return a.bits_ == b.bits_; }

  const boost::dynamic_bitset<std::uint64_t>& bits() const noexcept { return bits_; }

 private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

// gY
GroupSubset left_translate(const FiniteGroup& group, Element g, const GroupSubset& y);
// Xg
GroupSubset right_translate(const FiniteGroup& group, const GroupSubset& x, Element g);

}  // namespace covtrans
