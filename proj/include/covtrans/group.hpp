#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace covtrans {

class Rng;

// Group elements are indices 0..order-1; all arithmetic goes through the
// group's oracle so large quotients never need a Cayley table.
using Element = std::uint64_t;

enum class GroupFamily { cyclic, product, dihedral, symmetric, elementary_abelian, oracle };

class GroupOracle {
 public:
  virtual ~GroupOracle() = default;
  virtual Element order() const = 0;
  virtual Element identity() const { return 0; }
  virtual Element mul(Element a, Element b) const = 0;
  virtual Element inv(Element a) const = 0;
  virtual GroupFamily family() const = 0;
  virtual std::string descriptor() const = 0;
};

// Immutable, cheaply copyable handle to a group oracle.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::shared_ptr<const GroupOracle> oracle);

  Element order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const { return oracle_->mul(a, b); }
  Element inv(Element a) const { return oracle_->inv(a); }
  // a * b^{-1}
  Element div(Element a, Element b) const { return oracle_->mul(a, oracle_->inv(b)); }

  GroupFamily family() const { return oracle_->family(); }
  std::string descriptor() const { return oracle_->descriptor(); }
  const GroupOracle& oracle() const noexcept { return *oracle_; }

 private:
  std::shared_ptr<const GroupOracle> oracle_;
  Element order_;
  Element identity_;
};

FiniteGroup make_cyclic(Element n);
// Index encoding is i_g * |h| + i_h.
FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h);
// Rotations r^i are 0..m-1, reflections s r^i are m..2m-1.
FiniteGroup make_dihedral(Element m);
// Permutations of {0..m-1} indexed by Lehmer code; (a*b)(x) = a(b(x)).
FiniteGroup make_symmetric(unsigned m);
FiniteGroup make_elementary_abelian(Element p, unsigned d);

using MulFn = std::function<Element(Element, Element)>;
using InvFn = std::function<Element(Element)>;
FiniteGroup make_oracle_group(Element order, Element identity, MulFn mul, InvFn inv,
                              std::string descriptor);

// Factors of a group built by make_product; empty for any other family.
std::vector<FiniteGroup> product_factors(const FiniteGroup& g);

// Permutation <-> Lehmer index helpers for the symmetric groups.
std::vector<unsigned> lehmer_decode(Element index, unsigned m);
Element lehmer_encode(const std::vector<unsigned>& perm);

Element element_order(const FiniteGroup& g, Element x);

struct AxiomReport {
  bool ok = true;
  bool associativity_exhaustive = false;
  std::string failure;
};

// Identity and inverse laws on every element when order <= 1e5 (sampled
// otherwise); associativity exhaustively for order <= 64, on
// `associativity_samples` random triples above that.
AxiomReport check_axioms(const FiniteGroup& g, Rng& rng, std::size_t associativity_samples = 10000);

}  // namespace covtrans
