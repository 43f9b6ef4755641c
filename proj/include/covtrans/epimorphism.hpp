#pragma once

#include <functional>
#include <optional>

#include "covtrans/group.hpp"

namespace covtrans {

// Quotient map source -> target with a canonical section and the kernel as a
// group in its own right. Supported shapes: cyclic reductions, product
// projections and compositions of those.
class Epimorphism {
 public:
  using Map = std::function<Element(Element)>;

  Epimorphism(FiniteGroup source, FiniteGroup target, FiniteGroup kernel, Map map, Map section,
              Map embed_kernel, Map kernel_index);

  const FiniteGroup& source() const noexcept { return source_; }
  const FiniteGroup& target() const noexcept { return target_; }
  const FiniteGroup& kernel() const noexcept { return kernel_; }
  Element kernel_order() const noexcept { return kernel_.order(); }

  Element map(Element x) const { return map_(x); }
  // One fixed preimage per target element; section(e) = e.
  Element section(Element h) const { return section_(h); }
  // Kernel-group index -> source element.
  Element embed_kernel(Element k) const { return embed_kernel_(k); }
  // Source element in the kernel -> kernel-group index. Only meaningful when
  // map(x) is the identity.
  Element kernel_index(Element x) const { return kernel_index_(x); }

  // Kernel offset of x relative to the section representative of its coset:
  // the n in N with x = n * section(map(x)).
  Element fiber_offset(Element x) const {
    return kernel_index(source_.div(x, section(map(x))));
  }
  // Inverse of (map, fiber_offset): embed_kernel(k) * section(h).
  Element lift(Element h, Element k) const { return source_.mul(embed_kernel(k), section(h)); }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  FiniteGroup kernel_;
  Map map_;
  Map section_;
  Map embed_kernel_;
  Map kernel_index_;
};

// C_large -> C_small, x -> x mod small. Kernel <small> ~ C_{large/small},
// section = least nonnegative representative.
Epimorphism cyclic_tower_map(Element modulus_small, Element modulus_large);

enum class ProductSide { left, right };

// g x h -> the kept factor; the kernel is the other factor and the section
// puts the identity in the dropped coordinate.
Epimorphism product_projection(const FiniteGroup& g, const FiniteGroup& h, ProductSide keep);

// outer o inner : inner.source() -> outer.target(). The kernel group is the
// preimage of ker(outer), indexed as a + |ker inner| * b where b indexes
// ker(outer) and a indexes the offset in ker(inner).
Epimorphism compose(const Epimorphism& outer, const Epimorphism& inner);

struct EpimorphismReport {
  bool ok = true;
  bool homomorphism_exhaustive = false;
  std::string failure;
};

// Homomorphism law (exhaustive for source order <= 4096, sampled otherwise),
// map(section(h)) = h (exhaustive for target order <= 1e6), order identity,
// and that the kernel embedding lands exactly on map^{-1}(e) (exhaustive for
// source order <= 1e6).
EpimorphismReport check_epimorphism(const Epimorphism& phi, Rng& rng, std::size_t samples = 10000);

}  // namespace covtrans
