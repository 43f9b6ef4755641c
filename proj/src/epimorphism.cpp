#include "covtrans/epimorphism.hpp"

#include <string>
#include <utility>
#include <vector>

#include "covtrans/errors.hpp"
#include "covtrans/random.hpp"

namespace covtrans {

Epimorphism::Epimorphism(FiniteGroup source, FiniteGroup target, FiniteGroup kernel, Map map,
                         Map section, Map embed_kernel, Map kernel_index)
    : source_(std::move(source)),
      target_(std::move(target)),
      kernel_(std::move(kernel)),
      map_(std::move(map)),
      section_(std::move(section)),
      embed_kernel_(std::move(embed_kernel)),
      kernel_index_(std::move(kernel_index)) {}

Epimorphism cyclic_tower_map(Element modulus_small, Element modulus_large) {
  if (modulus_small == 0 || modulus_large == 0)
    throw PreconditionError("cyclic moduli must be positive");
  if (modulus_large % modulus_small != 0)
    throw PreconditionError(std::to_string(modulus_small) + " does not divide " +
                            std::to_string(modulus_large));
  const Element small = modulus_small;
  return Epimorphism(
      make_cyclic(modulus_large), make_cyclic(modulus_small), make_cyclic(modulus_large / modulus_small),
      [small](Element x) { return x % small; }, [](Element h) { return h; },
      [small](Element k) { return k * small; }, [small](Element x) { return x / small; });
}

Epimorphism product_projection(const FiniteGroup& g, const FiniteGroup& h, ProductSide keep) {
  FiniteGroup source = make_product(g, h);
  const Element m = h.order();
  const Element g_id = g.identity();
  const Element h_id = h.identity();
  if (keep == ProductSide::left) {
    return Epimorphism(
        source, g, h, [m](Element x) { return x / m; }, [m, h_id](Element a) { return a * m + h_id; },
        [m, g_id](Element b) { return g_id * m + b; }, [m](Element x) { return x % m; });
  }
  return Epimorphism(
      source, h, g, [m](Element x) { return x % m; }, [m, g_id](Element b) { return g_id * m + b; },
      [m, h_id](Element a) { return a * m + h_id; }, [m](Element x) { return x / m; });
}

Epimorphism compose(const Epimorphism& outer, const Epimorphism& inner) {
  if (inner.target().order() != outer.source().order() ||
      inner.target().descriptor() != outer.source().descriptor())
    throw PreconditionError("cannot compose: " + inner.target().descriptor() + " vs " +
                            outer.source().descriptor());
  const FiniteGroup& src = inner.source();
  const Element inner_k = inner.kernel_order();
  const Element total = inner_k * outer.kernel_order();

  // Kernel element (a, b) <-> embed_inner(a) * section_inner(embed_outer(b)).
  auto encode = [outer, inner, src, inner_k](Element idx) {
    const Element a = idx % inner_k;
    const Element b = idx / inner_k;
    return src.mul(inner.embed_kernel(a), inner.section(outer.embed_kernel(b)));
  };
  auto decode = [outer, inner, src, inner_k](Element x) {
    const Element mid = inner.map(x);
    const Element b = outer.kernel_index(mid);
    const Element a = inner.kernel_index(src.div(x, inner.section(mid)));
    return a + inner_k * b;
  };
  FiniteGroup kernel = make_oracle_group(
      total, decode(src.identity()),
      [encode, decode, src](Element x, Element y) { return decode(src.mul(encode(x), encode(y))); },
      [encode, decode, src](Element x) { return decode(src.inv(encode(x))); },
      "ker(" + src.descriptor() + "->" + outer.target().descriptor() + ")");

  return Epimorphism(
      src, outer.target(), kernel, [outer, inner](Element x) { return outer.map(inner.map(x)); },
      [outer, inner](Element h) { return inner.section(outer.section(h)); }, encode, decode);
}

EpimorphismReport check_epimorphism(const Epimorphism& phi, Rng& rng, std::size_t samples) {
  EpimorphismReport report;
  const FiniteGroup& src = phi.source();
  const FiniteGroup& tgt = phi.target();
  auto fail = [&](std::string what) {
    report.ok = false;
    report.failure = std::move(what);
    return report;
  };

  if (phi.kernel_order() * tgt.order() != src.order())
    return fail("kernel order " + std::to_string(phi.kernel_order()) + " x target order " +
                std::to_string(tgt.order()) + " != source order " + std::to_string(src.order()));

  auto hom_ok = [&](Element a, Element b) {
    return phi.map(src.mul(a, b)) == tgt.mul(phi.map(a), phi.map(b));
  };
  if (src.order() <= 4096) {
    report.homomorphism_exhaustive = true;
    for (Element a = 0; a < src.order(); ++a)
      for (Element b = 0; b < src.order(); ++b)
        if (!hom_ok(a, b))
          return fail("homomorphism law fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      const Element a = rng.below(src.order());
      const Element b = rng.below(src.order());
      if (!hom_ok(a, b))
        return fail("homomorphism law fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }

  auto section_ok = [&](Element h) { return phi.map(phi.section(h)) == h; };
  if (tgt.order() <= 1000000) {
    for (Element h = 0; h < tgt.order(); ++h)
      if (!section_ok(h)) return fail("map(section(" + std::to_string(h) + ")) != " + std::to_string(h));
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      const Element h = rng.below(tgt.order());
      if (!section_ok(h)) return fail("map(section(" + std::to_string(h) + ")) != " + std::to_string(h));
    }
  }
  if (phi.section(tgt.identity()) != src.identity()) return fail("section(e) != e");

  const Element e_t = tgt.identity();
  if (src.order() <= 1000000) {
    std::vector<bool> hit(src.order(), false);
    for (Element k = 0; k < phi.kernel_order(); ++k) {
      const Element x = phi.embed_kernel(k);
      if (x >= src.order() || phi.map(x) != e_t)
        return fail("kernel embedding of " + std::to_string(k) + " leaves the kernel");
      if (hit[x]) return fail("kernel embedding not injective at " + std::to_string(k));
      hit[x] = true;
      if (phi.kernel_index(x) != k) return fail("kernel_index does not invert the embedding at " + std::to_string(k));
    }
    for (Element x = 0; x < src.order(); ++x)
      if (phi.map(x) == e_t && !hit[x])
        return fail("kernel element " + std::to_string(x) + " missed by the embedding");
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      const Element k = rng.below(phi.kernel_order());
      const Element x = phi.embed_kernel(k);
      if (phi.map(x) != e_t || phi.kernel_index(x) != k)
        return fail("kernel embedding inconsistent at " + std::to_string(k));
    }
  }
  return report;
}

}  // namespace covtrans
