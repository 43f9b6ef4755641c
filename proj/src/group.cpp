#include "covtrans/group.hpp"

#include <limits>
#include <numeric>
#include <utility>

#include "covtrans/errors.hpp"
#include "covtrans/random.hpp"

namespace covtrans {

namespace {

Element add_mod(Element a, Element b, Element n) { return a >= n - b ? a - (n - b) : a + b; }

class CyclicOracle final : public GroupOracle {
 public:
  explicit CyclicOracle(Element n) : n_(n) {}
  Element order() const override { return n_; }
  Element mul(Element a, Element b) const override { return add_mod(a, b, n_); }
  Element inv(Element a) const override { return a == 0 ? 0 : n_ - a; }
  GroupFamily family() const override { return GroupFamily::cyclic; }
  std::string descriptor() const override { return "C" + std::to_string(n_); }

 private:
  Element n_;
};

class ProductOracle final : public GroupOracle {
 public:
  ProductOracle(FiniteGroup g, FiniteGroup h) : g_(std::move(g)), h_(std::move(h)) {}
  Element order() const override { return g_.order() * h_.order(); }
  Element identity() const override { return g_.identity() * h_.order() + h_.identity(); }
  Element mul(Element a, Element b) const override {
    const Element m = h_.order();
    return g_.mul(a / m, b / m) * m + h_.mul(a % m, b % m);
  }
  Element inv(Element a) const override {
    const Element m = h_.order();
    return g_.inv(a / m) * m + h_.inv(a % m);
  }
  GroupFamily family() const override { return GroupFamily::product; }
  std::string descriptor() const override { return g_.descriptor() + "x" + h_.descriptor(); }

  const FiniteGroup& left() const { return g_; }
  const FiniteGroup& right() const { return h_; }

 private:
  FiniteGroup g_;
  FiniteGroup h_;
};

class DihedralOracle final : public GroupOracle {
 public:
  explicit DihedralOracle(Element m) : m_(m) {}
  Element order() const override { return 2 * m_; }
  Element mul(Element a, Element b) const override {
    const bool ra = a >= m_;
    const bool rb = b >= m_;
    const Element ia = ra ? a - m_ : a;
    const Element ib = rb ? b - m_ : b;
    const Element neg_a = ia == 0 ? 0 : m_ - ia;
    // r^a s = s r^{-a}
    if (!ra && !rb) return add_mod(ia, ib, m_);
    if (!ra && rb) return m_ + add_mod(neg_a, ib, m_);
    if (ra && !rb) return m_ + add_mod(ia, ib, m_);
    return add_mod(neg_a, ib, m_);
  }
  Element inv(Element a) const override {
    if (a >= m_) return a;
    return a == 0 ? 0 : m_ - a;
  }
  GroupFamily family() const override { return GroupFamily::dihedral; }
  std::string descriptor() const override { return "D" + std::to_string(m_); }

 private:
  Element m_;
};

class SymmetricOracle final : public GroupOracle {
 public:
  explicit SymmetricOracle(unsigned m) : m_(m) {
    order_ = 1;
    for (unsigned i = 2; i <= m; ++i) order_ *= i;
  }
  Element order() const override { return order_; }
  Element mul(Element a, Element b) const override {
    const auto pa = lehmer_decode(a, m_);
    const auto pb = lehmer_decode(b, m_);
    std::vector<unsigned> out(m_);
    for (unsigned x = 0; x < m_; ++x) out[x] = pa[pb[x]];
    return lehmer_encode(out);
  }
  Element inv(Element a) const override {
    const auto pa = lehmer_decode(a, m_);
    std::vector<unsigned> out(m_);
    for (unsigned x = 0; x < m_; ++x) out[pa[x]] = x;
    return lehmer_encode(out);
  }
  GroupFamily family() const override { return GroupFamily::symmetric; }
  std::string descriptor() const override { return "S" + std::to_string(m_); }

 private:
  unsigned m_;
  Element order_;
};

class ElementaryAbelianOracle final : public GroupOracle {
 public:
  ElementaryAbelianOracle(Element p, unsigned d, Element order) : p_(p), d_(d), order_(order) {}
  Element order() const override { return order_; }
  Element mul(Element a, Element b) const override {
    Element out = 0;
    Element place = 1;
    for (unsigned i = 0; i < d_; ++i) {
      out += add_mod(a % p_, b % p_, p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }
  Element inv(Element a) const override {
    Element out = 0;
    Element place = 1;
    for (unsigned i = 0; i < d_; ++i) {
      const Element digit = a % p_;
      out += (digit == 0 ? 0 : p_ - digit) * place;
      a /= p_;
      place *= p_;
    }
    return out;
  }
  GroupFamily family() const override { return GroupFamily::elementary_abelian; }
  std::string descriptor() const override {
    return "EA(" + std::to_string(p_) + "," + std::to_string(d_) + ")";
  }

 private:
  Element p_;
  unsigned d_;
  Element order_;
};

class FunctionOracle final : public GroupOracle {
 public:
  FunctionOracle(Element order, Element identity, MulFn mul, InvFn inv, std::string descriptor)
      : order_(order),
        identity_(identity),
        mul_(std::move(mul)),
        inv_(std::move(inv)),
        descriptor_(std::move(descriptor)) {}
  Element order() const override { return order_; }
  Element identity() const override { return identity_; }
  Element mul(Element a, Element b) const override { return mul_(a, b); }
  Element inv(Element a) const override { return inv_(a); }
  GroupFamily family() const override { return GroupFamily::oracle; }
  std::string descriptor() const override { return descriptor_; }

 private:
  Element order_;
  Element identity_;
  MulFn mul_;
  InvFn inv_;
  std::string descriptor_;
};

bool is_prime(Element p) {
  if (p < 2) return false;
  for (Element q = 2; q <= p / q; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

FiniteGroup::FiniteGroup(std::shared_ptr<const GroupOracle> oracle)
    : oracle_(std::move(oracle)), order_(oracle_->order()), identity_(oracle_->identity()) {}

FiniteGroup make_cyclic(Element n) {
  if (n == 0) throw PreconditionError("cyclic group order must be positive");
  return FiniteGroup(std::make_shared<CyclicOracle>(n));
}

FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() > std::numeric_limits<Element>::max() / h.order())
    throw PreconditionError("product order overflows 64-bit element indices: " + g.descriptor() +
                            "x" + h.descriptor());
  return FiniteGroup(std::make_shared<ProductOracle>(g, h));
}

FiniteGroup make_dihedral(Element m) {
  if (m == 0 || m > std::numeric_limits<Element>::max() / 2)
    throw PreconditionError("dihedral parameter out of range: " + std::to_string(m));
  return FiniteGroup(std::make_shared<DihedralOracle>(m));
}

FiniteGroup make_symmetric(unsigned m) {
  if (m == 0 || m > 8) throw PreconditionError("symmetric group degree must be in 1..8");
  return FiniteGroup(std::make_shared<SymmetricOracle>(m));
}

FiniteGroup make_elementary_abelian(Element p, unsigned d) {
  if (!is_prime(p)) throw PreconditionError("elementary abelian group needs a prime, got " + std::to_string(p));
  if (d == 0) throw PreconditionError("elementary abelian rank must be positive");
  Element order = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (order > std::numeric_limits<Element>::max() / p)
      throw PreconditionError("elementary abelian order overflows 64-bit element indices");
    order *= p;
  }
  return FiniteGroup(std::make_shared<ElementaryAbelianOracle>(p, d, order));
}

FiniteGroup make_oracle_group(Element order, Element identity, MulFn mul, InvFn inv,
                              std::string descriptor) {
  if (order == 0) throw PreconditionError("group order must be positive");
  return FiniteGroup(std::make_shared<FunctionOracle>(order, identity, std::move(mul), std::move(inv),
                                                      std::move(descriptor)));
}

std::vector<FiniteGroup> product_factors(const FiniteGroup& g) {
  const auto* product = dynamic_cast<const ProductOracle*>(&g.oracle());
  if (product == nullptr) return {};
  return {product->left(), product->right()};
}

std::vector<unsigned> lehmer_decode(Element index, unsigned m) {
  std::vector<Element> factorial(m + 1, 1);
  for (unsigned i = 1; i <= m; ++i) factorial[i] = factorial[i - 1] * i;
  std::vector<unsigned> available(m);
  std::iota(available.begin(), available.end(), 0U);
  std::vector<unsigned> perm(m);
  for (unsigned i = 0; i < m; ++i) {
    const Element f = factorial[m - 1 - i];
    const auto digit = static_cast<std::size_t>(index / f);
    index %= f;
    perm[i] = available[digit];
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return perm;
}

Element lehmer_encode(const std::vector<unsigned>& perm) {
  const auto m = static_cast<unsigned>(perm.size());
  Element index = 0;
  for (unsigned i = 0; i < m; ++i) {
    Element smaller = 0;
    for (unsigned j = i + 1; j < m; ++j)
      if (perm[j] < perm[i]) ++smaller;
    index = index * (m - i) + smaller;
  }
  return index;
}

Element element_order(const FiniteGroup& g, Element x) {
  Element power = x;
  Element k = 1;
  while (power != g.identity()) {
    power = g.mul(power, x);
    ++k;
  }
  return k;
}

AxiomReport check_axioms(const FiniteGroup& g, Rng& rng, std::size_t associativity_samples) {
  AxiomReport report;
  const Element n = g.order();
  const Element e = g.identity();
  auto fail = [&](std::string what) {
    report.ok = false;
    report.failure = g.descriptor() + ": " + std::move(what);
    return report;
  };

  auto check_unit = [&](Element x) -> bool {
    if (g.mul(e, x) != x || g.mul(x, e) != x) {
      fail("identity law fails at " + std::to_string(x));
      return false;
    }
    if (g.mul(x, g.inv(x)) != e || g.mul(g.inv(x), x) != e) {
      fail("inverse law fails at " + std::to_string(x));
      return false;
    }
    return true;
  };
  if (n <= 100000) {
    for (Element x = 0; x < n; ++x)
      if (!check_unit(x)) return report;
  } else {
    for (std::size_t s = 0; s < associativity_samples; ++s)
      if (!check_unit(rng.below(n))) return report;
  }

  auto check_assoc = [&](Element a, Element b, Element c) -> bool {
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
      fail("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")");
      return false;
    }
    return true;
  };
  if (n <= 64) {
    report.associativity_exhaustive = true;
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (!check_assoc(a, b, c)) return report;
  } else {
    for (std::size_t s = 0; s < associativity_samples; ++s) {
      const Element a = rng.below(n);
      const Element b = rng.below(n);
      const Element c = rng.below(n);
      if (!check_assoc(a, b, c)) return report;
    }
  }
  return report;
}

}  // namespace covtrans
