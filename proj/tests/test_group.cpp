#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "covtrans/descriptor.hpp"
#include "covtrans/epimorphism.hpp"
#include "covtrans/errors.hpp"
#include "covtrans/group.hpp"
#include "covtrans/random.hpp"
#include "covtrans/subset.hpp"

using namespace covtrans;

namespace {

// Element orders by repeated multiplication, independent of element_order().
std::map<Element, std::size_t> order_histogram(const FiniteGroup& g) {
  std::map<Element, std::size_t> hist;
  for (Element x = 0; x < g.order(); ++x) {
    Element power = x;
    Element order = 1;
    while (power != g.identity()) {
      power = g.mul(power, x);
      ++order;
    }
    ++hist[order];
  }
  return hist;
}

using Perm = std::vector<unsigned>;

Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

// Symmetries of the m-gon as vertex permutations: rotation r^j and reflection s r^j.
Perm dihedral_perm(Element x, Element m) {
  Perm p(m);
  const bool reflection = x >= m;
  const Element j = x % m;
  for (Element v = 0; v < m; ++v) {
    const Element rotated = (v + j) % m;
    p[v] = static_cast<unsigned>(reflection ? (m - rotated) % m : rotated);
  }
  return p;
}

}  // namespace

TEST_CASE("cyclic arithmetic") {
  const auto c1 = make_cyclic(1);
  CHECK(c1.order() == 1);
  CHECK(c1.mul(0, 0) == 0);

  const auto c4 = make_cyclic(4);
  CHECK(c4.mul(3, 2) == 1);
  CHECK(c4.inv(3) == 1);

  const auto c7 = make_cyclic(7);
  for (Element x = 0; x < 7; ++x) CHECK(c7.inv(x) == (7 - x) % 7);
  CHECK(c7.descriptor() == "C7");
}

TEST_CASE("product groups") {
  const auto v4 = make_product(make_cyclic(2), make_cyclic(2));
  CHECK(v4.order() == 4);
  for (Element x = 0; x < 4; ++x) CHECK(v4.mul(x, x) == v4.identity());

  const auto c2c3 = make_product(make_cyclic(2), make_cyclic(3));
  CHECK(order_histogram(c2c3) == order_histogram(make_cyclic(6)));

  const auto g = make_dihedral(3);
  const auto trivial = make_product(make_cyclic(1), g);
  CHECK(trivial.order() == g.order());
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) CHECK(trivial.mul(a, b) == g.mul(a, b));

  // Mixed-radix encoding: index = i_g * |h| + i_h.
  const auto c3c5 = make_product(make_cyclic(3), make_cyclic(5));
  for (Element a = 0; a < 15; ++a)
    for (Element b = 0; b < 15; ++b) {
      const Element expect = ((a / 5 + b / 5) % 3) * 5 + (a % 5 + b % 5) % 5;
      CHECK(c3c5.mul(a, b) == expect);
    }
}

TEST_CASE("dihedral matches the vertex permutation representation") {
  for (Element m : {3, 4, 5, 8}) {
    const auto d = make_dihedral(m);
    REQUIRE(d.order() == 2 * m);
    std::map<Perm, Element> index;
    for (Element x = 0; x < 2 * m; ++x) index[dihedral_perm(x, m)] = x;
    REQUIRE(index.size() == 2 * m);
    for (Element a = 0; a < 2 * m; ++a) {
      for (Element b = 0; b < 2 * m; ++b)
        CHECK(d.mul(a, b) == index.at(compose(dihedral_perm(a, m), dihedral_perm(b, m))));
      CHECK(d.mul(a, d.inv(a)) == d.identity());
    }
  }
  const auto d3 = make_dihedral(3);
  std::size_t involutions = 0;
  for (Element x = 3; x < 6; ++x) involutions += element_order(d3, x) == 2;
  CHECK(involutions == 3);
}

TEST_CASE("symmetric groups compose permutations") {
  const auto s3 = make_symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.identity() == 0);
  CHECK(lehmer_decode(0, 3) == Perm{0, 1, 2});

  const auto s4 = make_symmetric(4);
  std::vector<Perm> all;
  Perm p{0, 1, 2, 3};
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  REQUIRE(all.size() == 24);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(lehmer_encode(all[i]) == i);
  for (Element a = 0; a < 24; ++a)
    for (Element b = 0; b < 24; ++b) CHECK(s4.mul(a, b) == lehmer_encode(compose(all[a], all[b])));
  CHECK_THROWS_AS(make_symmetric(9), PreconditionError);
}

TEST_CASE("elementary abelian groups add vectors") {
  const auto ea = make_elementary_abelian(2, 3);
  CHECK(ea.order() == 8);
  for (Element x = 1; x < 8; ++x) CHECK(element_order(ea, x) == 2);

  const auto e3 = make_elementary_abelian(3, 2);
  for (Element a = 0; a < 9; ++a)
    for (Element b = 0; b < 9; ++b) {
      const Element expect = ((a / 3 + b / 3) % 3) * 3 + (a % 3 + b % 3) % 3;
      CHECK(e3.mul(a, b) == expect);
    }
  CHECK_THROWS_AS(make_elementary_abelian(4, 2), PreconditionError);
}

TEST_CASE("axiom checker") {
  Rng rng(11);
  for (const auto& g : {make_cyclic(12), make_dihedral(5), make_symmetric(4), make_elementary_abelian(3, 2),
                        make_product(make_dihedral(3), make_cyclic(4))}) {
    const auto report = check_axioms(g, rng);
    CHECK_MESSAGE(report.ok, g.descriptor() << ": " << report.failure);
  }
  // x*y = x - y is not associative.
  const auto broken = make_oracle_group(
      5, 0, [](Element a, Element b) { return (a + 5 - b) % 5; }, [](Element a) { return a; }, "broken");
  CHECK_FALSE(check_axioms(broken, rng).ok);
}

TEST_CASE("descriptor parsing") {
  CHECK(parse_group("C4096").order() == 4096);
  CHECK(parse_group("D5").order() == 10);
  CHECK(parse_group("S4").order() == 24);
  CHECK(parse_group("EA(2,5)").order() == 32);
  CHECK(parse_group("C2xD3").order() == 12);
  CHECK(parse_group("C2xD3").descriptor() == "C2xD3");
  CHECK_THROWS_AS(parse_group("Q8"), ParseError);
  CHECK_THROWS_AS(parse_group("C"), ParseError);
  CHECK_THROWS_AS(parse_group("C0"), ParseError);
  CHECK(parse_tower_descriptor("tower:20,1024") == std::vector<Element>{20, 1024});
  CHECK(format_tower_descriptor({20, 1024}) == "tower:20,1024");
  CHECK_THROWS_AS(parse_tower_descriptor("20,1024"), ParseError);
}

TEST_CASE("subset translates") {
  const auto c6 = make_cyclic(6);
  const std::vector<Element> xs{0, 1, 4};
  const auto x = GroupSubset::from_elements(6, xs);
  CHECK(left_translate(c6, 2, x).elements() == std::vector<Element>{0, 2, 3});
  CHECK(right_translate(c6, x, 5).elements() == std::vector<Element>{0, 3, 5});
  const std::vector<Element> bad{6};
  CHECK_THROWS_AS(GroupSubset::from_elements(6, bad), PreconditionError);

  // Left and right translates differ in a non-abelian group.
  const auto s3 = make_symmetric(3);
  const std::vector<Element> one{1};
  const auto y = GroupSubset::from_elements(6, one);
  for (Element g = 0; g < 6; ++g) {
    CHECK(left_translate(s3, g, y).elements() == std::vector<Element>{s3.mul(g, 1)});
    CHECK(right_translate(s3, y, g).elements() == std::vector<Element>{s3.mul(1, g)});
  }
}

TEST_CASE("cyclic tower maps") {
  const auto phi = cyclic_tower_map(20, 20480);
  CHECK(phi.kernel_order() == 1024);
  const auto id = cyclic_tower_map(7, 7);
  CHECK(id.kernel_order() == 1);
  const auto collapse = cyclic_tower_map(1, 9);
  CHECK(collapse.target().order() == 1);
  CHECK(collapse.kernel_order() == 9);
  CHECK_THROWS_AS(cyclic_tower_map(3, 10), PreconditionError);

  // lift is the inverse of (map, fiber_offset).
  for (Element x = 0; x < 20480; x += 37) {
    CHECK(phi.map(x) == x % 20);
    CHECK(phi.lift(phi.map(x), phi.fiber_offset(x)) == x);
  }
  Rng rng(3);
  CHECK(check_epimorphism(cyclic_tower_map(6, 48), rng).ok);
}

TEST_CASE("product projections and composition") {
  Rng rng(5);
  const auto d3 = make_dihedral(3);
  const auto c4 = make_cyclic(4);
  const auto left = product_projection(d3, c4, ProductSide::left);
  const auto right = product_projection(d3, c4, ProductSide::right);
  CHECK(left.kernel_order() == 4);
  CHECK(right.kernel_order() == 6);
  CHECK(check_epimorphism(left, rng).ok);
  CHECK(check_epimorphism(right, rng).ok);

  const auto composed = compose(cyclic_tower_map(4, 16), cyclic_tower_map(16, 96));
  CHECK(composed.source().order() == 96);
  CHECK(composed.target().order() == 4);
  CHECK(composed.kernel_order() == 24);
  CHECK(check_epimorphism(composed, rng).ok);
  for (Element x = 0; x < 96; ++x) {
    CHECK(composed.map(x) == x % 4);
    CHECK(composed.lift(composed.map(x), composed.fiber_offset(x)) == x);
  }
}
