#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <set>

#include "covtrans/certificate.hpp"
#include "covtrans/covering.hpp"
#include "covtrans/descriptor.hpp"
#include "covtrans/errors.hpp"
#include "covtrans/random.hpp"

using namespace covtrans;

namespace {

GroupSubset subset(Element n, std::vector<Element> xs) { return GroupSubset::from_elements(n, xs); }

// Every tuple of right translates X_i g_i shares an element, by direct search.
bool oracle_intersecting(const FiniteGroup& g, const std::vector<std::vector<Element>>& family) {
  const Element n = g.order();
  std::vector<Element> tuple(family.size(), 0);
  while (true) {
    bool common = false;
    for (Element z = 0; z < n && !common; ++z) {
      bool everywhere = true;
      for (std::size_t i = 0; i < family.size() && everywhere; ++i) {
        bool hit = false;
        for (const Element x : family[i]) hit = hit || g.mul(x, tuple[i]) == z;
        everywhere = hit;
      }
      common = everywhere;
    }
    if (!common) return false;
    std::size_t pos = 0;
    while (pos < tuple.size() && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos == tuple.size()) return true;
  }
}

bool oracle_translates(const FiniteGroup& g, const std::vector<Element>& y, const std::set<Element>& x) {
  for (Element h = 0; h < g.order(); ++h) {
    bool inside = true;
    for (const Element e : y) inside = inside && x.count(g.mul(h, e));
    if (inside) return true;
  }
  return false;
}

// All k-subsets of G translate into x.
bool oracle_k_covering(const FiniteGroup& g, const std::set<Element>& x, unsigned k) {
  const Element n = g.order();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) != k) continue;
    std::vector<Element> y;
    for (Element e = 0; e < n; ++e)
      if (mask >> e & 1u) y.push_back(e);
    if (!oracle_translates(g, y, x)) return false;
  }
  return true;
}

std::size_t oracle_min_cover(const FiniteGroup& g, unsigned k) {
  const Element n = g.order();
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best) continue;
    std::set<Element> x;
    for (Element e = 0; e < n; ++e)
      if (mask >> e & 1u) x.insert(e);
    if (oracle_k_covering(g, x, k)) best = size;
  }
  return best;
}

// X^{-1} X = G
bool oracle_quotients_full(const FiniteGroup& g, const std::vector<Element>& x) {
  std::set<Element> seen;
  for (const Element a : x)
    for (const Element b : x) seen.insert(g.mul(g.inv(a), b));
  return seen.size() == g.order();
}

}  // namespace

TEST_CASE("parameter formulas") {
  CHECK(feasibility(100, 2));
  CHECK(feasibility(1024, 2));
  CHECK_FALSE(feasibility(3, 3));
  CHECK((100 - std::log(2.0)) / std::log(100.0) == doctest::Approx(21.57).epsilon(1e-3));

  CHECK(sample_probability(100, 2) == doctest::Approx(0.31470).epsilon(1e-4));
  CHECK(sample_probability(512, 2) == doctest::Approx(0.16038).epsilon(1e-4));
  for (Element n : {10, 77, 1000})
    CHECK(sample_probability(n, 1) == doctest::Approx((std::log(double(n)) + std::log(2.0)) / double(n)));
  CHECK(member_size_cap(512, 2) == doctest::Approx(164.2).epsilon(1e-3));

  CHECK(covering_condition_value(1024, 2) == doctest::Approx(931.6).epsilon(1e-4));
  CHECK(covering_precondition(1024, 2));
  CHECK(covering_condition_value(131072, 3) == doctest::Approx(62280).epsilon(1e-3));
  CHECK(covering_precondition(131072, 3));
  CHECK(covering_condition_value(64, 2) == doctest::Approx(576.6).epsilon(1e-3));
  CHECK_FALSE(covering_precondition(64, 2));

  CHECK_THROWS_AS(feasibility(2, 1), PreconditionError);
  CHECK_THROWS_AS(feasibility(10, 0), PreconditionError);
}

TEST_CASE("random subsets") {
  const auto g = make_cyclic(10000);
  Rng rng(1);
  CHECK(random_subset(g, 0.0, rng).empty());
  CHECK(random_subset(g, 1.0, rng).size() == 10000);

  double total = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng r(s);
    total += static_cast<double>(random_subset(g, 0.3, r).size());
  }
  const double mean = total / 100;
  const double sd = std::sqrt(10000 * 0.3 * 0.7);
  CHECK(std::abs(mean - 3000) < 3 * sd);
}

TEST_CASE("verify_intersecting examples") {
  const auto c2 = make_cyclic(2);
  std::vector<GroupSubset> singletons{subset(2, {0}), subset(2, {0})};
  const auto fail = verify_intersecting(c2, singletons, VerificationMode::exhaustive());
  CHECK_FALSE(fail.passed);
  REQUIRE(fail.witness);
  CHECK((*fail.witness)[0] != (*fail.witness)[1]);

  const auto c7 = make_cyclic(7);
  std::vector<GroupSubset> qr{subset(7, {1, 2, 4}), subset(7, {1, 2, 4})};
  CHECK(verify_intersecting(c7, qr, VerificationMode::exhaustive()).passed);
  CHECK(oracle_intersecting(c7, {{1, 2, 4}, {1, 2, 4}}));

  std::vector<GroupSubset> full{GroupSubset::full(7), GroupSubset::full(7), GroupSubset::full(7)};
  CHECK(verify_intersecting(c7, full, VerificationMode::exhaustive()).passed);
}

TEST_CASE("verify_intersecting agrees with the tuple oracle") {
  Rng rng(42);
  for (const auto& g : {make_cyclic(9), make_dihedral(4), make_symmetric(3)}) {
    const Element n = g.order();
    for (int trial = 0; trial < 40; ++trial) {
      const unsigned k = 2 + trial % 2;
      std::vector<GroupSubset> family;
      std::vector<std::vector<Element>> raw;
      for (unsigned i = 0; i < k; ++i) {
        auto s = random_subset(g, 0.55, rng);
        family.push_back(s);
        raw.push_back(s.elements());
      }
      const auto v = verify_intersecting(g, family, VerificationMode::exhaustive());
      CHECK(v.passed == oracle_intersecting(g, raw));
      if (!v.passed) {
        // The witness tuple really has an empty intersection.
        GroupSubset common = GroupSubset::full(n);
        for (unsigned i = 0; i < k; ++i) common &= right_translate(g, family[i], (*v.witness)[i]);
        CHECK(common.empty());
      }
    }
  }
}

TEST_CASE("verify_k_covering examples") {
  const auto c4 = make_cyclic(4);
  CHECK(verify_k_covering(c4, subset(4, {0, 1, 2}), 2, VerificationMode::exhaustive()).passed);
  const auto v = verify_k_covering(c4, subset(4, {0, 1}), 2, VerificationMode::exhaustive());
  CHECK_FALSE(v.passed);
  REQUIRE(v.witness);
  CHECK(*v.witness == std::vector<Element>{0, 2});

  CHECK(verify_k_covering(c4, GroupSubset::full(4), 3, VerificationMode::exhaustive()).passed);
  CHECK_FALSE(verify_k_covering(c4, GroupSubset(4), 1, VerificationMode::exhaustive()).passed);
}

TEST_CASE("verify_k_covering agrees with the subset oracle") {
  Rng rng(7);
  for (const auto& g : {make_cyclic(8), make_dihedral(4), make_elementary_abelian(2, 3), make_symmetric(3)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const unsigned k = 1 + trial % 3;
      const auto x = random_subset(g, 0.6, rng);
      const auto xs = x.elements();
      const std::set<Element> xset(xs.begin(), xs.end());
      CHECK(verify_k_covering(g, x, k, VerificationMode::exhaustive()).passed == oracle_k_covering(g, xset, k));
    }
  }
}

TEST_CASE("translate_into") {
  const auto c9 = make_cyclic(9);
  const std::vector<Element> y{4};
  const auto g = translate_into(c9, y, subset(9, {7}));
  REQUIRE(g);
  CHECK(*g == 3);
  const std::vector<Element> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(translate_into(c9, all, GroupSubset::full(9)) == Element{0});
  const std::vector<Element> pair{0, 1};
  CHECK_FALSE(translate_into(c9, pair, subset(9, {3})));
  CHECK(translate_into(c9, std::vector<Element>{}, subset(9, {3})) == Element{0});

  // Non-abelian: the translator acts on the left.
  const auto s3 = make_symmetric(3);
  const std::vector<Element> y2{1, 2};
  const auto x2 = subset(6, {3, 5});
  const auto h = translate_into(s3, y2, x2);
  if (h) {
    CHECK(x2.contains(s3.mul(*h, 1)));
    CHECK(x2.contains(s3.mul(*h, 2)));
  }
  CHECK(h.has_value() == oracle_translates(s3, y2, {3, 5}));
}

TEST_CASE("two-covering equals the quotient-set criterion") {
  CHECK(two_covering_equiv_xxinv(make_cyclic(7), subset(7, {1, 2, 4})).is_two_covering);
  CHECK(two_covering_equiv_xxinv(make_cyclic(7), subset(7, {1, 2, 4})).difference_set_full);
  const auto c4 = two_covering_equiv_xxinv(make_cyclic(4), subset(4, {0, 1}));
  CHECK_FALSE(c4.is_two_covering);
  CHECK_FALSE(c4.difference_set_full);
  const auto full = two_covering_equiv_xxinv(make_cyclic(5), GroupSubset::full(5));
  CHECK(full.is_two_covering);
  CHECK(full.difference_set_full);

  Rng rng(99);
  for (const auto& g : {make_cyclic(12), make_dihedral(5), make_symmetric(3)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_subset(g, 0.35, rng);
      const auto r = two_covering_equiv_xxinv(g, x);
      CHECK(r.is_two_covering == r.difference_set_full);
      CHECK(r.difference_set_full == oracle_quotients_full(g, x.elements()));
    }
  }
}

TEST_CASE("intersecting family construction") {
  const auto c512 = make_cyclic(512);
  const auto family = construct_intersecting_family(c512, 2, std::nullopt, 1);
  CHECK(family.subsets.size() == 2);
  for (const auto s : family.sizes) CHECK(static_cast<double>(s) <= 2 * sample_probability(512, 2) * 512);
  CHECK(family.verification.passed);
  CHECK(family.verification.mode.is_exhaustive());
  CHECK(family.verification.checked == 512u * 512u);

  const auto again = construct_intersecting_family(c512, 2, std::nullopt, 1);
  CHECK(again.subsets == family.subsets);

  const auto k1 = construct_intersecting_family(c512, 1, std::nullopt, 3);
  CHECK_FALSE(k1.subsets[0].empty());
  CHECK(k1.verification.passed);

  const auto enlarged = construct_intersecting_family(make_cyclic(1024), 2, 512, 9);
  for (const auto& s : enlarged.subsets) CHECK(s.size() == 512);
  CHECK(enlarged.verification.passed);

  CHECK_THROWS_AS(construct_intersecting_family(make_cyclic(3), 3, std::nullopt, 1), PreconditionError);
}

TEST_CASE("k-covering construction") {
  const auto c1024 = make_cyclic(1024);
  const auto cert = construct_k_covering(c1024, 2, 7);
  CHECK(cert.set.size() <= 512);
  CHECK(cert.verification.passed);
  CHECK(oracle_quotients_full(c1024, cert.set.elements()));
  GroupSubset joined(1024);
  for (const auto& m : cert.members) joined |= m;
  CHECK(joined == cert.set);

  CHECK_THROWS_AS(construct_k_covering(make_cyclic(64), 2, 1), PreconditionError);
}

TEST_CASE("exact cov against the subset oracle") {
  CHECK(exact_cov(make_cyclic(4), 2).size == 3);
  CHECK(exact_cov(make_cyclic(7), 2).size == 3);
  for (const auto& g : {make_cyclic(2), make_cyclic(5), make_dihedral(3), make_symmetric(3)})
    CHECK(exact_cov(g, 1).size == 1);
  for (const auto& g : {make_cyclic(6), make_cyclic(8), make_dihedral(4), make_elementary_abelian(2, 3)}) {
    for (unsigned k = 1; k <= 3; ++k) {
      const auto r = exact_cov(g, k);
      CHECK(r.size == oracle_min_cover(g, k));
      CHECK(r.set.size() == r.size);
      CHECK(oracle_k_covering(g, std::set<Element>(r.set.begin(), r.set.end()), k));
    }
  }
  CHECK_THROWS_AS(exact_cov(make_cyclic(17), 2), BudgetExceeded);
  CHECK_THROWS_AS(exact_cov(make_cyclic(3), 4), PreconditionError);
}

TEST_CASE("cov bounds") {
  CHECK(cov_bounds(4, 2).lower == doctest::Approx(2.0));
  CHECK(cov_bounds(7, 2).lower == doctest::Approx(2.6458).epsilon(1e-4));
  CHECK(cov_bounds(100, 1).lower == doctest::Approx(1.0));
  for (Element n = 2; n <= 16; ++n)
    for (unsigned k = 1; k <= 2; ++k) CHECK(cov_bounds(n, k).upper <= double(n));
}

TEST_CASE("greedy shrinking") {
  const auto c100 = make_cyclic(100);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    GroupSubset x(100);
    while (x.size() < 9) x.insert(rng.below(100));
    const auto r = greedy_shrink_intersection(c100, x, 2);
    CHECK(r.final_size == 0);
    CHECK(r.translates.front() == 0);
    for (std::size_t j = 1; j < r.sizes.size(); ++j) CHECK(r.sizes[j] <= r.sizes[j - 1] * 9 / 100);
  }
  const auto full = greedy_shrink_intersection(make_cyclic(30), GroupSubset::full(30), 4);
  CHECK(full.final_size == 30);
}

TEST_CASE("certificate round trip and tampering") {
  const auto g = make_cyclic(1024);
  const auto cert = construct_k_covering(g, 2, 7);
  const auto doc = to_document(cert);
  const auto text = render(doc);
  const auto loaded = load_certificate(nlohmann::json::parse(text));
  CHECK(reverify(loaded, VerificationMode::exhaustive()).passed);
  CHECK(render(to_document(construct_k_covering(g, 2, 7))) == text);

  // Dropping elements of the union breaks integrity.
  auto broken = nlohmann::json::parse(text);
  broken["set"].erase(broken["set"].begin());
  CHECK_THROWS_AS(load_certificate(broken), IntegrityError);

  // An empty intersecting family fails re-verification with a witness.
  const auto family = construct_intersecting_family(make_cyclic(64), 2, std::nullopt, 4);
  auto fdoc = nlohmann::json::parse(render(to_document(make_cyclic(64), family)));
  fdoc["sets"][0] = nlohmann::json::array({Element{0}});
  fdoc["sizes"][0] = 1u;
  const auto weak = reverify(load_certificate(fdoc), VerificationMode::exhaustive());
  CHECK_FALSE(weak.passed);
  CHECK(weak.witness.has_value());

  fdoc["sets"][0] = nlohmann::json::array();
  fdoc["sizes"][0] = 0u;
  CHECK_FALSE(reverify(load_certificate(fdoc), VerificationMode::exhaustive()).passed);
}

TEST_CASE("exhaustive budget") {
  const auto g = make_cyclic(20000);
  std::vector<GroupSubset> family{GroupSubset::full(20000), GroupSubset::full(20000)};
  CHECK_THROWS_AS(verify_intersecting(g, family, VerificationMode::exhaustive()), BudgetExceeded);
  const auto sampled = verify_intersecting(g, family, VerificationMode::sampled(500), 3);
  CHECK(sampled.passed);
  CHECK(sampled.checked == 500);
  CHECK(parse_verification_mode("sampled:77").trials == 77);
  CHECK(parse_verification_mode("exhaustive").is_exhaustive());
  CHECK_THROWS_AS(parse_verification_mode("sampled:x"), ParseError);
}

TEST_CASE("significant-digit rounding") {
  CHECK(round_significant(164.230761704123) == 164.230761704);
  CHECK(round_significant(0.0) == 0.0);
  CHECK(round_significant(-2.5) == -2.5);
}
