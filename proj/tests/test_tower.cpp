#include <doctest.h>

#include <cmath>
#include <set>

#include "covtrans/errors.hpp"
#include "covtrans/random.hpp"
#include "covtrans/tower.hpp"
#include "covtrans/tower_io.hpp"

using namespace covtrans;

namespace {

const Tower& tower_20_1024() {
  static const Tower tower = build_tower(TowerSpec({20, 1024}), 3);
  return tower;
}

// Direct search for g with gY inside the dense set x.
bool oracle_translates(Element n, const std::vector<Element>& y, const GroupSubset& x) {
  for (Element g = 0; g < n; ++g) {
    bool inside = true;
    for (const Element e : y) inside = inside && x.contains((g + e) % n);
    if (inside) return true;
  }
  return false;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return b == 0 ? a : gcd(b, a % b); }

}  // namespace

TEST_CASE("stage admissibility values") {
  CHECK(check_ragaszt(1024, 1, true));
  CHECK(ragaszt_value(1024, 1, true) == doctest::Approx(931.6).epsilon(1e-4));
  CHECK(check_ragaszt(20, 0, true));
  CHECK(ragaszt_value(20, 0, true) == doctest::Approx(14.75).epsilon(1e-3));
  CHECK_FALSE(check_ragaszt(64, 1, true));
  CHECK(ragaszt_value(64, 1, true) == doctest::Approx(576.6).epsilon(1e-3));
  CHECK(check_ragaszt(64, 1, false));
  CHECK(ragaszt_value(131072, 2, true) == doctest::Approx(62280).epsilon(1e-3));
  CHECK_THROWS_AS(check_ragaszt(2, 0, true), PreconditionError);

  const TowerSpec bad({20, 64});
  CHECK_FALSE(bad.admissible());
  CHECK_THROWS_AS(build_tower(bad, 1), PreconditionError);
  CHECK(TowerSpec({20, 1024, 131072}).admissible());
}

TEST_CASE("tower spec orders") {
  const TowerSpec spec({20, 1024, 131072});
  CHECK(spec.depth() == 3);
  CHECK(spec.group_order(0) == 1);
  CHECK(spec.group_order(1) == 20);
  CHECK(spec.group_order(2) == 20480);
  CHECK(spec.group_order(3) == 2684354560ULL);
  CHECK(spec.step(2).kernel_order() == 1024);
  CHECK(spec.project(2684354559ULL, 3, 1) == 2684354559ULL % 20);
  CHECK(spec.descriptor() == "tower:20,1024,131072");
}

TEST_CASE("depth zero tower") {
  const Tower t = build_tower(TowerSpec(std::vector<Element>{}), 1);
  CHECK(t.depth() == 0);
  CHECK(t.stage(0).size == 1);
  CHECK(t.stage(0).measure.str() == "1/1");
  CHECK(t.contains(0, 0));
}

TEST_CASE("extend_covering lifts small subsets") {
  const auto phi = cyclic_tower_map(20, 20480);
  std::vector<Element> base_elements{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto base = GroupSubset::from_elements(20, base_elements);
  const ExtendedCover cover = extend_covering(phi, base, 1, 5);
  CHECK(cover.size() <= 1024 * 10 / 2);
  const GroupSubset lifted = cover.enumerate(phi);
  CHECK(lifted.size() == cover.size());
  for (Element g = 0; g < 20480; ++g) CHECK(lifted.contains(g) == cover.contains(phi, base, g));

  // Pairs whose image translates into the base translate into the lift.
  Rng rng(8);
  int lifted_pairs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<Element> y{rng.below(20480), rng.below(20480)};
    const std::vector<Element> image{y[0] % 20, y[1] % 20};
    if (!oracle_translates(20, image, base)) continue;
    ++lifted_pairs;
    CHECK(oracle_translates(20480, y, lifted));
  }
  CHECK(lifted_pairs > 0);

  const ExtendedCover trivial = extend_covering(phi, base, 0, 5);
  CHECK(trivial.kernel_cover.elements() == std::vector<Element>{0});
  CHECK(trivial.size() == 10);
}

TEST_CASE("tower (20, 1024) stages") {
  const Tower& t = tower_20_1024();
  CHECK(t.stage(1).size <= 10);
  CHECK(t.stage(2).size <= 5120);
  for (unsigned i = 0; i <= 2; ++i) {
    const auto& s = t.stage(i);
    CHECK(s.size * (std::uint64_t{1} << i) <= s.group_order);
    CHECK(s.measure.numerator * s.group_order == s.size * s.measure.denominator);
    CHECK(gcd(s.measure.numerator, s.measure.denominator) == 1);
  }
  CHECK(t.stage(2).projection_exhaustive);
}

TEST_CASE("dense enumeration agrees with factored membership") {
  const Tower& t = tower_20_1024();
  const GroupSubset dense = t.enumerate(2);
  CHECK(dense.size() == t.stage(2).size);
  // Independent description: x in X_2 iff x mod 20 in X_1 and the fiber offset lies in L_2.
  const GroupSubset x1 = t.enumerate(1);
  const GroupSubset& l2 = t.stage(2).kernel_cover;
  std::size_t mismatches = 0;
  for (Element x = 0; x < 20480; ++x) {
    const bool oracle = x1.contains(x % 20) && l2.contains((x - x % 20) / 20);
    mismatches += dense.contains(x) != oracle;
    mismatches += t.contains(2, x) != oracle;
    if (!x1.contains(x % 20)) CHECK_FALSE(t.contains(2, x));
  }
  CHECK(mismatches == 0);
}

TEST_CASE("thin sets obey the thinness bound") {
  const TowerSpec spec({20, 1024, 131072});
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const ThinSet y = sample_thin_set(spec, 3, rng, 0.8);
    CHECK(is_thin(spec, y));
    for (unsigned i = 0; i <= 3; ++i) {
      std::set<Element> image;
      for (const Element e : y.elements) image.insert(spec.project(e, 3, i));
      CHECK(image.size() <= thin_bound(i));
      CHECK(std::vector<Element>(image.begin(), image.end()) == y.projections[i]);
    }
  }
  const TowerSpec small({20, 1024});
  CHECK_THROWS_AS(make_thin_set(small, 2, {0, 1}), PreconditionError);
  CHECK(make_thin_set(small, 2, {0, 20}).elements.size() == 2);
  CHECK_THROWS_AS(make_thin_set(small, 2, {0, 20, 40}), PreconditionError);
  CHECK(make_thin_set(small, 1, {7}).elements.size() == 1);
}

TEST_CASE("slaloms") {
  const TowerSpec spec({20, 1024});
  const Element x = 12345;
  Slalom s{2, {{0}, {x % 20}, {x}}};
  const ThinSet y = slalom_to_thin(spec, s);
  CHECK(y.elements == std::vector<Element>{x});

  Slalom wide{2, {{0}, {5}, {5, 26}}};
  CHECK(slalom_to_thin(spec, wide).elements == std::vector<Element>{5});

  Slalom empty{2, {{0}, {}, {5, 25}}};
  CHECK(slalom_to_thin(spec, empty).elements.empty());
}

TEST_CASE("translate_thin") {
  const Tower& t = tower_20_1024();
  const TowerSpec& spec = t.spec();

  const ThinTranslation none = translate_thin(t, make_thin_set(spec, 2, {}));
  CHECK(none.translator == 0);
  CHECK(none.verified);

  const ThinTranslation single = translate_thin(t, make_thin_set(spec, 2, {777}));
  CHECK(single.verified);
  CHECK(t.contains(2, (single.translator + 777) % 20480));

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const ThinSet y = sample_thin_set(spec, 2, rng);
    const ThinTranslation r = translate_thin(t, y);
    CHECK(r.verified);
    for (const Element e : y.elements) CHECK(t.contains(2, (r.translator + e) % 20480));
    REQUIRE(r.translator_sets.size() == 3);
    // T_i: translators at level i, pulled back to G_2, checked by direct scan.
    for (unsigned i = 0; i <= 2; ++i) {
      const GroupSubset xi = t.enumerate(i);
      const Element m = spec.group_order(i);
      for (Element g = 0; g < 20480; g += 97) {
        bool inside = true;
        for (const Element e : y.elements) inside = inside && xi.contains((g + e) % m);
        CHECK(r.translator_sets[i].contains(g) == inside);
      }
    }
    CHECK(r.translator_sets[2].is_subset_of(r.translator_sets[1]));
    CHECK(r.translator_sets[1].is_subset_of(r.translator_sets[0]));
    CHECK(r.nested);
    CHECK(r.fiber_unions);
    CHECK(r.translator_in_all);
  }
}

TEST_CASE("dimension estimate") {
  const TowerSpec spec({20, 64});
  std::vector<Element> all(spec.group_order(2));
  for (Element x = 0; x < all.size(); ++x) all[x] = x;
  CHECK(dimension_estimate(spec, 2, all) == doctest::Approx(1.0));
  CHECK(dimension_estimate(spec, 2, {33}) == doctest::Approx(0.0));

  const TowerSpec big({20, 1024});
  Rng rng(2);
  const double cap = std::max(std::log(1.0) / std::log(20.0), std::log(2.0) / std::log(20480.0));
  for (int trial = 0; trial < 100; ++trial) {
    const ThinSet y = sample_thin_set(big, 2, rng);
    CHECK(dimension_estimate(big, 2, y.elements) <= cap + 1e-12);
  }
}

TEST_CASE("tower documents round trip") {
  const Tower& t = tower_20_1024();
  const std::string text = to_document(t).dump(2);
  const Tower loaded = load_tower(nlohmann::json::parse(text));
  CHECK(to_document(loaded).dump(2) == text);
  for (Element x = 0; x < 20480; x += 13) CHECK(loaded.contains(2, x) == t.contains(2, x));

  auto tampered = nlohmann::json::parse(text);
  tampered["stages"][2]["size"] = 1u;
  CHECK_THROWS_AS(load_tower(tampered), IntegrityError);
}

TEST_CASE("depth three tower in factored form") {
  const Tower t = build_tower(TowerSpec({20, 1024, 131072}), 3, {}, 2000);
  const auto& s3 = t.stage(3);
  CHECK(s3.group_order == 2684354560ULL);
  CHECK_FALSE(s3.dense.has_value());
  CHECK(s3.size == s3.kernel_cover.size() * t.stage(2).size);
  CHECK(s3.size * 8 <= s3.group_order);

  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Element x = t.sample_member(3, rng);
    CHECK(t.contains(3, x));
    CHECK(t.contains(2, x % 20480));
    const ThinTranslation r = translate_thin(t, sample_thin_set(t.spec(), 3, rng));
    CHECK(r.verified);
    CHECK(r.translator_sets.empty());
  }
}
