#include "covtrans/covering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "covtrans/budget.hpp"

namespace covtrans {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Below this many elementary steps a scan runs on the calling thread.
constexpr std::uint64_t kParallelThreshold = 1ULL << 18;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) out = saturating_mul(out, base);
  return out;
}

std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(out);
}

std::optional<std::uint64_t> run_scan(
    std::uint64_t count, std::uint64_t work,
    const std::function<std::optional<std::uint64_t>(std::uint64_t, std::uint64_t)>& scan) {
  if (work < kParallelThreshold) return scan(0, count);
  return parallel_first(count, scan);
}

std::string join(const std::vector<Element>& xs) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  out << ')';
  return out.str();
}

// Lexicographic rank of a tuple in {0..n-1}^k.
std::uint64_t tuple_rank(const std::vector<Element>& tuple, Element n) {
  std::uint64_t rank = 0;
  for (const Element g : tuple) rank = rank * n + g;
  return rank;
}

Verification exhaustive_intersecting(const FiniteGroup& group, std::span<const GroupSubset> family) {
  const Element n = group.order();
  const auto k = static_cast<unsigned>(family.size());
  const std::uint64_t total = saturating_pow(n, k);
  if (total > verification_budget())
    throw BudgetExceeded("exhaustive intersecting verification needs n^k = " +
                         (total == kSaturated ? std::string("overflow") : std::to_string(total)) +
                         " tuples, budget is " + std::to_string(verification_budget()) +
                         "; use sampled mode");

  Verification v;
  v.mode = VerificationMode::exhaustive();
  if (k == 0) {
    v.passed = true;
    return v;
  }
  if (k == 1) {
    // X_1 g is a bijective image of X_1.
    v.passed = !family[0].empty();
    v.checked = v.passed ? n : 1;
    if (!v.passed) v.witness = std::vector<Element>{0};
    return v;
  }

  // translates[j][g] = X_j g for j >= 1.
  std::vector<std::vector<GroupSubset>> translates(k);
  for (unsigned j = 1; j < k; ++j) {
    translates[j].reserve(n);
    for (Element g = 0; g < n; ++g) translates[j].push_back(right_translate(group, family[j], g));
  }

  std::vector<std::vector<Element>> witnesses(n);
  auto scan = [&](std::uint64_t begin, std::uint64_t end) -> std::optional<std::uint64_t> {
    std::vector<Element> tuple(k, 0);
    std::function<bool(unsigned, const GroupSubset&)> descend = [&](unsigned j, const GroupSubset& partial) {
      for (Element g = 0; g < n; ++g) {
        tuple[j] = g;
        if (j + 1 == k) {
          if (!partial.intersects(translates[j][g])) return true;
          continue;
        }
        GroupSubset next = partial;
        next &= translates[j][g];
        if (next.empty()) {
          std::fill(tuple.begin() + j + 1, tuple.end(), Element{0});
          return true;
        }
        if (descend(j + 1, next)) return true;
      }
      return false;
    };
    for (std::uint64_t g1 = begin; g1 < end; ++g1) {
      tuple[0] = g1;
      const GroupSubset first = right_translate(group, family[0], g1);
      bool failed = false;
      if (first.empty()) {
        std::fill(tuple.begin() + 1, tuple.end(), Element{0});
        failed = true;
      } else {
        failed = descend(1, first);
      }
      if (failed) {
        witnesses[g1] = tuple;
        return g1;
      }
    }
    return std::nullopt;
  };

  const auto words = std::max<std::uint64_t>(1, n / 64);
  const auto failing = run_scan(n, saturating_mul(total, words), scan);
  v.passed = !failing.has_value();
  if (failing) {
    v.witness = witnesses[*failing];
    v.checked = tuple_rank(*v.witness, n) + 1;
  } else {
    v.checked = total;
  }
  return v;
}

// Some x in the intersection of X_j g_j, scanning the members of X_1.
bool tuple_meets(const FiniteGroup& group, std::span<const GroupSubset> family,
                 const std::vector<Element>& tuple) {
  std::vector<Element> inverses(tuple.size());
  for (std::size_t j = 0; j < tuple.size(); ++j) inverses[j] = group.inv(tuple[j]);
  const GroupSubset& head = family[0];
  for (Element a = head.first(); a != GroupSubset::npos; a = head.next(a)) {
    const Element z = group.mul(a, tuple[0]);
    bool all = true;
    for (std::size_t j = 1; j < tuple.size() && all; ++j) all = family[j].contains(group.mul(z, inverses[j]));
    if (all) return true;
  }
  return false;
}

Verification sampled_intersecting(const FiniteGroup& group, std::span<const GroupSubset> family,
                                  std::uint64_t trials, std::uint64_t seed) {
  Verification v;
  v.mode = VerificationMode::sampled(trials);
  v.passed = true;
  if (family.empty()) return v;
  Rng rng(seed);
  std::vector<Element> tuple(family.size());
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& g : tuple) g = rng.below(group.order());
    ++v.checked;
    if (!tuple_meets(group, family, tuple)) {
      v.passed = false;
      v.witness = tuple;
      return v;
    }
  }
  return v;
}

// Some g with g y in X for every y, scanning g over X y_0^{-1}.
bool subset_translates(const FiniteGroup& group, const GroupSubset& x, const std::vector<Element>& y) {
  if (y.empty()) return true;
  const Element y0_inv = group.inv(y[0]);
  for (Element a = x.first(); a != GroupSubset::npos; a = x.next(a)) {
    const Element g = group.mul(a, y0_inv);
    bool all = true;
    for (std::size_t j = 1; j < y.size() && all; ++j) all = x.contains(group.mul(g, y[j]));
    if (all) return true;
  }
  return false;
}

Verification enumerate_k_covering(const FiniteGroup& group, const GroupSubset& x, unsigned k,
                                  std::uint64_t subsets) {
  const Element n = group.order();
  Verification v;
  v.mode = VerificationMode::exhaustive();

  // shifted[y] = X y^{-1}; Y translates iff the shifted sets of its members meet.
  std::vector<GroupSubset> shifted;
  shifted.reserve(n);
  for (Element y = 0; y < n; ++y) shifted.push_back(right_translate(group, x, group.inv(y)));

  const Element first_limit = n - k + 1;
  std::vector<std::vector<Element>> witnesses(first_limit);
  auto scan = [&](std::uint64_t begin, std::uint64_t end) -> std::optional<std::uint64_t> {
    std::vector<Element> combo(k);
    std::function<bool(unsigned, Element, const GroupSubset&)> descend =
        [&](unsigned j, Element start, const GroupSubset& partial) {
          for (Element y = start; y + (k - j) <= n; ++y) {
            combo[j] = y;
            if (j + 1 == k) {
              if (!partial.intersects(shifted[y])) return true;
              continue;
            }
            GroupSubset next = partial;
            next &= shifted[y];
            if (next.empty()) {
              for (unsigned r = j + 1; r < k; ++r) combo[r] = y + (r - j);
              return true;
            }
            if (descend(j + 1, y + 1, next)) return true;
          }
          return false;
        };
    for (std::uint64_t y1 = begin; y1 < end; ++y1) {
      combo[0] = y1;
      bool failed = false;
      if (shifted[y1].empty()) {
        for (unsigned r = 1; r < k; ++r) combo[r] = y1 + r;
        failed = true;
      } else if (k > 1) {
        failed = descend(1, y1 + 1, shifted[y1]);
      }
      if (failed) {
        witnesses[y1] = combo;
        return y1;
      }
    }
    return std::nullopt;
  };

  const auto words = std::max<std::uint64_t>(1, n / 64);
  const auto failing = run_scan(first_limit, saturating_mul(subsets, words), scan);
  v.passed = !failing.has_value();
  v.checked = subsets;
  if (failing) v.witness = witnesses[*failing];
  return v;
}

Verification difference_route_two_covering(const FiniteGroup& group, const GroupSubset& x) {
  const Element n = group.order();
  const std::uint64_t pairs = saturating_mul(x.size(), x.size());
  if (pairs > verification_budget())
    throw BudgetExceeded("difference-set verification needs |X|^2 = " + std::to_string(pairs) +
                         " products; use sampled mode");
  Verification v;
  v.mode = VerificationMode::exhaustive();
  v.checked = pairs;
  const Element e = group.identity();
  if (x.empty()) {
    v.passed = false;
    v.witness = std::vector<Element>{0, 1};
    return v;
  }
  GroupSubset differences(n);
  for (Element a = x.first(); a != GroupSubset::npos; a = x.next(a)) {
    const Element a_inv = group.inv(a);
    for (Element b = x.first(); b != GroupSubset::npos; b = x.next(b)) differences.insert(group.mul(a_inv, b));
  }
  for (Element d = 0; d < n; ++d) {
    if (d == e || differences.contains(d)) continue;
    // {e, d} cannot be translated into X.
    v.passed = false;
    v.witness = e < d ? std::vector<Element>{e, d} : std::vector<Element>{d, e};
    return v;
  }
  v.passed = true;
  return v;
}

Verification sampled_k_covering(const FiniteGroup& group, const GroupSubset& x, unsigned k,
                                std::uint64_t trials, std::uint64_t seed) {
  const Element n = group.order();
  Verification v;
  v.mode = VerificationMode::sampled(trials);
  v.passed = true;
  if (k == 0 || k > n) return v;
  Rng rng(seed);
  std::vector<Element> y;
  for (std::uint64_t t = 0; t < trials; ++t) {
    y.clear();
    while (y.size() < k) {
      const Element candidate = rng.below(n);
      if (std::find(y.begin(), y.end(), candidate) == y.end()) y.push_back(candidate);
    }
    std::sort(y.begin(), y.end());
    ++v.checked;
    if (!subset_translates(group, x, y)) {
      v.passed = false;
      v.witness = y;
      return v;
    }
  }
  return v;
}

bool k_covering_enumerable(Element n, unsigned k) {
  return saturating_mul(saturating_binomial(n, k), n) <= verification_budget();
}

VerificationMode resolve_family_mode(Element n, unsigned k, const ConstructOptions& options) {
  if (options.mode) return *options.mode;
  if (saturating_pow(n, k) <= verification_budget()) return VerificationMode::exhaustive();
  return VerificationMode::sampled(options.sampled_trials);
}

VerificationMode resolve_covering_mode(Element n, unsigned k, std::size_t set_size,
                                       const ConstructOptions& options) {
  if (options.mode) return *options.mode;
  if (k_covering_enumerable(n, k)) return VerificationMode::exhaustive();
  if (k == 2 && saturating_mul(set_size, set_size) <= verification_budget())
    return VerificationMode::exhaustive();
  return VerificationMode::sampled(options.sampled_trials);
}

std::uint64_t verify_seed(std::uint64_t seed, unsigned attempt) { return mix_seed(mix_seed(seed, attempt), 0x5EED); }

struct Draw {
  std::vector<GroupSubset> subsets;
  std::vector<std::size_t> sizes;
  bool within_cap = true;
};

Draw draw_family(const FiniteGroup& group, unsigned k, double p, double cap, std::uint64_t seed,
                 unsigned attempt) {
  Rng rng = Rng(seed).child(attempt);
  Draw draw;
  for (unsigned i = 0; i < k; ++i) {
    draw.subsets.push_back(random_subset(group, p, rng));
    draw.sizes.push_back(draw.subsets.back().size());
    if (static_cast<double>(draw.sizes.back()) > cap) draw.within_cap = false;
  }
  return draw;
}

void check_family_arguments(Element n, unsigned k) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (!feasibility(n, k)) {
    std::ostringstream msg;
    msg << "infeasible (n, k) = (" << n << ", " << k << "): need k < (n - log 2)/log n = "
        << (static_cast<double>(n) - std::numbers::ln2) / std::log(static_cast<double>(n));
    throw PreconditionError(msg.str());
  }
}

}  // namespace

bool feasibility(Element n, unsigned k) {
  if (n < 3) throw PreconditionError("feasibility needs n >= 3, got " + std::to_string(n));
  if (k == 0) throw PreconditionError("k must be at least 1");
  const double dn = static_cast<double>(n);
  return static_cast<double>(k) < (dn - std::numbers::ln2) / std::log(dn);
}

double sample_probability(Element n, unsigned k) {
  check_family_arguments(n, k);
  const double dn = static_cast<double>(n);
  return std::pow((k * std::log(dn) + std::numbers::ln2) / dn, 1.0 / k);
}

double member_size_cap(Element n, unsigned k) { return 2.0 * sample_probability(n, k) * static_cast<double>(n); }

double covering_condition_value(Element n, unsigned k) {
  if (n == 0) throw PreconditionError("group order must be positive");
  const double dk = k;
  return std::pow(4.0 * dk, dk) * (dk * std::log(static_cast<double>(n)) + std::numbers::ln2);
}

bool covering_precondition(Element n, unsigned k) {
  return covering_condition_value(n, k) < static_cast<double>(n);
}

GroupSubset random_subset(const FiniteGroup& group, double p, Rng& rng) {
  GroupSubset out(group.order());
  for (Element x = 0; x < group.order(); ++x)
    if (rng.bernoulli(p)) out.insert(x);
  return out;
}

VerificationMode parse_verification_mode(const std::string& text) {
  if (text == "exhaustive") return VerificationMode::exhaustive();
  constexpr std::string_view prefix = "sampled:";
  if (text.starts_with(prefix)) {
    try {
      std::size_t used = 0;
      const std::string digits = text.substr(prefix.size());
      const auto m = std::stoull(digits, &used);
      if (used == digits.size() && m > 0) return VerificationMode::sampled(m);
    } catch (const std::exception&) {
    }
  }
  if (text == "sampled") return VerificationMode::sampled(kDefaultSampledTrials);
  throw ParseError("verification mode must be 'exhaustive' or 'sampled:<m>'", text);
}

std::string to_string(const VerificationMode& mode) {
  return mode.is_exhaustive() ? "exhaustive" : "sampled:" + std::to_string(mode.trials);
}

Verification verify_intersecting(const FiniteGroup& group, std::span<const GroupSubset> family,
                                 const VerificationMode& mode, std::uint64_t seed) {
  for (const auto& member : family)
    if (member.universe() != group.order()) throw PreconditionError("family member over the wrong group");
  if (mode.is_exhaustive()) return exhaustive_intersecting(group, family);
  return sampled_intersecting(group, family, mode.trials, seed);
}

Verification verify_k_covering(const FiniteGroup& group, const GroupSubset& x, unsigned k,
                               const VerificationMode& mode, std::uint64_t seed) {
  const Element n = group.order();
  if (x.universe() != n) throw PreconditionError("subset over the wrong group");
  if (!mode.is_exhaustive()) return sampled_k_covering(group, x, k, mode.trials, seed);

  if (k == 0 || k > n) {
    Verification v;
    v.mode = mode;
    v.passed = true;
    return v;
  }
  const std::uint64_t subsets = saturating_binomial(n, k);
  if (saturating_mul(subsets, n) <= verification_budget()) return enumerate_k_covering(group, x, k, subsets);
  if (k == 2) return difference_route_two_covering(group, x);
  throw BudgetExceeded("exhaustive k-covering verification needs C(n,k)*n = " +
                       (saturating_mul(subsets, n) == kSaturated ? std::string("overflow")
                                                                 : std::to_string(saturating_mul(subsets, n))) +
                       " steps, budget is " + std::to_string(verification_budget()) + "; use sampled mode");
}

std::optional<Element> translate_into(const FiniteGroup& group, std::span<const Element> y, const GroupSubset& x) {
  if (y.empty()) return group.identity();
  if (y.size() > x.size()) return std::nullopt;
  for (Element g = 0; g < group.order(); ++g) {
    bool inside = true;
    for (const Element a : y) {
      if (!x.contains(group.mul(g, a))) {
        inside = false;
        break;
      }
    }
    if (inside) return g;
  }
  return std::nullopt;
}

std::optional<Element> translate_into(const FiniteGroup& group, const GroupSubset& y, const GroupSubset& x) {
  const auto members = y.elements();
  return translate_into(group, std::span<const Element>(members), x);
}

TwoCoveringCheck two_covering_equiv_xxinv(const FiniteGroup& group, const GroupSubset& x) {
  const Element n = group.order();
  if (n < 2) throw PreconditionError("2-covering needs a group with at least two elements");
  if (n > 10000) throw BudgetExceeded("two_covering_equiv_xxinv is limited to n <= 1e4");
  const Element e = group.identity();

  TwoCoveringCheck out;
  // Direct route: {a, b} translates iff {e, a^{-1}b} does, so it suffices to
  // find, for every b != e, some h in X with hb in X.
  out.is_two_covering = true;
  for (Element b = 0; b < n && out.is_two_covering; ++b) {
    if (b == e) continue;
    bool found = false;
    for (Element h = x.first(); h != GroupSubset::npos && !found; h = x.next(h)) found = x.contains(group.mul(h, b));
    out.is_two_covering = found;
  }

  GroupSubset differences(n);
  for (Element a = x.first(); a != GroupSubset::npos; a = x.next(a)) {
    const Element a_inv = group.inv(a);
    for (Element b = x.first(); b != GroupSubset::npos; b = x.next(b)) differences.insert(group.mul(a_inv, b));
  }
  out.difference_set_full = differences.size() == n;
  return out;
}

IntersectingFamily construct_intersecting_family(const FiniteGroup& group, unsigned k,
                                                 std::optional<std::size_t> l, std::uint64_t seed,
                                                 const ConstructOptions& options) {
  const Element n = group.order();
  check_family_arguments(n, k);
  const double p = sample_probability(n, k);
  const double cap = 2.0 * p * static_cast<double>(n);
  if (l && !(static_cast<double>(*l) > cap && *l <= n)) {
    std::ostringstream msg;
    msg << "target size l = " << *l << " outside (" << cap << ", " << n << "]";
    throw PreconditionError(msg.str());
  }
  const VerificationMode mode = resolve_family_mode(n, k, options);

  AttemptDiagnostics diagnostics;
  for (unsigned attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Draw draw = draw_family(group, k, p, cap, seed, attempt);
    diagnostics.sizes_seen.push_back(draw.sizes);
    if (!draw.within_cap) continue;
    Verification v = verify_intersecting(group, draw.subsets, mode, verify_seed(seed, attempt));
    if (!v.passed) {
      if (!diagnostics.first_failing_tuple) diagnostics.first_failing_tuple = v.witness;
      continue;
    }

    IntersectingFamily family;
    family.k = k;
    family.p = p;
    family.size_cap = cap;
    family.target_size = l;
    family.attempts_used = attempt;
    family.seed = seed;
    family.verification = std::move(v);
    family.subsets = std::move(draw.subsets);
    if (l) {
      for (auto& member : family.subsets)
        for (Element x = 0; x < n && member.size() < *l; ++x) member.insert(x);
    }
    for (const auto& member : family.subsets) family.sizes.push_back(member.size());
    return family;
  }
  std::ostringstream msg;
  msg << "no intersecting family for " << group.descriptor() << ", k = " << k << " within "
      << options.max_attempts << " attempts";
  if (diagnostics.first_failing_tuple) msg << "; first failing tuple " << join(*diagnostics.first_failing_tuple);
  throw AttemptsExhausted(msg.str(), std::move(diagnostics));
}

CoveringCertificate construct_k_covering(const FiniteGroup& group, unsigned k, std::uint64_t seed,
                                         const ConstructOptions& options) {
  const Element n = group.order();
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (n < 3) throw PreconditionError("k-covering construction needs n >= 3");
  const double condition = covering_condition_value(n, k);
  if (!(condition < static_cast<double>(n))) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "(4k)^k (k log n + log 2) = " << condition << " is not below n = " << n << " (slack "
        << static_cast<double>(n) - condition << ")";
    throw PreconditionError(msg.str());
  }
  check_family_arguments(n, k);
  const double p = sample_probability(n, k);
  const double cap = 2.0 * p * static_cast<double>(n);
  const double member_bound = static_cast<double>(n) / (2.0 * k);
  const VerificationMode family_mode = resolve_family_mode(n, k, options);

  AttemptDiagnostics diagnostics;
  for (unsigned attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Draw draw = draw_family(group, k, p, cap, seed, attempt);
    diagnostics.sizes_seen.push_back(draw.sizes);
    if (!draw.within_cap) continue;
    for (const auto size : draw.sizes)
      if (static_cast<double>(size) > member_bound)
        throw SoundnessViolation("member of size " + std::to_string(size) + " passed the 2pn cap but exceeds n/2k");

    Verification family_check = verify_intersecting(group, draw.subsets, family_mode, verify_seed(seed, attempt));
    if (!family_check.passed) {
      if (!diagnostics.first_failing_tuple) diagnostics.first_failing_tuple = family_check.witness;
      continue;
    }
    GroupSubset x(n);
    for (const auto& member : draw.subsets) x |= member;
    if (static_cast<double>(x.size()) > static_cast<double>(n) / 2.0)
      throw SoundnessViolation("union of size " + std::to_string(x.size()) + " exceeds n/2");

    const VerificationMode covering_mode = resolve_covering_mode(n, k, x.size(), options);
    Verification covering_check =
        verify_k_covering(group, x, k, covering_mode, mix_seed(verify_seed(seed, attempt), 1));
    if (!covering_check.passed) {
      if (!diagnostics.first_failing_tuple) diagnostics.first_failing_tuple = covering_check.witness;
      continue;
    }

    CoveringCertificate cert;
    cert.group = group.descriptor();
    cert.order = n;
    cert.k = k;
    cert.p = p;
    cert.size_bound = static_cast<double>(n) / 2.0;
    cert.seed = seed;
    cert.attempts_used = attempt;
    cert.member_sizes = draw.sizes;
    cert.members = std::move(draw.subsets);
    cert.set = std::move(x);
    cert.family_verification = std::move(family_check);
    cert.verification = std::move(covering_check);
    return cert;
  }
  std::ostringstream msg;
  msg << "no " << k << "-covering set for " << group.descriptor() << " within " << options.max_attempts
      << " attempts";
  throw AttemptsExhausted(msg.str(), std::move(diagnostics));
}

CovBounds cov_bounds(Element n, unsigned k) {
  if (n == 0 || k == 0) throw PreconditionError("cov_bounds needs n >= 1 and k >= 1");
  const double dn = static_cast<double>(n);
  const double dk = k;
  const double growth = std::pow(dn, 1.0 - 1.0 / dk);
  CovBounds b;
  b.lower = growth;
  b.upper = std::min(dn, 2.0 * dk * std::pow(dk * std::log(dn) + std::numbers::ln2, 1.0 / dk) * growth);
  return b;
}

ExactCov exact_cov(const FiniteGroup& group, unsigned k) {
  const Element n = group.order();
  if (n > 16) throw BudgetExceeded("exact_cov is limited to groups of order <= 16");
  if (k == 0 || k > n) throw PreconditionError("exact_cov needs 1 <= k <= n");

  std::vector<Element> combo;
  for (Element s = 1; s <= n; ++s) {
    combo.resize(s);
    for (Element i = 0; i < s; ++i) combo[i] = i;
    while (true) {
      const GroupSubset x = GroupSubset::from_elements(n, combo);
      if (verify_k_covering(group, x, k, VerificationMode::exhaustive()).passed) return {s, combo};
      // next combination in lexicographic order
      Element i = s;
      while (i > 0 && combo[i - 1] == n - s + (i - 1)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (Element j = i; j < s; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  throw SoundnessViolation("the full group is always k-covering");
}

GreedyShrink greedy_shrink_intersection(const FiniteGroup& group, const GroupSubset& x, unsigned k) {
  const Element n = group.order();
  if (n > 10000) throw BudgetExceeded("greedy_shrink_intersection is limited to n <= 1e4");
  if (k == 0) throw PreconditionError("k must be at least 1");
  GreedyShrink out;
  GroupSubset current = x;
  out.translates.push_back(group.identity());
  out.sizes.push_back(current.size());
  for (unsigned j = 2; j <= k; ++j) {
    Element best = 0;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (Element g = 0; g < n; ++g) {
      const std::size_t size = current.intersection_size(right_translate(group, x, g));
      if (size < best_size) {
        best_size = size;
        best = g;
      }
    }
    current &= right_translate(group, x, best);
    out.translates.push_back(best);
    out.sizes.push_back(current.size());
  }
  out.final_size = current.size();
  return out;
}

}  // namespace covtrans
