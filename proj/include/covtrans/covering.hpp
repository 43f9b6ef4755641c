#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covtrans/errors.hpp"
#include "covtrans/group.hpp"
#include "covtrans/random.hpp"
#include "covtrans/subset.hpp"

namespace covtrans {

// ---------------------------------------------------------------------------
// Parameter arithmetic. "log" is the natural logarithm throughout.
// ---------------------------------------------------------------------------

// k < (n - log 2) / log n. Throws PreconditionError for n < 3 or k = 0.
bool feasibility(Element n, unsigned k);

// p = ((k log n + log 2) / n)^(1/k); throws when (n, k) is infeasible.
double sample_probability(Element n, unsigned k);

// Per-member size cap 2pn = 2 (k log n + log 2)^(1/k) n^(1-1/k). This is also
// the strict lower threshold for the enlargement target l.
double member_size_cap(Element n, unsigned k);

// (4k)^k (k log n + log 2); the k-covering construction needs this < n.
double covering_condition_value(Element n, unsigned k);
bool covering_precondition(Element n, unsigned k);

// Each element independently with probability p.
GroupSubset random_subset(const FiniteGroup& group, double p, Rng& rng);

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerificationMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t trials = 0;

  static VerificationMode exhaustive() { return {Kind::exhaustive, 0}; }
  static VerificationMode sampled(std::uint64_t m) { return {Kind::sampled, m}; }
  bool is_exhaustive() const noexcept { return kind == Kind::exhaustive; }
};

inline constexpr std::uint64_t kDefaultSampledTrials = 100000;

// "exhaustive" or "sampled:<m>".
VerificationMode parse_verification_mode(const std::string& text);
std::string to_string(const VerificationMode& mode);

struct Verification {
  VerificationMode mode;
  bool passed = false;
  // Tuples / subsets actually examined.
  std::uint64_t checked = 0;
  // Failing tuple (g_1..g_k) for families, failing subset Y for coverings.
  std::optional<std::vector<Element>> witness;
};

// Every tuple of right translates X_1 g_1, ..., X_k g_k meets. Exhaustive mode
// scans all n^k tuples (requires n^k <= budget) and reports the
// lexicographically smallest failing tuple; sampled mode draws `trials`
// uniform tuples from a generator seeded with `seed`.
Verification verify_intersecting(const FiniteGroup& group, std::span<const GroupSubset> family,
                                 const VerificationMode& mode, std::uint64_t seed = 0);

// Every k-subset Y admits g with gY inside X. Exhaustive mode enumerates all
// C(n,k) subsets when C(n,k) * n fits the budget; for k = 2 it otherwise uses
// the X^{-1}X = G criterion. The witness is the lexicographically first
// untranslatable subset.
Verification verify_k_covering(const FiniteGroup& group, const GroupSubset& x, unsigned k,
                               const VerificationMode& mode, std::uint64_t seed = 0);

// Smallest-index g with gY inside X, if any.
std::optional<Element> translate_into(const FiniteGroup& group, std::span<const Element> y,
                                      const GroupSubset& x);
std::optional<Element> translate_into(const FiniteGroup& group, const GroupSubset& y, const GroupSubset& x);

struct TwoCoveringCheck {
  bool is_two_covering = false;
  // X^{-1}X = G; for abelian groups this is the same set as XX^{-1}.
  bool difference_set_full = false;
};

// Both predicates computed independently; they agree for every X (n >= 2).
// Requires n <= 1e4.
TwoCoveringCheck two_covering_equiv_xxinv(const FiniteGroup& group, const GroupSubset& x);

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

struct ConstructOptions {
  unsigned max_attempts = 100;
  // Unset: exhaustive when within budget, sampled(sampled_trials) otherwise.
  std::optional<VerificationMode> mode;
  std::uint64_t sampled_trials = kDefaultSampledTrials;
};

struct IntersectingFamily {
  unsigned k = 0;
  double p = 0;
  double size_cap = 0;
  std::optional<std::size_t> target_size;
  std::vector<GroupSubset> subsets;
  std::vector<std::size_t> sizes;
  unsigned attempts_used = 0;
  std::uint64_t seed = 0;
  Verification verification;
};

struct AttemptDiagnostics {
  std::vector<std::vector<std::size_t>> sizes_seen;
  std::optional<std::vector<Element>> first_failing_tuple;
};

class AttemptsExhausted : public Error {
 public:
  AttemptsExhausted(const std::string& message, AttemptDiagnostics diagnostics)
      : Error(message), diagnostics_(std::move(diagnostics)) {}
  const AttemptDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  AttemptDiagnostics diagnostics_;
};

// Draws k independent p-random subsets per attempt (attempt a uses the child
// stream a of `seed`), rejects draws with a member above 2pn or a failed
// verification, and optionally enlarges every member to exactly l elements by
// adding the smallest-index non-members.
IntersectingFamily construct_intersecting_family(const FiniteGroup& group, unsigned k,
                                                 std::optional<std::size_t> l, std::uint64_t seed,
                                                 const ConstructOptions& options = {});

struct CoveringCertificate {
  std::string group;
  Element order = 0;
  unsigned k = 0;
  double p = 0;
  double size_bound = 0;  // n / 2
  std::uint64_t seed = 0;
  unsigned attempts_used = 0;
  std::vector<GroupSubset> members;
  std::vector<std::size_t> member_sizes;
  GroupSubset set;
  Verification family_verification;
  Verification verification;
};

// Union of an intersecting family; requires (4k)^k (k log n + log 2) < n.
CoveringCertificate construct_k_covering(const FiniteGroup& group, unsigned k, std::uint64_t seed,
                                         const ConstructOptions& options = {});

// ---------------------------------------------------------------------------
// Bounds on cov(G, k)
// ---------------------------------------------------------------------------

struct CovBounds {
  double lower = 0;  // n^(1-1/k)
  double upper = 0;  // min(n, 2k (k log n + log 2)^(1/k) n^(1-1/k))
};

CovBounds cov_bounds(Element n, unsigned k);

struct ExactCov {
  std::size_t size = 0;
  std::vector<Element> set;  // lexicographically first minimum k-covering set
};

// Exhaustive search by increasing size; requires k <= n <= 16.
ExactCov exact_cov(const FiniteGroup& group, unsigned k);

struct GreedyShrink {
  std::vector<Element> translates;   // g_1 = e, g_2, ..., g_k
  std::vector<std::size_t> sizes;    // |X g_1 ∩ ... ∩ X g_j| for j = 1..k
  std::size_t final_size = 0;
};

// g_1 = e; each later g_j minimizes |current ∩ X g_j| (smallest index on
// ties). Requires n <= 1e4.
GreedyShrink greedy_shrink_intersection(const FiniteGroup& group, const GroupSubset& x, unsigned k);

}  // namespace covtrans
