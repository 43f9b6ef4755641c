#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covtrans/covering.hpp"
#include "covtrans/epimorphism.hpp"
#include "covtrans/group.hpp"
#include "covtrans/subset.hpp"

namespace covtrans {

// X_i is held as a bit-vector only up to this many group elements.
inline constexpr Element kDenseStageLimit = Element{1} << 27;
// T_i sets are computed only when the top group is at most this large.
inline constexpr Element kTranslatorSetLimit = Element{1} << 20;

// The thinness bound: f(0) = 1 and f(i) = i for i >= 1.
constexpr Element thin_bound(Element level) { return level == 0 ? 1 : level; }

// (4k)^k (k log n + log 2) < n, or the same at k + 1 when `strengthened`.
// Requires n >= 3.
bool check_ragaszt(Element kernel_order, unsigned k, bool strengthened);
double ragaszt_value(Element kernel_order, unsigned k, bool strengthened);

struct StageCondition {
  unsigned stage = 0;  // builds X_stage from X_{stage-1}
  Element kernel_order = 0;
  unsigned k = 0;  // subsets of size up to k + 1 must lift
  double literal_value = 0;
  bool literal_holds = false;
  double strengthened_value = 0;
  bool strengthened_holds = false;
  bool exempt = false;  // stage 1 uses L = {e}
  bool admissible = false;

  std::string describe() const;
};

// Cyclic tower G_0 = 1 <- G_1 <- ... <- G_d with |ker(G_{i+1} -> G_i)| = n_i,
// so G_i = C_{n_0 * ... * n_{i-1}} and each step is reduction modulo |G_i|.
class TowerSpec {
 public:
  explicit TowerSpec(std::vector<Element> kernel_orders);

  unsigned depth() const noexcept { return static_cast<unsigned>(kernel_orders_.size()); }
  const std::vector<Element>& kernel_orders() const noexcept { return kernel_orders_; }
  Element group_order(unsigned i) const { return group_orders_.at(i); }
  const FiniteGroup& group(unsigned i) const { return groups_.at(i); }
  // G_i -> G_{i-1}, for 1 <= i <= depth.
  const Epimorphism& step(unsigned i) const { return steps_.at(i - 1); }
  // G_from -> G_to for to <= from.
  Epimorphism projection(unsigned from, unsigned to) const;
  Element project(Element x, unsigned from, unsigned to) const;

  std::string descriptor() const;
  std::vector<StageCondition> stage_conditions() const;
  bool admissible() const;

 private:
  std::vector<Element> kernel_orders_;
  std::vector<Element> group_orders_;
  std::vector<FiniteGroup> groups_;
  std::vector<Epimorphism> steps_;
};

// X' = L * section(X): kernel cover plus the section representatives of the
// base set.
struct ExtendedCover {
  unsigned k = 0;
  GroupSubset kernel_cover;
  std::vector<Element> representatives;  // ascending by target element
  std::optional<CoveringCertificate> certificate;  // absent for k = 0 (L = {e})

  std::uint64_t size() const { return kernel_cover.size() * representatives.size(); }
  bool contains(const Epimorphism& phi, const GroupSubset& base, Element g) const;
  // Explicit X'; requires source order <= kDenseStageLimit.
  GroupSubset enumerate(const Epimorphism& phi) const;
};

// Lifts x through phi: every Y with |Y| <= k + 1 whose image translates into x
// translates into the result. k = 0 uses L = {e}; otherwise L is a
// (k+1)-covering subset of the kernel and the strengthened condition must hold.
ExtendedCover extend_covering(const Epimorphism& phi, const GroupSubset& x, unsigned k, std::uint64_t seed,
                              const ConstructOptions& options = {});

struct Measure {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  std::string str() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }
};

struct TowerStage {
  unsigned index = 0;
  Element group_order = 1;
  Element kernel_order = 1;
  unsigned k = 0;
  std::uint64_t seed = 0;
  GroupSubset kernel_cover;  // L_i over ker(G_i -> G_{i-1}); {e} at stage 0
  std::uint64_t size = 1;    // |X_i|, exact
  Measure measure;           // |X_i| / |G_i| in lowest terms
  std::optional<GroupSubset> dense;
  std::vector<Element> section_table;  // section(h) for h in X_{i-1}, when X_{i-1} is dense
  unsigned attempts = 0;
  std::optional<Verification> family_verification;
  std::optional<Verification> cover_verification;
  std::uint64_t projection_checked = 0;
  bool projection_exhaustive = false;
};

class Tower {
 public:
  Tower(TowerSpec spec, std::uint64_t seed, std::vector<TowerStage> stages);

  const TowerSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }
  unsigned depth() const noexcept { return spec_.depth(); }
  const std::vector<TowerStage>& stages() const noexcept { return stages_; }
  const TowerStage& stage(unsigned i) const { return stages_.at(i); }

  // x in X_i iff step_i(x) in X_{i-1} and its fiber offset lies in L_i.
  bool contains(unsigned i, Element x) const;
  // X_i from L_i * section(X_{i-1}) products; needs |G_i| <= kDenseStageLimit.
  GroupSubset enumerate(unsigned i) const;
  // Uniform random element of X_i through the factored structure.
  Element sample_member(unsigned i, Rng& rng) const;

 private:
  TowerSpec spec_;
  std::uint64_t seed_;
  std::vector<TowerStage> stages_;
  std::vector<std::vector<Element>> cover_lists_;
};

// Stage i >= 1 applies extend_covering to X_{i-1} with k = i - 1. Checks that X_i
// projects into X_{i-1} (exhaustively on dense stages, on `projection_samples`
// sampled members otherwise) and |X_i| <= |G_i|/2^i exactly; throws
// SoundnessViolation if either fails and PreconditionError on an inadmissible
// spec.
Tower build_tower(const TowerSpec& spec, std::uint64_t seed, const ConstructOptions& options = {},
                  std::uint64_t projection_samples = 100000);

// Recomputes sizes, measures and checks for stages whose kernel covers (and
// recorded seeds, attempts and verifications) are already filled in.
Tower assemble_tower(const TowerSpec& spec, std::uint64_t seed, std::vector<TowerStage> stages,
                     std::uint64_t projection_samples = 100000);

std::uint64_t stage_seed(std::uint64_t master, unsigned stage);

// ---------------------------------------------------------------------------
// Thin sets and slaloms
// ---------------------------------------------------------------------------

struct ThinSet {
  unsigned depth = 0;
  std::vector<Element> elements;                 // ascending, in G_depth
  std::vector<std::vector<Element>> projections;  // level i image, ascending
};

// Computes projections; throws PreconditionError if the set is not f-thin.
ThinSet make_thin_set(const TowerSpec& spec, unsigned depth, std::vector<Element> elements);
bool is_thin(const TowerSpec& spec, const ThinSet& y);

// Random chain of fibers: i elements at level i inside the preimage of the
// level i-1 choice, each final-level candidate kept with probability fullness.
ThinSet sample_thin_set(const TowerSpec& spec, unsigned depth, Rng& rng, double fullness = 1.0);

struct Slalom {
  unsigned depth = 0;
  std::vector<std::vector<Element>> levels;  // S_0..S_depth, |S_i| <= f(i)
};

// {g in G_d : projection to level i lies in S_i for every i}.
ThinSet slalom_to_thin(const TowerSpec& spec, const Slalom& s);

struct LiftStep {
  unsigned stage = 0;
  Element base = 0;                 // section of the previous translator
  std::vector<Element> offsets;     // fiber offsets of base * Y_stage, kernel indices
  Element kernel_translator = 0;    // u with u * offsets inside L_stage
  Element translator = 0;           // g_stage
};

struct ThinTranslation {
  Element translator = 0;                  // g_d with g_d Y inside X_d
  std::vector<Element> level_translators;  // g_0..g_d
  std::vector<LiftStep> steps;
  bool verified = false;                   // membership of every g_d y
  // Present when |G_d| <= kTranslatorSetLimit: T_i as subsets of G_d.
  std::vector<GroupSubset> translator_sets;
  bool nested = false;
  bool fiber_unions = false;
  bool translator_in_all = false;
};

// Stagewise lift of a thin set at the tower's full depth. Throws
// SoundnessViolation if some kernel offset set cannot be translated into L_i.
ThinTranslation translate_thin(const Tower& tower, const ThinSet& y);

// min over levels 1..d with |G_i| > 1 of log|pi_i(y)| / log|G_i|.
double dimension_estimate(const TowerSpec& spec, unsigned depth, const std::vector<Element>& y);

}  // namespace covtrans
