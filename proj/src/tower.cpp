#include "covtrans/tower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "covtrans/errors.hpp"

namespace covtrans {

namespace {

constexpr std::uint64_t kProjectionStream = 0xC1A1;

bool stage_contains(const TowerSpec& spec, const std::vector<TowerStage>& stages, unsigned i, Element x) {
  for (unsigned j = i; j >= 1; --j) {
    const Epimorphism& phi = spec.step(j);
    if (!stages[j].kernel_cover.contains(phi.fiber_offset(x))) return false;
    x = phi.map(x);
  }
  return x == spec.group(0).identity();
}

GroupSubset identity_cover(const FiniteGroup& kernel) {
  GroupSubset l(kernel.order());
  l.insert(kernel.identity());
  return l;
}

Measure reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string format_real(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

double ragaszt_value(Element kernel_order, unsigned k, bool strengthened) {
  return covering_condition_value(kernel_order, strengthened ? k + 1 : k);
}

bool check_ragaszt(Element kernel_order, unsigned k, bool strengthened) {
  if (kernel_order < 3) throw PreconditionError("kernel order must be at least 3");
  return ragaszt_value(kernel_order, k, strengthened) < static_cast<double>(kernel_order);
}

std::string StageCondition::describe() const {
  std::ostringstream out;
  out << "stage " << stage << " (kernel order " << kernel_order << ", k = " << k << "): literal "
      << format_real(literal_value) << (literal_holds ? " < " : " >= ") << kernel_order << ", strengthened "
      << format_real(strengthened_value) << (strengthened_holds ? " < " : " >= ") << kernel_order;
  if (exempt) out << " (exempt: L = {e})";
  out << (admissible ? " -> admissible" : " -> inadmissible");
  return out.str();
}

TowerSpec::TowerSpec(std::vector<Element> kernel_orders) : kernel_orders_(std::move(kernel_orders)) {
  group_orders_.push_back(1);
  for (const Element n : kernel_orders_) {
    if (n == 0) throw PreconditionError("kernel orders must be positive");
    const Element prev = group_orders_.back();
    if (prev > std::numeric_limits<Element>::max() / n)
      throw PreconditionError("tower group order overflows 64-bit element indices");
    group_orders_.push_back(prev * n);
  }
  for (const Element m : group_orders_) groups_.push_back(make_cyclic(m));
  for (std::size_t i = 1; i < group_orders_.size(); ++i)
    steps_.push_back(cyclic_tower_map(group_orders_[i - 1], group_orders_[i]));
}

Epimorphism TowerSpec::projection(unsigned from, unsigned to) const {
  if (to > from || from > depth()) throw PreconditionError("invalid projection levels");
  return cyclic_tower_map(group_orders_[to], group_orders_[from]);
}

Element TowerSpec::project(Element x, unsigned from, unsigned to) const {
  for (unsigned j = from; j > to; --j) x = step(j).map(x);
  return x;
}

std::string TowerSpec::descriptor() const {
  std::string out = "tower:";
  for (std::size_t i = 0; i < kernel_orders_.size(); ++i)
    out += (i ? "," : "") + std::to_string(kernel_orders_[i]);
  return out;
}

std::vector<StageCondition> TowerSpec::stage_conditions() const {
  std::vector<StageCondition> out;
  for (unsigned i = 1; i <= depth(); ++i) {
    StageCondition c;
    c.stage = i;
    c.kernel_order = kernel_orders_[i - 1];
    c.k = i - 1;
    c.exempt = i == 1;
    const double n = static_cast<double>(c.kernel_order);
    c.literal_value = ragaszt_value(c.kernel_order, c.k, false);
    c.literal_holds = c.literal_value < n;
    c.strengthened_value = ragaszt_value(c.kernel_order, c.k, true);
    c.strengthened_holds = c.strengthened_value < n;
    // Stage 1 still needs |L| = 1 <= n/2 for the measure bound.
    c.admissible = c.exempt ? c.kernel_order >= 2 : (c.kernel_order >= 3 && c.strengthened_holds);
    out.push_back(c);
  }
  return out;
}

bool TowerSpec::admissible() const {
  const auto conditions = stage_conditions();
  return std::all_of(conditions.begin(), conditions.end(), [](const StageCondition& c) { return c.admissible; });
}

// ---------------------------------------------------------------------------
// Lifting through one quotient
// ---------------------------------------------------------------------------

bool ExtendedCover::contains(const Epimorphism& phi, const GroupSubset& base, Element g) const {
  return base.contains(phi.map(g)) && kernel_cover.contains(phi.fiber_offset(g));
}

GroupSubset ExtendedCover::enumerate(const Epimorphism& phi) const {
  if (phi.source().order() > kDenseStageLimit) throw BudgetExceeded("source group too large for a dense set");
  GroupSubset out(phi.source().order());
  const auto cover = kernel_cover.elements();
  for (const Element rep : representatives)
    for (const Element l : cover) out.insert(phi.source().mul(phi.embed_kernel(l), rep));
  return out;
}

ExtendedCover extend_covering(const Epimorphism& phi, const GroupSubset& x, unsigned k, std::uint64_t seed,
                              const ConstructOptions& options) {
  if (x.universe() != phi.target().order()) throw PreconditionError("base set is not a subset of the target");
  if (x.empty()) throw PreconditionError("base set must be nonempty");
  ExtendedCover out;
  out.k = k;
  if (k == 0) {
    out.kernel_cover = identity_cover(phi.kernel());
  } else {
    const Element n = phi.kernel_order();
    if (n < 3 || !check_ragaszt(n, k, true)) {
      std::ostringstream msg;
      msg << "kernel order " << n << " fails (4(k+1))^(k+1)((k+1) log n + log 2) < n at k = " << k;
      if (n >= 3) msg << ": value " << format_real(ragaszt_value(n, k, true));
      throw PreconditionError(msg.str());
    }
    out.certificate = construct_k_covering(phi.kernel(), k + 1, seed, options);
    out.kernel_cover = out.certificate->set;
  }
  for (Element h = x.first(); h != GroupSubset::npos; h = x.next(h)) out.representatives.push_back(phi.section(h));
  return out;
}

// ---------------------------------------------------------------------------
// Towers
// ---------------------------------------------------------------------------

std::uint64_t stage_seed(std::uint64_t master, unsigned stage) { return mix_seed(master, stage); }

Tower::Tower(TowerSpec spec, std::uint64_t seed, std::vector<TowerStage> stages)
    : spec_(std::move(spec)), seed_(seed), stages_(std::move(stages)) {
  if (stages_.size() != spec_.depth() + 1) throw PreconditionError("stage count does not match tower depth");
  for (const auto& stage : stages_) cover_lists_.push_back(stage.kernel_cover.elements());
}

bool Tower::contains(unsigned i, Element x) const {
  if (i > depth()) throw PreconditionError("stage index out of range");
  if (x >= spec_.group_order(i)) return false;
  return stage_contains(spec_, stages_, i, x);
}

GroupSubset Tower::enumerate(unsigned i) const {
  if (spec_.group_order(i) > kDenseStageLimit) throw BudgetExceeded("stage too large for a dense set");
  GroupSubset current = identity_cover(spec_.group(0));
  for (unsigned j = 1; j <= i; ++j) {
    const Epimorphism& phi = spec_.step(j);
    const auto cover = stages_[j].kernel_cover.elements();
    GroupSubset next(spec_.group_order(j));
    for (Element h = current.first(); h != GroupSubset::npos; h = current.next(h))
      for (const Element l : cover) next.insert(phi.lift(h, l));
    current = std::move(next);
  }
  return current;
}

Element Tower::sample_member(unsigned i, Rng& rng) const {
  Element x = spec_.group(0).identity();
  for (unsigned j = 1; j <= i; ++j) {
    const auto& cover = cover_lists_[j];
    x = spec_.step(j).lift(x, cover[rng.below(cover.size())]);
  }
  return x;
}

namespace {

void finish_stages(const TowerSpec& spec, std::uint64_t seed, std::vector<TowerStage>& stages,
                   std::uint64_t projection_samples) {
  TowerStage& base = stages[0];
  base.index = 0;
  base.group_order = 1;
  base.kernel_order = 1;
  base.size = 1;
  base.measure = {1, 1};
  base.dense = identity_cover(spec.group(0));

  for (unsigned i = 1; i <= spec.depth(); ++i) {
    TowerStage& stage = stages[i];
    const TowerStage& prev = stages[i - 1];
    const Epimorphism& phi = spec.step(i);
    stage.index = i;
    stage.group_order = spec.group_order(i);
    stage.kernel_order = phi.kernel_order();
    stage.k = i - 1;
    if (stage.kernel_cover.universe() != stage.kernel_order)
      throw IntegrityError("kernel cover of stage " + std::to_string(i) + " has the wrong universe");
    if (stage.kernel_cover.empty()) throw IntegrityError("kernel cover of stage " + std::to_string(i) + " is empty");

    const unsigned __int128 size = static_cast<unsigned __int128>(stage.kernel_cover.size()) * prev.size;
    stage.size = static_cast<std::uint64_t>(size);
    stage.measure = reduced(stage.size, stage.group_order);

    // Measure bound: |X_i| <= |G_i| / 2^i, compared exactly.
    if ((size << i) > static_cast<unsigned __int128>(stage.group_order))
      throw SoundnessViolation("stage " + std::to_string(i) + ": |X_i| = " + std::to_string(stage.size) +
                               " exceeds |G_i|/2^i for |G_i| = " + std::to_string(stage.group_order));

    stage.section_table.clear();
    if (prev.dense)
      for (Element h = prev.dense->first(); h != GroupSubset::npos; h = prev.dense->next(h))
        stage.section_table.push_back(phi.section(h));

    stage.dense.reset();
    if (stage.group_order <= kDenseStageLimit) {
      GroupSubset dense(stage.group_order);
      const auto cover = stage.kernel_cover.elements();
      for (const Element rep : stage.section_table)
        for (const Element l : cover) dense.insert(phi.source().mul(phi.embed_kernel(l), rep));
      if (dense.size() != stage.size)
        throw SoundnessViolation("stage " + std::to_string(i) + ": L * section(X) is not injective");
      stage.dense = std::move(dense);
    }
  }

  // Projection check: the image of X_i lies in X_{i-1}.
  for (unsigned i = 1; i <= spec.depth(); ++i) {
    TowerStage& stage = stages[i];
    const Epimorphism& phi = spec.step(i);
    stage.projection_checked = 0;
    if (stage.dense && stages[i - 1].dense) {
      stage.projection_exhaustive = true;
      const GroupSubset& x = *stage.dense;
      for (Element g = x.first(); g != GroupSubset::npos; g = x.next(g), ++stage.projection_checked)
        if (!stages[i - 1].dense->contains(phi.map(g)))
          throw SoundnessViolation("projection check fails at stage " + std::to_string(i) + " for " + std::to_string(g));
    } else {
      stage.projection_exhaustive = false;
      Tower partial(spec, seed, stages);
      Rng rng(mix_seed(seed, kProjectionStream + i));
      for (std::uint64_t s = 0; s < projection_samples; ++s, ++stage.projection_checked) {
        const Element g = partial.sample_member(i, rng);
        if (!partial.contains(i, g) || !partial.contains(i - 1, phi.map(g)))
          throw SoundnessViolation("projection check fails at stage " + std::to_string(i) + " for " + std::to_string(g));
      }
    }
  }
}

}  // namespace

Tower build_tower(const TowerSpec& spec, std::uint64_t seed, const ConstructOptions& options,
                  std::uint64_t projection_samples) {
  for (const auto& condition : spec.stage_conditions())
    if (!condition.admissible) throw PreconditionError("inadmissible tower " + spec.descriptor() + ": " + condition.describe());

  std::vector<TowerStage> stages(spec.depth() + 1);
  stages[0].kernel_cover = identity_cover(spec.group(0));
  for (unsigned i = 1; i <= spec.depth(); ++i) {
    TowerStage& stage = stages[i];
    const Epimorphism& phi = spec.step(i);
    stage.seed = stage_seed(seed, i);
    if (i == 1) {
      stage.kernel_cover = identity_cover(phi.kernel());
    } else {
      CoveringCertificate cert = construct_k_covering(phi.kernel(), i, stage.seed, options);
      stage.attempts = cert.attempts_used;
      stage.family_verification = cert.family_verification;
      stage.cover_verification = cert.verification;
      stage.kernel_cover = std::move(cert.set);
    }
  }
  finish_stages(spec, seed, stages, projection_samples);
  return Tower(spec, seed, std::move(stages));
}

Tower assemble_tower(const TowerSpec& spec, std::uint64_t seed, std::vector<TowerStage> stages,
                     std::uint64_t projection_samples) {
  if (stages.size() != spec.depth() + 1)
    throw IntegrityError("tower lists " + std::to_string(stages.size()) + " stages for depth " +
                         std::to_string(spec.depth()));
  stages[0].kernel_cover = identity_cover(spec.group(0));
  for (unsigned i = 1; i <= spec.depth(); ++i)
    if (stages[i].kernel_cover.universe() != spec.step(i).kernel_order())
      throw IntegrityError("stage " + std::to_string(i) + " kernel cover has the wrong universe");
  finish_stages(spec, seed, stages, projection_samples);
  return Tower(spec, seed, std::move(stages));
}

// ---------------------------------------------------------------------------
// Thin sets
// ---------------------------------------------------------------------------

ThinSet make_thin_set(const TowerSpec& spec, unsigned depth, std::vector<Element> elements) {
  if (depth > spec.depth()) throw PreconditionError("thin set deeper than the tower");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  for (const Element x : elements)
    if (x >= spec.group_order(depth))
      throw PreconditionError("element " + std::to_string(x) + " outside G_" + std::to_string(depth));
  ThinSet y;
  y.depth = depth;
  y.elements = std::move(elements);
  for (unsigned i = 0; i <= depth; ++i) {
    std::set<Element> image;
    for (const Element x : y.elements) image.insert(spec.project(x, depth, i));
    if (image.size() > thin_bound(i))
      throw PreconditionError("not f-thin: level " + std::to_string(i) + " image has " + std::to_string(image.size()) +
                              " elements, bound " + std::to_string(thin_bound(i)));
    y.projections.emplace_back(image.begin(), image.end());
  }
  return y;
}

bool is_thin(const TowerSpec& spec, const ThinSet& y) {
  if (y.depth > spec.depth() || y.projections.size() != y.depth + 1) return false;
  try {
    const ThinSet fresh = make_thin_set(spec, y.depth, y.elements);
    return fresh.elements == y.elements && fresh.projections == y.projections;
  } catch (const PreconditionError&) {
    return false;
  }
}

ThinSet sample_thin_set(const TowerSpec& spec, unsigned depth, Rng& rng, double fullness) {
  if (depth > spec.depth()) throw PreconditionError("thin set deeper than the tower");
  if (!(fullness > 0.0 && fullness <= 1.0)) throw PreconditionError("fullness must lie in (0, 1]");
  std::vector<Element> level{spec.group(0).identity()};
  for (unsigned i = 1; i <= depth; ++i) {
    const Epimorphism& phi = spec.step(i);
    const std::uint64_t preimage = level.size() * phi.kernel_order();
    const std::uint64_t count = std::min<std::uint64_t>(thin_bound(i), preimage);
    std::vector<Element> next;
    if (preimage <= count) {
      for (const Element h : level)
        for (Element k = 0; k < phi.kernel_order(); ++k) next.push_back(phi.lift(h, k));
    } else {
      while (next.size() < count) {
        const Element h = level[rng.below(level.size())];
        const Element candidate = phi.lift(h, rng.below(phi.kernel_order()));
        if (std::find(next.begin(), next.end(), candidate) == next.end()) next.push_back(candidate);
      }
    }
    level = std::move(next);
  }
  std::vector<Element> chosen;
  for (const Element x : level)
    if (fullness >= 1.0 || rng.bernoulli(fullness)) chosen.push_back(x);
  return make_thin_set(spec, depth, std::move(chosen));
}

ThinSet slalom_to_thin(const TowerSpec& spec, const Slalom& s) {
  if (s.depth > spec.depth()) throw PreconditionError("slalom deeper than the tower");
  if (s.levels.size() != s.depth + 1) throw PreconditionError("slalom needs one level per quotient 0..depth");
  for (unsigned i = 0; i <= s.depth; ++i) {
    const std::set<Element> distinct(s.levels[i].begin(), s.levels[i].end());
    if (distinct.size() > thin_bound(i))
      throw PreconditionError("slalom level " + std::to_string(i) + " exceeds f(" + std::to_string(i) + ")");
    for (const Element x : distinct)
      if (x >= spec.group_order(i)) throw PreconditionError("slalom element outside G_" + std::to_string(i));
  }
  // Every g in the pullback projects into S_d at level d, so it suffices to
  // filter S_d.
  std::vector<Element> members;
  for (const Element g : s.levels[s.depth]) {
    bool inside = true;
    for (unsigned i = 0; i < s.depth && inside; ++i) {
      const auto& level = s.levels[i];
      inside = std::find(level.begin(), level.end(), spec.project(g, s.depth, i)) != level.end();
    }
    if (inside) members.push_back(g);
  }
  return make_thin_set(spec, s.depth, std::move(members));
}

ThinTranslation translate_thin(const Tower& tower, const ThinSet& y) {
  const TowerSpec& spec = tower.spec();
  const unsigned d = tower.depth();
  if (y.depth != d) throw PreconditionError("thin set depth must equal the tower depth");
  if (!is_thin(spec, y)) throw PreconditionError("set is not f-thin for this tower");

  ThinTranslation out;
  Element g = spec.group(0).identity();
  out.level_translators.push_back(g);
  for (unsigned i = 1; i <= d; ++i) {
    const Epimorphism& phi = spec.step(i);
    const FiniteGroup& source = phi.source();
    LiftStep step;
    step.stage = i;
    step.base = phi.section(g);
    std::vector<Element> image;
    for (const Element x : y.elements) image.push_back(spec.project(x, d, i));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (const Element x : image) step.offsets.push_back(phi.fiber_offset(source.mul(step.base, x)));
    std::sort(step.offsets.begin(), step.offsets.end());
    step.offsets.erase(std::unique(step.offsets.begin(), step.offsets.end()), step.offsets.end());

    const auto u = translate_into(phi.kernel(), step.offsets, tower.stage(i).kernel_cover);
    if (!u) {
      std::ostringstream msg;
      msg << "lifting failed at stage " << i << " of " << spec.descriptor() << " (seed " << tower.seed()
          << "): previous translator " << g << ", kernel offsets {";
      for (std::size_t j = 0; j < step.offsets.size(); ++j) msg << (j ? "," : "") << step.offsets[j];
      msg << "} admit no translate into L_" << i << " of size " << tower.stage(i).kernel_cover.size();
      throw SoundnessViolation(msg.str());
    }
    step.kernel_translator = *u;
    g = source.mul(phi.embed_kernel(*u), step.base);
    step.translator = g;
    out.steps.push_back(std::move(step));
    out.level_translators.push_back(g);
  }
  out.translator = g;

  const FiniteGroup& top = spec.group(d);
  out.verified = std::all_of(y.elements.begin(), y.elements.end(),
                             [&](Element x) { return tower.contains(d, top.mul(g, x)); });

  if (spec.group_order(d) <= kTranslatorSetLimit) {
    const Element n = spec.group_order(d);
    for (unsigned i = 0; i <= d; ++i) {
      const Epimorphism proj = spec.projection(d, i);
      const GroupSubset& level_set = *tower.stage(i).dense;
      GroupSubset t(n);
      for (Element h = 0; h < n; ++h) {
        bool inside = true;
        for (std::size_t j = 0; j < y.elements.size() && inside; ++j)
          inside = level_set.contains(proj.map(top.mul(h, y.elements[j])));
        if (inside) t.insert(h);
      }
      out.translator_sets.push_back(std::move(t));
    }
    out.nested = true;
    out.fiber_unions = true;
    out.translator_in_all = true;
    for (unsigned i = 0; i <= d; ++i) {
      const GroupSubset& t = out.translator_sets[i];
      if (i < d && !out.translator_sets[i + 1].is_subset_of(t)) out.nested = false;
      if (!t.contains(g)) out.translator_in_all = false;
      const Epimorphism proj = spec.projection(d, i);
      for (Element h = 0; h < n && out.fiber_unions; ++h)
        if (t.contains(h) != t.contains(proj.section(proj.map(h)))) out.fiber_unions = false;
    }
  }
  return out;
}

double dimension_estimate(const TowerSpec& spec, unsigned depth, const std::vector<Element>& y) {
  if (depth == 0 || depth > spec.depth()) throw PreconditionError("dimension estimate needs 1 <= d <= tower depth");
  if (y.empty()) throw PreconditionError("dimension estimate needs a nonempty set");
  std::optional<double> best;
  for (unsigned i = 1; i <= depth; ++i) {
    if (spec.group_order(i) <= 1) continue;
    std::set<Element> image;
    for (const Element x : y) {
      if (x >= spec.group_order(depth)) throw PreconditionError("element outside G_" + std::to_string(depth));
      image.insert(spec.project(x, depth, i));
    }
    const double ratio = std::log(static_cast<double>(image.size())) / std::log(static_cast<double>(spec.group_order(i)));
    best = best ? std::min(*best, ratio) : ratio;
  }
  if (!best) throw PreconditionError("every quotient up to the requested depth is trivial");
  return *best;
}

}  // namespace covtrans
