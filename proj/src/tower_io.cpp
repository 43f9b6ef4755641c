#include "covtrans/tower_io.hpp"

#include "covtrans/descriptor.hpp"

namespace covtrans {

namespace {

const nlohmann::json& field(const nlohmann::json& doc, const char* name) {
  if (!doc.contains(name)) throw IntegrityError(std::string("tower document lacks field '") + name + "'");
  return doc.at(name);
}

Verification read_verification(const nlohmann::json& doc) {
  Verification v;
  const auto mode = field(doc, "mode").get<std::string>();
  const auto trials = field(doc, "trials").get<std::uint64_t>();
  if (mode == "exhaustive") {
    v.mode = VerificationMode::exhaustive();
  } else if (mode == "sampled") {
    v.mode = VerificationMode::sampled(trials);
  } else {
    throw IntegrityError("unknown verification mode '" + mode + "'");
  }
  v.checked = trials;
  v.passed = field(doc, "result").get<bool>();
  if (doc.contains("witness")) v.witness = doc.at("witness").get<std::vector<Element>>();
  return v;
}

std::string measure_bound(unsigned i) { return "1/" + std::to_string(std::uint64_t{1} << i); }

}  // namespace

Document to_document(const Tower& tower) {
  const TowerSpec& spec = tower.spec();
  Document doc;
  doc["kind"] = "tower";
  doc["spec"] = spec.descriptor();
  doc["seed"] = tower.seed();
  doc["kernel_orders"] = spec.kernel_orders();
  Document orders = Document::array();
  for (unsigned i = 0; i <= spec.depth(); ++i) orders.push_back(spec.group_order(i));
  doc["group_orders"] = std::move(orders);
  doc["section"] = "least nonnegative residue";

  Document stages = Document::array();
  for (const auto& stage : tower.stages()) {
    Document s;
    s["index"] = stage.index;
    s["group_order"] = stage.group_order;
    if (stage.index > 0) {
      s["kernel_order"] = stage.kernel_order;
      s["k"] = stage.k;
      s["seed"] = stage.seed;
      s["attempts"] = stage.attempts;
      if (stage.family_verification) s["family_verification"] = to_document(*stage.family_verification);
      if (stage.cover_verification) s["cover_verification"] = to_document(*stage.cover_verification);
      Document cover = Document::array();
      const GroupSubset& l = stage.kernel_cover;
      for (Element x = l.first(); x != GroupSubset::npos; x = l.next(x)) cover.push_back(x);
      s["L"] = std::move(cover);
    }
    s["size"] = stage.size;
    s["measure"] = stage.measure.str();
    s["bound"] = measure_bound(stage.index);
    s["representation"] = stage.dense ? "dense" : "factored";
    if (stage.index > 0) {
      Document projection;
      projection["checked"] = stage.projection_checked;
      projection["exhaustive"] = stage.projection_exhaustive;
      s["projection_check"] = std::move(projection);
    }
    stages.push_back(std::move(s));
  }
  doc["stages"] = std::move(stages);
  return doc;
}

Tower load_tower(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("kind", "") != "tower") throw IntegrityError("not a tower document");
  const auto orders = field(doc, "kernel_orders").get<std::vector<Element>>();
  const TowerSpec spec(orders);
  if (doc.contains("spec") && doc.at("spec").get<std::string>() != spec.descriptor())
    throw IntegrityError("'spec' disagrees with 'kernel_orders'");
  const auto seed = field(doc, "seed").get<std::uint64_t>();
  const auto& stages = field(doc, "stages");
  if (!stages.is_array() || stages.size() != spec.depth() + 1)
    throw IntegrityError("tower document lists the wrong number of stages");

  std::vector<TowerStage> built(spec.depth() + 1);
  std::uint64_t projection_samples = 100000;
  for (unsigned i = 1; i <= spec.depth(); ++i) {
    const auto& s = stages[i];
    GroupSubset cover(spec.step(i).kernel_order());
    for (const auto& item : field(s, "L")) {
      const auto x = item.get<Element>();
      if (x >= cover.universe() || cover.contains(x))
        throw IntegrityError("stage " + std::to_string(i) + " kernel cover lists an invalid element");
      cover.insert(x);
    }
    built[i].kernel_cover = std::move(cover);
    built[i].seed = field(s, "seed").get<std::uint64_t>();
    built[i].attempts = field(s, "attempts").get<unsigned>();
    if (s.contains("family_verification")) built[i].family_verification = read_verification(s.at("family_verification"));
    if (s.contains("cover_verification")) built[i].cover_verification = read_verification(s.at("cover_verification"));
    const auto& projection = field(s, "projection_check");
    if (!field(projection, "exhaustive").get<bool>()) projection_samples = field(projection, "checked").get<std::uint64_t>();
  }
  Tower tower = assemble_tower(spec, seed, std::move(built), projection_samples);
  for (unsigned i = 0; i <= spec.depth(); ++i) {
    const auto& s = stages[i];
    if (field(s, "size").get<std::uint64_t>() != tower.stage(i).size ||
        field(s, "measure").get<std::string>() != tower.stage(i).measure.str())
      throw IntegrityError("stage " + std::to_string(i) + " size or measure disagrees with its kernel covers");
  }
  return tower;
}

Document to_document(const ThinSet& y) {
  Document doc;
  doc["depth"] = y.depth;
  doc["elements"] = y.elements;
  doc["projections"] = y.projections;
  return doc;
}

Document to_document(const ThinTranslation& t, const ThinSet& y) {
  Document doc;
  doc["set"] = y.elements;
  doc["translator"] = t.translator;
  doc["level_translators"] = t.level_translators;
  doc["verified"] = t.verified;
  if (!t.translator_sets.empty()) {
    Document sizes = Document::array();
    for (const auto& s : t.translator_sets) sizes.push_back(s.size());
    doc["translator_set_sizes"] = std::move(sizes);
    doc["nested"] = t.nested;
    doc["fiber_unions"] = t.fiber_unions;
  }
  return doc;
}

}  // namespace covtrans
