#include "covtrans/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "covtrans/budget.hpp"
#include "covtrans/certificate.hpp"
#include "covtrans/covering.hpp"
#include "covtrans/descriptor.hpp"
#include "covtrans/errors.hpp"
#include "covtrans/tower.hpp"
#include "covtrans/tower_io.hpp"

namespace covtrans::cli {

namespace {

constexpr std::uint64_t kThinSetStream = 0x7417;
constexpr std::uint64_t kShrinkStream = 0x5121;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string format_real(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::general, 12);
  return std::string(buffer, result.ptr);
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (const char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

std::uint64_t require_seed(const RunConfig& config) {
  if (!config.seed) throw UsageError("'" + config.command + "' is randomized: --seed is required");
  return *config.seed;
}

ConstructOptions construct_options(const RunConfig& config) {
  ConstructOptions options;
  options.max_attempts = config.max_attempts;
  if (config.mode != "auto") options.mode = parse_verification_mode(config.mode);
  return options;
}

nlohmann::json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int emit(const RunConfig& config, Document doc, std::ostream& out) {
  doc["run_config"] = to_json(config);
  out << render(doc);
  return kOk;
}

int cmd_covering_construct(const RunConfig& config, std::ostream& out) {
  const FiniteGroup group = parse_group(config.descriptor);
  const std::uint64_t seed = require_seed(config);
  const Element n = group.order();
  const ConstructOptions options = construct_options(config);
  if (config.k == 0) throw PreconditionError("k must be at least 1");
  if (n < 3) throw PreconditionError("constructions need a group of order at least 3");

  const bool want_family = config.family || config.l.has_value() || !covering_precondition(n, config.k);
  if (!want_family) {
    const CoveringCertificate cert = construct_k_covering(group, config.k, seed, options);
    emit(config, to_document(cert), out);
    return cert.verification.passed ? kOk : kVerificationFailed;
  }
  const IntersectingFamily family = construct_intersecting_family(group, config.k, config.l, seed, options);
  emit(config, to_document(group, family), out);
  return family.verification.passed ? kOk : kVerificationFailed;
}

int cmd_covering_verify(const RunConfig& config, std::ostream& out) {
  const LoadedCertificate cert = load_certificate(read_json_file(config.input));
  VerificationMode fallback = VerificationMode::exhaustive();
  std::uint64_t seed = 0;
  if (config.mode != "auto") {
    fallback = parse_verification_mode(config.mode);
    if (!fallback.is_exhaustive()) seed = require_seed(config);
  }
  Verification v;
  try {
    v = reverify(cert, fallback, seed);
  } catch (const BudgetExceeded&) {
    if (config.mode != "auto") throw;
    // Auto mode never downgrades silently: the verdict is labelled sampled.
    seed = require_seed(config);
    v = reverify(cert, VerificationMode::sampled(kDefaultSampledTrials), seed);
  }
  Document doc;
  doc["kind"] = "verdict";
  doc["certificate"] = cert.kind == LoadedCertificate::Kind::k_covering ? "k_covering" : "intersecting_family";
  doc["group"] = cert.group.descriptor();
  doc["k"] = cert.k;
  doc["verification"] = to_document(v);
  emit(config, std::move(doc), out);
  return v.passed ? kOk : kVerificationFailed;
}

int cmd_covering_exact(const RunConfig& config, std::ostream& out) {
  const FiniteGroup group = parse_group(config.descriptor);
  const ExactCov result = exact_cov(group, config.k);
  const CovBounds bounds = cov_bounds(group.order(), config.k);
  Document doc;
  doc["kind"] = "exact_cov";
  doc["group"] = group.descriptor();
  doc["k"] = config.k;
  doc["exact_cov"] = result.size;
  doc["set"] = result.set;
  doc["lower"] = round_significant(bounds.lower);
  doc["upper"] = round_significant(bounds.upper);
  return emit(config, std::move(doc), out);
}

int cmd_covering_bounds(const RunConfig& config, std::ostream& out) {
  Element n = 0;
  std::string name;
  if (config.descriptor.empty()) throw UsageError("--group or --n is required");
  if (config.descriptor.find_first_not_of("0123456789") == std::string::npos) {
    n = std::stoull(config.descriptor);
  } else {
    const FiniteGroup group = parse_group(config.descriptor);
    n = group.order();
    name = group.descriptor();
  }
  const CovBounds bounds = cov_bounds(n, config.k);
  Document doc;
  doc["kind"] = "cov_bounds";
  if (!name.empty()) doc["group"] = name;
  doc["n"] = n;
  doc["k"] = config.k;
  doc["lower"] = round_significant(bounds.lower);
  doc["upper"] = round_significant(bounds.upper);
  if (n >= 3 && config.k >= 1) {
    doc["feasible"] = feasibility(n, config.k);
    doc["covering_condition"] = round_significant(covering_condition_value(n, config.k));
    doc["covering_precondition"] = covering_precondition(n, config.k);
  }
  return emit(config, std::move(doc), out);
}

int cmd_covering_shrink(const RunConfig& config, std::ostream& out) {
  const FiniteGroup group = parse_group(config.descriptor);
  const Element n = group.order();
  GroupSubset x(n);
  if (!config.elements.empty()) {
    x = GroupSubset::from_elements(n, config.elements);
  } else {
    if (!config.size) throw UsageError("covering shrink needs --size or --set");
    if (*config.size > n) throw PreconditionError("--size exceeds the group order");
    Rng rng = Rng(require_seed(config)).child(kShrinkStream);
    while (x.size() < *config.size) x.insert(rng.below(n));
  }
  const GreedyShrink result = greedy_shrink_intersection(group, x, config.k);
  long double bound = 1;
  for (unsigned i = 0; i < config.k; ++i) bound *= static_cast<long double>(x.size());
  for (unsigned i = 1; i < config.k; ++i) bound /= static_cast<long double>(n);
  Document doc;
  doc["kind"] = "greedy_shrink";
  doc["group"] = group.descriptor();
  doc["k"] = config.k;
  doc["set"] = x.elements();
  doc["translates"] = result.translates;
  doc["sizes"] = result.sizes;
  doc["final_size"] = result.final_size;
  doc["bound"] = static_cast<std::uint64_t>(bound);
  return emit(config, std::move(doc), out);
}

std::vector<unsigned> parse_k_list(const std::string& text) {
  std::vector<unsigned> ks;
  for (const auto& part : split_top_level(text, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        ks.push_back(static_cast<unsigned>(std::stoul(part)));
      } else {
        const auto lo = std::stoul(part.substr(0, dash));
        const auto hi = std::stoul(part.substr(dash + 1));
        for (auto k = lo; k <= hi; ++k) ks.push_back(static_cast<unsigned>(k));
      }
    } catch (const std::exception&) {
      throw ParseError("bad k list", part);
    }
  }
  return ks;
}

std::vector<FiniteGroup> table_groups(const RunConfig& config) {
  std::vector<FiniteGroup> groups;
  for (const auto& d : split_top_level(config.groups, ',')) groups.push_back(parse_group(d));
  if (!config.family_sweep.empty()) {
    const auto dash = config.n_range.find('-');
    if (dash == std::string::npos) throw UsageError("--n must be a range a-b");
    Element lo = 0;
    Element hi = 0;
    try {
      lo = std::stoull(config.n_range.substr(0, dash));
      hi = std::stoull(config.n_range.substr(dash + 1));
    } catch (const std::exception&) {
      throw ParseError("bad n range", config.n_range);
    }
    for (Element n = std::max<Element>(lo, 1); n <= hi; ++n) {
      if (config.family_sweep == "cyclic") {
        groups.push_back(make_cyclic(n));
      } else if (config.family_sweep == "dihedral") {
        if (n % 2 == 0) groups.push_back(make_dihedral(n / 2));
      } else {
        throw ParseError("unknown family (cyclic | dihedral)", config.family_sweep);
      }
    }
  }
  if (groups.empty()) throw UsageError("cov-table needs --groups or --family with --n");
  return groups;
}

int cmd_cov_table(const RunConfig& config, std::ostream& out) {
  const std::uint64_t seed = require_seed(config);
  const auto groups = table_groups(config);
  const auto ks = parse_k_list(config.k_list);
  ConstructOptions options = construct_options(config);

  struct Row {
    std::string group;
    Element n;
    unsigned k;
    double lower;
    std::optional<std::size_t> exact;
    std::optional<std::size_t> achieved;
    double upper;
  };
  std::vector<Row> rows;
  std::uint64_t row_index = 0;
  for (const auto& g : groups) {
    for (const unsigned k : ks) {
      const Element n = g.order();
      const CovBounds b = cov_bounds(n, k);
      Row row{g.descriptor(), n, k, b.lower, std::nullopt, std::nullopt, b.upper};
      if (n <= 16 && k <= n) row.exact = exact_cov(g, k).size;
      if (n >= 3 && feasibility(n, k)) {
        try {
          const auto family = construct_intersecting_family(g, k, std::nullopt, mix_seed(seed, row_index), options);
          GroupSubset joined(n);
          for (const auto& m : family.subsets) joined |= m;
          row.achieved = joined.size();
        } catch (const AttemptsExhausted&) {
        }
      }
      rows.push_back(row);
      ++row_index;
    }
  }

  if (config.format == "csv") {
    out << "group,n,k,lower,exact,achieved,upper\n";
    for (const auto& r : rows) {
      out << r.group << ',' << r.n << ',' << r.k << ',' << format_real(r.lower) << ','
          << (r.exact ? std::to_string(*r.exact) : "") << ',' << (r.achieved ? std::to_string(*r.achieved) : "")
          << ',' << format_real(r.upper) << '\n';
    }
    return kOk;
  }
  Document doc;
  doc["kind"] = "cov_table";
  Document list = Document::array();
  for (const auto& r : rows) {
    Document d;
    d["group"] = r.group;
    d["n"] = r.n;
    d["k"] = r.k;
    d["lower"] = round_significant(r.lower);
    d["exact"] = r.exact ? Document(*r.exact) : Document(nullptr);
    d["achieved"] = r.achieved ? Document(*r.achieved) : Document(nullptr);
    d["upper"] = round_significant(r.upper);
    list.push_back(std::move(d));
  }
  doc["rows"] = std::move(list);
  return emit(config, std::move(doc), out);
}

TowerSpec tower_spec(const RunConfig& config) {
  if (config.descriptor.empty()) throw UsageError("--spec is required");
  return TowerSpec(parse_tower_descriptor(config.descriptor));
}

int cmd_tower_build(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const TowerSpec spec = tower_spec(config);
  for (const auto& c : spec.stage_conditions()) {
    if (c.literal_holds && !c.strengthened_holds && !c.exempt)
      err << "note: " << c.describe() << " (admissible only under the literal extension hypothesis)\n";
  }
  const Tower tower = build_tower(spec, require_seed(config), construct_options(config));
  return emit(config, to_document(tower), out);
}

Tower obtain_tower(const RunConfig& config) {
  if (!config.input.empty()) return load_tower(read_json_file(config.input));
  return build_tower(tower_spec(config), require_seed(config), construct_options(config));
}

int cmd_tower_translate(const RunConfig& config, std::ostream& out) {
  const Tower tower = obtain_tower(config);
  const TowerSpec& spec = tower.spec();
  std::vector<ThinSet> sets;
  if (!config.elements.empty()) {
    sets.push_back(make_thin_set(spec, tower.depth(), config.elements));
  } else {
    Rng rng = Rng(require_seed(config)).child(kThinSetStream);
    for (std::uint64_t s = 0; s < config.samples; ++s)
      sets.push_back(sample_thin_set(spec, tower.depth(), rng, config.fullness));
  }

  std::uint64_t successes = 0;
  bool nested = true;
  bool fibers = true;
  std::vector<std::pair<ThinSet, ThinTranslation>> results;
  for (const auto& y : sets) {
    ThinTranslation t = translate_thin(tower, y);
    if (t.verified) ++successes;
    if (!t.translator_sets.empty()) {
      nested = nested && t.nested && t.translator_in_all;
      fibers = fibers && t.fiber_unions;
    }
    results.emplace_back(y, std::move(t));
  }
  const bool all = successes == sets.size();

  if (config.format == "csv") {
    out << "index,size,translator,verified\n";
    for (std::size_t i = 0; i < results.size(); ++i)
      out << i << ',' << results[i].first.elements.size() << ',' << results[i].second.translator << ','
          << (results[i].second.verified ? "true" : "false") << '\n';
    return all ? kOk : kVerificationFailed;
  }
  Document doc;
  doc["kind"] = "translation_report";
  doc["spec"] = spec.descriptor();
  doc["tower_seed"] = tower.seed();
  doc["sets"] = sets.size();
  doc["successes"] = successes;
  if (spec.group_order(tower.depth()) <= kTranslatorSetLimit) {
    doc["translator_sets_nested"] = nested;
    doc["translator_sets_fiber_unions"] = fibers;
  }
  Document list = Document::array();
  for (const auto& [y, t] : results) list.push_back(to_document(t, y));
  doc["results"] = std::move(list);
  emit(config, std::move(doc), out);
  return all ? kOk : kVerificationFailed;
}

int cmd_tower_dim(const RunConfig& config, std::ostream& out) {
  const TowerSpec spec = tower_spec(config);
  const unsigned depth = config.depth.value_or(spec.depth());
  Document doc;
  doc["kind"] = "dimension";
  doc["spec"] = spec.descriptor();
  doc["depth"] = depth;
  Document list = Document::array();
  auto add = [&](const std::vector<Element>& y) {
    Document d;
    d["set"] = y;
    d["estimate"] = round_significant(dimension_estimate(spec, depth, y));
    list.push_back(std::move(d));
  };
  if (!config.elements.empty()) {
    add(config.elements);
  } else {
    Rng rng = Rng(require_seed(config)).child(kThinSetStream);
    for (std::uint64_t s = 0; s < config.samples; ++s) {
      const ThinSet y = sample_thin_set(spec, depth, rng, config.fullness);
      if (!y.elements.empty()) add(y.elements);
    }
  }
  doc["estimates"] = std::move(list);
  return emit(config, std::move(doc), out);
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.format != "json" && config.format != "csv") throw UsageError("--format must be json or csv");
  if (config.format == "csv" && config.command != "cov-table" && config.command != "tower translate")
    throw UsageError("--format csv is only available for cov-table and tower translate");
  set_thread_count(config.threads);
  if (config.command == "covering construct") return cmd_covering_construct(config, out);
  if (config.command == "covering verify") return cmd_covering_verify(config, out);
  if (config.command == "covering exact-cov") return cmd_covering_exact(config, out);
  if (config.command == "covering bounds") return cmd_covering_bounds(config, out);
  if (config.command == "covering shrink") return cmd_covering_shrink(config, out);
  if (config.command == "cov-table") return cmd_cov_table(config, out);
  if (config.command == "tower build") return cmd_tower_build(config, out, err);
  if (config.command == "tower translate") return cmd_tower_translate(config, out);
  if (config.command == "tower dim") return cmd_tower_dim(config, out);
  throw UsageError("unknown command '" + config.command + "'");
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json doc;
  doc["command"] = c.command;
  doc["descriptor"] = c.descriptor;
  doc["k"] = c.k;
  doc["l"] = c.l ? nlohmann::ordered_json(*c.l) : nlohmann::ordered_json(nullptr);
  doc["seed"] = c.seed ? nlohmann::ordered_json(*c.seed) : nlohmann::ordered_json(nullptr);
  doc["max_attempts"] = c.max_attempts;
  doc["mode"] = c.mode;
  doc["family"] = c.family;
  doc["samples"] = c.samples;
  doc["fullness"] = c.fullness;
  doc["size"] = c.size ? nlohmann::ordered_json(*c.size) : nlohmann::ordered_json(nullptr);
  doc["elements"] = c.elements;
  doc["depth"] = c.depth ? nlohmann::ordered_json(*c.depth) : nlohmann::ordered_json(nullptr);
  doc["groups"] = c.groups;
  doc["family_sweep"] = c.family_sweep;
  doc["n_range"] = c.n_range;
  doc["k_list"] = c.k_list;
  doc["input"] = c.input;
  doc["format"] = c.format;
  return doc;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig c;
  try {
    c.command = doc.at("command").get<std::string>();
    c.descriptor = doc.value("descriptor", "");
    c.k = doc.value("k", 2U);
    if (doc.contains("l") && !doc["l"].is_null()) c.l = doc["l"].get<std::size_t>();
    if (doc.contains("seed") && !doc["seed"].is_null()) c.seed = doc["seed"].get<std::uint64_t>();
    c.max_attempts = doc.value("max_attempts", 100U);
    c.mode = doc.value("mode", "auto");
    c.family = doc.value("family", false);
    c.samples = doc.value("samples", std::uint64_t{1000});
    c.fullness = doc.value("fullness", 1.0);
    if (doc.contains("size") && !doc["size"].is_null()) c.size = doc["size"].get<std::size_t>();
    c.elements = doc.value("elements", std::vector<Element>{});
    if (doc.contains("depth") && !doc["depth"].is_null()) c.depth = doc["depth"].get<unsigned>();
    c.groups = doc.value("groups", "");
    c.family_sweep = doc.value("family_sweep", "");
    c.n_range = doc.value("n_range", "");
    c.k_list = doc.value("k_list", "1,2");
    c.input = doc.value("input", "");
    c.format = doc.value("format", "json");
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(std::string("malformed run config: ") + e.what());
  }
  return c;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.out.empty()) return dispatch(config, out, err);
    std::ostringstream buffer;
    const int code = dispatch(config, buffer, err);
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + config.out + "'");
    file << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const AttemptsExhausted& e) {
    err << "attempts exhausted: " << e.what() << '\n';
    const auto& diag = e.diagnostics();
    err << "sizes seen:";
    for (const auto& sizes : diag.sizes_seen) {
      err << " [";
      for (std::size_t i = 0; i < sizes.size(); ++i) err << (i ? "," : "") << sizes[i];
      err << ']';
    }
    err << '\n';
    return kAttemptsExhausted;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const SoundnessViolation& e) {
    err << "soundness violation: " << e.what() << '\n';
    return kSoundness;
  } catch (const nlohmann::json::exception& e) {
    err << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"covtrans: covering sets by translates in finite groups and quotient towers", "covtrans"};
  app.require_subcommand(1);
  RunConfig config;
  std::string config_path;
  std::string mode;
  app.add_option("--config", config_path, "Re-run a serialized run config (JSON)");
  app.add_option("--threads", config.threads, "Worker threads for verification scans (0 = all cores)");
  app.add_option("--out", config.out, "Write the document to this file instead of stdout");
  app.add_option("--format", config.format, "json | csv");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", config.threads, "Worker threads (0 = all cores)");
    sub->add_option("--out", config.out, "Output file");
    sub->add_option("--format", config.format, "json | csv");
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Master seed (64-bit)");
    sub->add_option("--max-attempts", config.max_attempts, "Construction attempts");
    sub->add_option("--mode", config.mode, "auto | exhaustive | sampled:<m>");
  };

  auto* covering = app.add_subcommand("covering", "Intersecting families and k-covering sets");
  covering->require_subcommand(1);
  auto* construct = covering->add_subcommand("construct", "Randomized construction with certificate");
  construct->add_option("--group", config.descriptor, "Group descriptor")->required();
  construct->add_option("--k", config.k, "Family size / covering order");
  construct->add_option("--l", config.l, "Enlarge every family member to exactly l elements");
  construct->add_flag("--family", config.family, "Emit the intersecting family instead of the covering set");
  seeded(construct);
  common(construct);
  auto* verify = covering->add_subcommand("verify", "Re-verify a certificate");
  verify->add_option("--in", config.input, "Certificate file")->required();
  verify->add_option("--seed", config.seed, "Seed for sampled verification");
  verify->add_option("--mode", config.mode, "auto | exhaustive | sampled:<m>");
  common(verify);
  auto* exact = covering->add_subcommand("exact-cov", "Exhaustive minimum k-covering size (n <= 16)");
  exact->add_option("--group", config.descriptor, "Group descriptor")->required();
  exact->add_option("--k", config.k, "Covering order");
  common(exact);
  auto* bounds = covering->add_subcommand("bounds", "Lower and upper bounds on cov(G,k)");
  bounds->add_option("--group,--n", config.descriptor, "Group descriptor or order")->required();
  bounds->add_option("--k", config.k, "Covering order");
  common(bounds);
  auto* shrink = covering->add_subcommand("shrink", "Greedy intersection shrinking");
  shrink->add_option("--group", config.descriptor, "Group descriptor")->required();
  shrink->add_option("--k", config.k, "Number of translates");
  shrink->add_option("--size", config.size, "Size of a random set X");
  shrink->add_option("--set", config.elements, "Explicit set X")->delimiter(',');
  shrink->add_option("--seed", config.seed, "Seed for the random set");
  common(shrink);

  auto* table = app.add_subcommand("cov-table", "Table of cov(G,k) bounds, exact values and achieved sizes");
  table->add_option("--groups", config.groups, "Comma-separated group descriptors");
  table->add_option("--family", config.family_sweep, "cyclic | dihedral (with --n)");
  table->add_option("--n", config.n_range, "Order range a-b");
  table->add_option("--k", config.k_list, "k values, e.g. 1,2 or 1-3");
  seeded(table);
  common(table);

  auto* tower = app.add_subcommand("tower", "Quotient towers and thin-set translation");
  tower->require_subcommand(1);
  auto* build = tower->add_subcommand("build", "Build the staged sets X_i");
  build->add_option("--spec", config.descriptor, "tower:n0,n1,...")->required();
  seeded(build);
  common(build);
  auto* translate = tower->add_subcommand("translate", "Translate f-thin sets into the top stage");
  translate->add_option("--spec", config.descriptor, "tower:n0,n1,...");
  translate->add_option("--in", config.input, "Tower document (instead of rebuilding from --spec)");
  translate->add_option("--samples", config.samples, "Number of sampled thin sets");
  translate->add_option("--fullness", config.fullness, "Keep probability for sampled elements");
  translate->add_option("--set", config.elements, "Explicit thin set in the top group")->delimiter(',');
  seeded(translate);
  common(translate);
  auto* dim = tower->add_subcommand("dim", "Finite-depth dimension estimate");
  dim->add_option("--spec", config.descriptor, "tower:n0,n1,...")->required();
  dim->add_option("--depth", config.depth, "Depth d (default: tower depth)");
  dim->add_option("--set", config.elements, "Explicit set in G_d")->delimiter(',');
  dim->add_option("--samples", config.samples, "Number of sampled thin sets");
  dim->add_option("--fullness", config.fullness, "Keep probability for sampled elements");
  dim->add_option("--seed", config.seed, "Seed for sampled thin sets");
  common(dim);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    if (!args.empty() && args.front() == "--config") {
      // --config alone re-runs the stored configuration.
      app.require_subcommand(0);
    }
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (!config_path.empty()) {
    try {
      std::ifstream in(config_path);
      if (!in) {
        err << "error: cannot open '" << config_path << "'\n";
        return kUsage;
      }
      const auto doc = nlohmann::json::parse(in);
      RunConfig loaded = config_from_json(doc.contains("run_config") ? doc["run_config"] : doc);
      loaded.out = config.out;
      loaded.threads = config.threads;
      return execute(loaded, out, err);
    } catch (const std::exception& e) {
      err << "integrity error: " << e.what() << '\n';
      return kIntegrity;
    }
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    for (auto* leaf : sub->get_subcommands()) config.command += " " + leaf->get_name();
  }
  return execute(config, out, err);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace covtrans::cli
