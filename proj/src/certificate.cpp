#include "covtrans/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "covtrans/descriptor.hpp"

namespace covtrans {

namespace {

Document elements_document(const GroupSubset& s) {
  Document out = Document::array();
  for (Element x = s.first(); x != GroupSubset::npos; x = s.next(x)) out.push_back(x);
  return out;
}

GroupSubset read_set(const nlohmann::json& list, Element order, const std::string& what) {
  if (!list.is_array()) throw IntegrityError(what + " is not an element list");
  GroupSubset s(order);
  for (const auto& item : list) {
    if (!item.is_number_unsigned()) throw IntegrityError(what + " contains a non-element entry");
    const auto x = item.get<Element>();
    if (x >= order) throw IntegrityError(what + " lists " + std::to_string(x) + " outside the group");
    if (s.contains(x)) throw IntegrityError(what + " lists " + std::to_string(x) + " twice");
    s.insert(x);
  }
  return s;
}

const nlohmann::json& field(const nlohmann::json& doc, const char* name) {
  if (!doc.contains(name)) throw IntegrityError(std::string("certificate lacks field '") + name + "'");
  return doc.at(name);
}

}  // namespace

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

Document to_document(const Verification& v) {
  Document doc;
  doc["mode"] = v.mode.is_exhaustive() ? "exhaustive" : "sampled";
  doc["trials"] = v.checked;
  doc["result"] = v.passed;
  if (v.witness) doc["witness"] = *v.witness;
  return doc;
}

Document to_document(const FiniteGroup& group, const IntersectingFamily& family) {
  Document doc;
  doc["kind"] = "intersecting_family";
  doc["group"] = group.descriptor();
  doc["k"] = family.k;
  doc["p"] = round_significant(family.p);
  doc["seed"] = family.seed;
  doc["attempts"] = family.attempts_used;
  doc["sizes"] = family.sizes;
  doc["size_cap"] = round_significant(family.size_cap);
  if (family.target_size) doc["l"] = *family.target_size;
  Document sets = Document::array();
  for (const auto& member : family.subsets) sets.push_back(elements_document(member));
  doc["sets"] = std::move(sets);
  doc["verification"] = to_document(family.verification);
  return doc;
}

Document to_document(const CoveringCertificate& cert) {
  Document doc;
  doc["kind"] = "k_covering";
  doc["group"] = cert.group;
  doc["k"] = cert.k;
  doc["p"] = round_significant(cert.p);
  doc["seed"] = cert.seed;
  doc["attempts"] = cert.attempts_used;
  doc["sizes"] = cert.member_sizes;
  doc["size"] = cert.set.size();
  doc["size_bound"] = round_significant(cert.size_bound);
  Document members = Document::array();
  for (const auto& member : cert.members) members.push_back(elements_document(member));
  doc["members"] = std::move(members);
  doc["set"] = elements_document(cert.set);
  doc["family_verification"] = to_document(cert.family_verification);
  doc["verification"] = to_document(cert.verification);
  return doc;
}

std::string render(const Document& doc) { return doc.dump(2) + "\n"; }

LoadedCertificate load_certificate(const nlohmann::json& doc) {
  if (!doc.is_object()) throw IntegrityError("certificate is not a JSON object");
  const auto& kind = field(doc, "kind");
  const auto& group_field = field(doc, "group");
  if (!group_field.is_string()) throw IntegrityError("group must be a descriptor string");
  LoadedCertificate out{LoadedCertificate::Kind::intersecting_family, parse_group(group_field.get<std::string>()),
                        0, {}, std::nullopt};
  const Element order = out.group.order();
  const auto& k_field = field(doc, "k");
  if (!k_field.is_number_unsigned()) throw IntegrityError("k must be a non-negative integer");
  out.k = k_field.get<unsigned>();

  const auto& sizes = field(doc, "sizes");
  const char* list_name = nullptr;
  if (kind == "intersecting_family") {
    list_name = "sets";
  } else if (kind == "k_covering") {
    out.kind = LoadedCertificate::Kind::k_covering;
    list_name = "members";
  } else {
    throw IntegrityError("unknown certificate kind");
  }
  const auto& lists = field(doc, list_name);
  if (!lists.is_array() || !sizes.is_array() || lists.size() != sizes.size())
    throw IntegrityError("'sizes' and '" + std::string(list_name) + "' disagree in length");
  if (out.kind == LoadedCertificate::Kind::intersecting_family && lists.size() != out.k)
    throw IntegrityError("family lists " + std::to_string(lists.size()) + " sets for k = " + std::to_string(out.k));
  for (std::size_t i = 0; i < lists.size(); ++i) {
    GroupSubset s = read_set(lists[i], order, std::string(list_name) + "[" + std::to_string(i) + "]");
    if (!sizes[i].is_number_unsigned() || sizes[i].get<std::size_t>() != s.size())
      throw IntegrityError("sizes[" + std::to_string(i) + "] does not match the " + std::to_string(s.size()) +
                           " listed elements");
    out.members.push_back(std::move(s));
  }

  if (out.kind == LoadedCertificate::Kind::k_covering) {
    GroupSubset set = read_set(field(doc, "set"), order, "set");
    const auto& size = field(doc, "size");
    if (!size.is_number_unsigned() || size.get<std::size_t>() != set.size())
      throw IntegrityError("'size' does not match the listed set");
    GroupSubset joined(order);
    for (const auto& m : out.members) joined |= m;
    if (!(joined == set)) throw IntegrityError("'set' is not the union of 'members'");
    out.set = std::move(set);
  }
  return out;
}

Verification reverify(const LoadedCertificate& cert, const VerificationMode& mode, std::uint64_t seed) {
  if (cert.kind == LoadedCertificate::Kind::k_covering) return verify_k_covering(cert.group, *cert.set, cert.k, mode, seed);
  return verify_intersecting(cert.group, cert.members, mode, seed);
}

}  // namespace covtrans
