#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "covtrans/covering.hpp"

namespace covtrans {

using Document = nlohmann::ordered_json;

// Round to 12 significant digits so the shortest round-trip printing used by
// the JSON writer emits at most 12 digits.
double round_significant(double value, int digits = 12);

Document to_document(const Verification& v);
Document to_document(const FiniteGroup& group, const IntersectingFamily& family);
Document to_document(const CoveringCertificate& cert);

// Canonical text form: two-space indented JSON followed by a newline.
std::string render(const Document& doc);

struct LoadedCertificate {
  enum class Kind { intersecting_family, k_covering };
  Kind kind = Kind::intersecting_family;
  FiniteGroup group;
  unsigned k = 0;
  std::vector<GroupSubset> members;
  // Only for k_covering: the union that is being certified.
  std::optional<GroupSubset> set;
};

// Parses and cross-checks a certificate. Throws IntegrityError when listed
// sizes disagree with the listed elements, elements repeat or fall outside the
// group, or the covering set is not the union of its members.
LoadedCertificate load_certificate(const nlohmann::json& doc);

// Recomputes the verdict from the listed sets only.
Verification reverify(const LoadedCertificate& cert, const VerificationMode& mode, std::uint64_t seed = 0);

}  // namespace covtrans
