#pragma once

#include <json.hpp>

#include "covtrans/certificate.hpp"
#include "covtrans/tower.hpp"

namespace covtrans {

// Kernel orders, per-stage seeds, sorted kernel covers L_i, measures and the
// section convention: enough to rebuild membership exactly.
Document to_document(const Tower& tower);

// Inverse of to_document. Throws IntegrityError if the stored sizes or
// measures disagree with the rebuilt stages.
Tower load_tower(const nlohmann::json& doc);

Document to_document(const ThinSet& y);
Document to_document(const ThinTranslation& t, const ThinSet& y);

}  // namespace covtrans
