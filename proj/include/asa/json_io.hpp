#pragma once

#include <json.hpp>

#include "asa/cohomology.hpp"
#include "asa/engine.hpp"

namespace asa {

using ordered_json = nlohmann::ordered_json;

// Matrices travel as arrays of arrays of decimal strings; 64-bit transports
// would silently truncate large entries.
ordered_json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const ordered_json& j);

ordered_json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const ordered_json& j);

// { group: {order, table}, rank, relations, action: [matrices] }
ordered_json module_to_json(const GaloisModule& m);
GaloisModule module_from_json(const ordered_json& j);

ordered_json fgab_to_json(const FgAbGroup& g);

ordered_json density_to_json(const DensityEstimate& e);
ordered_json relation_to_json(const DensityRelationReport& r);
ordered_json report_to_json(const AsaReport& r);
ordered_json going_to_json(const GoingOverLReport& r);
ordered_json quasiiso_to_json(const QuasiIsoReport& r);
ordered_json longexact_to_json(const LongExactReport& r);

std::string render_report_text(const AsaReport& r);

}  // namespace asa
