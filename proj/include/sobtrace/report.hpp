// Machine-readable report serialization: JSON with fixed field order and
// 17 significant digits for floats, CSV with one row per report, and a
// plain-text rendering.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sobtrace/inequality.hpp"

namespace sobtrace {

using Json = nlohmann::ordered_json;

Json to_json(const InequalityReport& r);
Json to_json(const IdentityResult& r);
Json to_json(const ScanResult& r);

/// Deterministic JSON text; floats as %.17g, non-finite values as null.
std::string dump_json(const Json& value, int indent = 2);

/// One row per report; columns are the union of keys in order of first
/// appearance. Nested values are embedded as compact JSON strings.
std::string to_csv(const std::vector<Json>& reports);

/// Indented "key: value" listing of a report document.
std::string to_pretty(const Json& value);

}  // namespace sobtrace
