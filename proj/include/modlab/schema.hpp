#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace modlab {

/// Validates a document against the subset of JSON Schema the shipped
/// schemas use: type, properties, required, items, enum, minItems and
/// additionalProperties (boolean form). Returns the list of violations,
/// empty when the document conforms.
std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& document);

bool schema_valid(const nlohmann::json& schema, const nlohmann::json& document);

}  // namespace modlab
