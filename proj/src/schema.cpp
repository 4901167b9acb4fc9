#include "modlab/schema.hpp"

namespace modlab {

namespace {

bool type_matches(const std::string& type, const nlohmann::json& value) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

void validate(const nlohmann::json& schema, const nlohmann::json& value, const std::string& path,
              std::vector<std::string>& out) {
    if (schema.contains("type")) {
        const auto& type = schema.at("type");
        bool ok = false;
        if (type.is_string()) {
            ok = type_matches(type.get<std::string>(), value);
        } else if (type.is_array()) {
            for (const auto& t : type) ok = ok || type_matches(t.get<std::string>(), value);
        }
        if (!ok) {
            out.push_back(path + ": expected type " + type.dump() + ", got " + value.type_name());
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& candidate : schema.at("enum")) ok = ok || candidate == value;
        if (!ok) out.push_back(path + ": value " + value.dump() + " not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required")) {
                if (!value.contains(key.get<std::string>())) {
                    out.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
                }
            }
        }
        const nlohmann::json* props =
            schema.contains("properties") ? &schema.at("properties") : nullptr;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props && props->contains(it.key())) {
                validate(props->at(it.key()), it.value(), path + "/" + it.key(), out);
            } else if (schema.contains("additionalProperties") &&
                       schema.at("additionalProperties").is_boolean() &&
                       !schema.at("additionalProperties").get<bool>()) {
                out.push_back(path + ": unexpected key '" + it.key() + "'");
            } else if (schema.contains("additionalProperties") &&
                       schema.at("additionalProperties").is_object()) {
                validate(schema.at("additionalProperties"), it.value(), path + "/" + it.key(), out);
            }
        }
    }
    if (value.is_array()) {
        if (schema.contains("minItems") &&
            value.size() < schema.at("minItems").get<std::size_t>()) {
            out.push_back(path + ": array shorter than minItems");
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                validate(schema.at("items"), value[i], path + "/" + std::to_string(i), out);
            }
        }
    }
}

}  // namespace

std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& document) {
    std::vector<std::string> out;
    validate(schema, document, "", out);
    return out;
}

bool schema_valid(const nlohmann::json& schema, const nlohmann::json& document) {
    return schema_violations(schema, document).empty();
}

}  // namespace modlab
