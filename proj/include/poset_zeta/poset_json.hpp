#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "poset.hpp"

namespace poset_zeta {

/// {"elements": [...], "relations": [[a, b], ...]}, each pair meaning a < b.
inline Poset poset_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array())
        fail(ErrorCode::ParseError, "poset JSON needs an \"elements\" array");
    std::vector<std::string> labels;
    for (const auto& e : doc["elements"]) {
        if (!e.is_string() || e.get<std::string>().empty())
            fail(ErrorCode::ParseError, "element names must be nonempty strings");
        labels.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> relations;
    if (doc.contains("relations")) {
        if (!doc["relations"].is_array()) fail(ErrorCode::ParseError, "\"relations\" must be an array");
        for (const auto& r : doc["relations"]) {
            if (!r.is_array() || r.size() != 2 || !r[0].is_string() || !r[1].is_string())
                fail(ErrorCode::ParseError, "each relation must be a pair of element names");
            relations.emplace_back(r[0].get<std::string>(), r[1].get<std::string>());
        }
    }
    return build_poset(labels, relations);
}

inline Poset poset_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseError, e.what());
    }
    return poset_from_json(doc);
}

/// Emits cover relations only; reading the document back takes the closure.
inline nlohmann::json poset_to_json(const Poset& p) {
    nlohmann::json doc;
    doc["elements"] = p.labels();
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& [a, b] : p.cover_relations()) rel.push_back({p.label(a), p.label(b)});
    doc["relations"] = std::move(rel);
    return doc;
}

} // namespace poset_zeta
