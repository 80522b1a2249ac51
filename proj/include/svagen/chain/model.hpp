// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "svagen/common.hpp"

namespace svagen::chain {

// A threat model names a weakness class and points at the sub-question chain
// template directory that decomposes it.
struct ThreatModel {
    std::string id;         // unused_states | state_transition | info_leakage | incorrect_init
    std::string label;
    std::string reference;  // external identifier, e.g. CWE-1245
    std::string chain_path;
};

inline std::vector<ThreatModel> default_threat_models(const std::string& chains_dir) {
    auto path = [&](const char* id) { return chains_dir + "/" + id; };
    return {
        {"unused_states", "Unused States", "CWE-1245", path("unused_states")},
        {"state_transition", "State Transition", "RCD-011", path("state_transition")},
        {"info_leakage", "Information Leakage", "CWE-200", path("info_leakage")},
        {"incorrect_init", "Incorrect Initialization", "CWE-1271", path("incorrect_init")},
    };
}

inline const ThreatModel* find_threat(const std::vector<ThreatModel>& models,
                                      const std::string& id) {
    for (const auto& t : models)
        if (t.id == id) return &t;
    return nullptr;
}

struct QaPair {
    std::string question;
    std::string answer;
};

enum class FieldKind { Identifier, IdentifierList, BitConstant, Expression, CodeBlock };

inline const char* to_string(FieldKind k) {
    switch (k) {
    case FieldKind::Identifier: return "identifier";
    case FieldKind::IdentifierList: return "identifier_list";
    case FieldKind::BitConstant: return "bit_constant";
    case FieldKind::Expression: return "expression";
    case FieldKind::CodeBlock: return "code_block";
    }
    return "?";
}

struct ExtractField {
    std::string name;
    FieldKind kind = FieldKind::Expression;
};

struct SubQuestion {
    std::string id;
    int index = 0;  // 1-based position in the chain
    std::string question_template;
    std::vector<QaPair> valid_examples;
    std::vector<QaPair> invalid_examples;  // exactly one on a valid chain
    std::vector<ExtractField> extract_schema;
    std::vector<std::string> carry_forward;
    bool is_asset_producer = false;
    bool is_codegen = false;

    const ExtractField* find_field(const std::string& name) const {
        for (const auto& f : extract_schema)
            if (f.name == name) return &f;
        return nullptr;
    }
};

struct ThreatChain {
    std::string threat;
    std::vector<SubQuestion> sub_questions;

    const SubQuestion* asset_producer() const {
        for (const auto& sq : sub_questions)
            if (sq.is_asset_producer) return &sq;
        return nullptr;
    }
};

// One identified asset (unused encoding, from-state, leaking signal,
// uninitialized register) with the per-asset fields the producer exports.
struct AssetInfo {
    std::string threat;
    std::string module;
    std::string name;
    std::map<std::string, std::string> payload;
};

// placeholders a chain may take straight from the design model
inline const std::vector<std::string>& design_fact_names() {
    static const std::vector<std::string> names = {
        "source",        "module",          "design_name",   "inputs",
        "outputs",       "register_table",  "transition_dump", "sensitive_candidates",
        "fsm_summary",
    };
    return names;
}

inline bool is_design_fact(const std::string& name) {
    for (const auto& n : design_fact_names())
        if (n == name) return true;
    return false;
}

// `{snake_case}` placeholder names appearing in a template
inline std::vector<std::string> placeholders_of(std::string_view text) {
    std::vector<std::string> out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '{') continue;
        size_t j = text.find('}', i + 1);
        if (j == std::string_view::npos) break;
        std::string name(text.substr(i + 1, j - i - 1));
        bool ok = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
        for (char c : name)
            ok &= (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (ok) {
            bool seen = false;
            for (const auto& n : out) seen |= n == name;
            if (!seen) out.push_back(std::move(name));
        }
        i = j;
    }
    return out;
}

}  // namespace svagen::chain
