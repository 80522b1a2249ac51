// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "svagen/chain/model.hpp"
#include "svagen/common.hpp"

namespace svagen::prompt {

struct PromptConfig {
    int k = 3;                              // valid examples per prompt
    int max_retries = 2;                    // extraction retries
    size_t context_window_budget = 24000;   // max prompt characters
};

struct PromptBundle {
    std::string sub_question_id;
    std::string rendered_text;
    std::map<std::string, std::string> carried_info;
    std::string fingerprint;
};

struct UnresolvedPlaceholder : Error {
    std::string name;
    explicit UnresolvedPlaceholder(const std::string& n)
        : Error("unresolved placeholder '{" + n + "}'"), name(n) {}
};

struct BudgetExceeded : Error {
    size_t overflow;
    explicit BudgetExceeded(size_t over)
        : Error("rendered prompt exceeds the context budget by " + std::to_string(over) +
                " characters"),
          overflow(over) {}
};

namespace detail {

constexpr size_t kCarryTruncateKeep = 32;

inline std::string substitute(const std::string& tmpl,
                              const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size());
    for (size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] != '{') {
            out += tmpl[i];
            continue;
        }
        size_t close = tmpl.find('}', i + 1);
        std::string name =
            close == std::string::npos ? "" : tmpl.substr(i + 1, close - i - 1);
        bool placeholder = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
        for (char c : name)
            placeholder &= (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!placeholder) {
            out += tmpl[i];
            continue;
        }
        auto it = values.find(name);
        if (it == values.end()) throw UnresolvedPlaceholder(name);
        out += it->second;
        i = close;
    }
    return out;
}

// keep the first N items of an oversized comma list, append a count marker
inline std::string truncate_list(const std::string& value) {
    auto items = split_list(value);
    if (items.size() <= kCarryTruncateKeep) return value;
    std::vector<std::string> kept(items.begin(),
                                  items.begin() + static_cast<long>(kCarryTruncateKeep));
    return join(kept, ", ") + " (+" + std::to_string(items.size() - kCarryTruncateKeep) +
           " more)";
}

inline std::string render_text(const chain::SubQuestion& sq,
                               const std::map<std::string, std::string>& values,
                               const std::map<std::string, std::string>& carried,
                               const PromptConfig& cfg) {
    std::string out = "Task step '" + sq.id + "'. Follow the examples exactly.\n";
    int n = 0;
    for (const auto& ex : sq.valid_examples) {
        if (n == cfg.k) break;
        ++n;
        out += "\n### Example " + std::to_string(n) + " (valid)\nQ: " + ex.question +
               "\nA: " + ex.answer + "\n";
    }
    for (const auto& ex : sq.invalid_examples) {
        out += "\n### Example " + std::to_string(++n) + " (invalid input)\nQ: " + ex.question +
               "\nA: " + ex.answer + "\n";
        break;
    }
    if (!carried.empty()) {
        out += "\n### Carried information\n";
        for (const auto& [key, value] : carried) out += key + ": " + value + "\n";
    }
    out += "\n### Question\n" + substitute(sq.question_template, values) + "\n";
    return out;
}

}  // namespace detail

inline PromptBundle make_bundle(const chain::SubQuestion& sq, std::string text,
                                const std::map<std::string, std::string>& carried) {
    PromptBundle b;
    b.sub_question_id = sq.id;
    b.rendered_text = std::move(text);
    b.carried_info = carried;
    b.fingerprint = fingerprint_of(b.rendered_text);
    return b;
}

// Renders the prompt: k valid examples, then the invalid example, then the
// carried info, then the question. Deterministic; same inputs give the same
// fingerprint. Over-budget prompts get their carried lists truncated once
// before failing.
inline PromptBundle render_prompt(const chain::SubQuestion& sq,
                                  const std::map<std::string, std::string>& bound_facts,
                                  const std::map<std::string, std::string>& carried,
                                  const PromptConfig& cfg = {}) {
    std::map<std::string, std::string> values = bound_facts;
    for (const auto& [k, v] : carried) values[k] = v;

    std::string text = detail::render_text(sq, values, carried, cfg);
    if (text.size() <= cfg.context_window_budget) return make_bundle(sq, std::move(text), carried);

    std::map<std::string, std::string> trimmed_carried;
    for (const auto& [k, v] : carried) trimmed_carried[k] = detail::truncate_list(v);
    std::map<std::string, std::string> trimmed_values = bound_facts;
    for (const auto& [k, v] : trimmed_carried) trimmed_values[k] = v;
    text = detail::render_text(sq, trimmed_values, trimmed_carried, cfg);
    if (text.size() <= cfg.context_window_budget)
        return make_bundle(sq, std::move(text), trimmed_carried);
    throw BudgetExceeded(text.size() - cfg.context_window_budget);
}

// ---------------------------------------------------------------------------
// answer extraction

struct AnswerRecord {
    enum class Status { Ok, InvalidInputDetected, ExtractionFailed };
    std::string sub_question_id;
    std::string raw_text;
    std::map<std::string, std::string> extracted;
    Status status = Status::ExtractionFailed;
    int attempts = 0;
    std::vector<std::string> problems;
};

namespace detail {

inline bool kind_ok(chain::FieldKind kind, const std::string& value) {
    switch (kind) {
    case chain::FieldKind::Identifier: return is_identifier(value);
    case chain::FieldKind::IdentifierList: {
        if (value.empty() || value == "none") return true;
        for (const auto& item : split_list(value))
            if (!is_identifier(item)) return false;
        return true;
    }
    case chain::FieldKind::BitConstant: return is_bit_constant(value);
    case chain::FieldKind::Expression:
        return !value.empty() && value.find('\n') == std::string::npos;
    case chain::FieldKind::CodeBlock: return !value.empty();
    }
    return false;
}

}  // namespace detail

// Parses `field: value` lines and fenced code blocks. A line beginning `N/A`
// marks a refusal answer: explicit no-data status, never fabricated fields.
inline AnswerRecord extract_info(const std::string& answer,
                                 const std::vector<chain::ExtractField>& schema) {
    AnswerRecord rec;
    rec.raw_text = answer;

    std::map<std::string, std::string> fields;
    std::vector<std::string> code_blocks;
    bool in_fence = false;
    std::string fence_buf;
    bool refused = false;

    for (const auto& raw : split(answer, '\n')) {
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (starts_with(t, "```")) {
            if (in_fence) {
                code_blocks.push_back(trim(fence_buf));
                fence_buf.clear();
            }
            in_fence = !in_fence;
            continue;
        }
        if (in_fence) {
            if (!fence_buf.empty()) fence_buf += "\n";
            fence_buf += line;
            continue;
        }
        if (starts_with(t, "N/A")) {
            refused = true;
            continue;
        }
        size_t colon = t.find(':');
        if (colon == std::string::npos || colon == 0) continue;
        std::string name = trim(t.substr(0, colon));
        if (!is_identifier(name)) continue;
        if (!fields.count(name)) fields[name] = trim(t.substr(colon + 1));
    }

    if (refused) {
        rec.status = AnswerRecord::Status::InvalidInputDetected;
        return rec;
    }

    size_t next_block = 0;
    bool all_ok = true;
    for (const auto& field : schema) {
        std::string value;
        if (field.kind == chain::FieldKind::CodeBlock) {
            if (next_block < code_blocks.size()) {
                value = code_blocks[next_block++];
            } else {
                all_ok = false;
                rec.problems.push_back("missing code block for field '" + field.name + "'");
                continue;
            }
        } else {
            auto it = fields.find(field.name);
            if (it == fields.end()) {
                all_ok = false;
                rec.problems.push_back("missing field '" + field.name + "'");
                continue;
            }
            value = it->second;
        }
        if (!detail::kind_ok(field.kind, value)) {
            all_ok = false;
            rec.problems.push_back("field '" + field.name + "' is not a valid " +
                                   std::string(chain::to_string(field.kind)) + ": '" + value +
                                   "'");
            continue;
        }
        rec.extracted[field.name] = value;
    }
    rec.status = all_ok ? AnswerRecord::Status::Ok : AnswerRecord::Status::ExtractionFailed;
    if (!all_ok) rec.extracted.clear();
    return rec;
}

}  // namespace svagen::prompt
