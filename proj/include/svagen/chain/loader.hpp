// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "svagen/chain/model.hpp"

namespace svagen::chain {

struct ChainFormatError : Error {
    using Error::Error;
};

struct ChainValidationError : Error {
    std::string sub_question_id;
    ChainValidationError(const std::string& sq_id, const std::string& msg)
        : Error("chain validation failed at '" + sq_id + "': " + msg), sub_question_id(sq_id) {}
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ChainFormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline QaPair parse_qa(const std::vector<std::string>& lines, const std::string& where) {
    QaPair qa;
    std::string* current = nullptr;
    for (const auto& line : lines) {
        if (starts_with(line, "Q:")) {
            current = &qa.question;
            *current = trim(line.substr(2));
        } else if (starts_with(line, "A:")) {
            current = &qa.answer;
            *current = trim(line.substr(2));
        } else if (current) {
            if (!current->empty()) *current += "\n";
            *current += line;
        }
    }
    if (qa.question.empty() || qa.answer.empty())
        throw ChainFormatError(where + ": example needs both 'Q:' and 'A:' parts");
    return qa;
}

inline FieldKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "identifier") return FieldKind::Identifier;
    if (s == "identifier_list") return FieldKind::IdentifierList;
    if (s == "bit_constant") return FieldKind::BitConstant;
    if (s == "expression") return FieldKind::Expression;
    if (s == "code_block") return FieldKind::CodeBlock;
    throw ChainFormatError(where + ": unknown extract kind '" + s + "'");
}

}  // namespace detail

// .sq file: fenced sections ---VALID--- (xk), ---INVALID--- (x1),
// ---QUESTION---, ---EXTRACT--- (field:kind per line), ---CARRY---,
// ---FLAGS--- (asset_producer, codegen).
inline SubQuestion parse_sq_file(const std::string& path, const std::string& id) {
    SubQuestion sq;
    sq.id = id;
    std::string text = detail::read_file(path);

    std::vector<std::pair<std::string, std::vector<std::string>>> sections;
    std::string current_name;
    std::vector<std::string> current_lines;
    auto flush = [&]() {
        if (!current_name.empty()) sections.emplace_back(current_name, current_lines);
        current_lines.clear();
    };
    for (const auto& raw : split(text, '\n')) {
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (starts_with(t, "---") && t.size() > 6 && t.substr(t.size() - 3) == "---") {
            flush();
            current_name = t.substr(3, t.size() - 6);
        } else if (!current_name.empty()) {
            current_lines.push_back(line);
        }
    }
    flush();

    for (const auto& [name, lines] : sections) {
        std::string where = path + " [" + name + "]";
        if (name == "VALID") {
            sq.valid_examples.push_back(detail::parse_qa(lines, where));
        } else if (name == "INVALID") {
            sq.invalid_examples.push_back(detail::parse_qa(lines, where));
        } else if (name == "QUESTION") {
            std::string q;
            for (const auto& l : lines) {
                if (!q.empty()) q += "\n";
                q += l;
            }
            sq.question_template = trim(q);
        } else if (name == "EXTRACT") {
            for (const auto& l : lines) {
                std::string t = trim(l);
                if (t.empty()) continue;
                size_t colon = t.find(':');
                if (colon == std::string::npos)
                    throw ChainFormatError(where + ": expected 'field:kind'");
                sq.extract_schema.push_back(
                    {trim(t.substr(0, colon)), detail::parse_kind(trim(t.substr(colon + 1)), where)});
            }
        } else if (name == "CARRY") {
            for (const auto& l : lines) {
                std::string t = trim(l);
                if (!t.empty()) sq.carry_forward.push_back(t);
            }
        } else if (name == "FLAGS") {
            for (const auto& l : lines) {
                std::string t = trim(l);
                if (t == "asset_producer") sq.is_asset_producer = true;
                else if (t == "codegen") sq.is_codegen = true;
                else if (!t.empty())
                    throw ChainFormatError(where + ": unknown flag '" + t + "'");
            }
        } else {
            throw ChainFormatError(path + ": unknown section '" + name + "'");
        }
    }
    if (sq.question_template.empty())
        throw ChainFormatError(path + ": missing ---QUESTION--- section");
    return sq;
}

// reads manifest + .sq files without validating chain-level invariants
inline ThreatChain parse_chain_dir(const std::string& dir, const std::string& threat_id) {
    ThreatChain chain;
    chain.threat = threat_id;
    std::string manifest_path = dir + "/manifest";
    std::string manifest = detail::read_file(manifest_path);
    int index = 0;
    for (const auto& raw : split(manifest, '\n')) {
        std::string id = trim(raw);
        if (id.empty() || id[0] == '#') continue;
        SubQuestion sq = parse_sq_file(dir + "/" + id + ".sq", id);
        sq.index = ++index;
        chain.sub_questions.push_back(std::move(sq));
    }
    if (chain.sub_questions.empty())
        throw ChainFormatError(manifest_path + ": empty manifest");
    return chain;
}

// Chain-level invariants as diagnostics: example counts, codegen placement,
// producer placement, placeholder/causality checks.
inline Diagnostics validate_chain(const ThreatChain& chain, int k = 3) {
    Diagnostics out;
    auto bad = [&](const SubQuestion& sq, const std::string& msg) {
        out.push_back({Diagnostic::Level::Error, chain.threat + "/" + sq.id, sq.index, msg});
    };

    std::set<std::string> ids;
    std::set<std::string> exported;  // carry fields of earlier sub-questions
    int producers = 0;
    for (size_t i = 0; i < chain.sub_questions.size(); ++i) {
        const SubQuestion& sq = chain.sub_questions[i];
        bool last = i + 1 == chain.sub_questions.size();

        if (!ids.insert(sq.id).second) bad(sq, "duplicate sub-question id");
        if (static_cast<int>(sq.valid_examples.size()) != k)
            bad(sq, "expected " + std::to_string(k) + " valid examples, found " +
                        std::to_string(sq.valid_examples.size()));
        if (sq.invalid_examples.size() != 1)
            bad(sq, "expected exactly 1 invalid example, found " +
                        std::to_string(sq.invalid_examples.size()));
        if (sq.is_codegen && !last) bad(sq, "codegen sub-question must be last in the chain");
        if (sq.extract_schema.empty()) bad(sq, "extract schema is empty");

        for (const auto& placeholder : placeholders_of(sq.question_template))
            if (!is_design_fact(placeholder) && !exported.count(placeholder))
                bad(sq, "placeholder '{" + placeholder +
                            "}' is neither a design fact nor exported by an earlier "
                            "sub-question");

        // non-producers may only carry what they extract; the producer also
        // exports its per-asset field names
        for (const auto& c : sq.carry_forward)
            if (!sq.is_asset_producer && !sq.find_field(c))
                bad(sq, "carry field '" + c + "' is not in the extract schema");

        if (sq.is_asset_producer) ++producers;
        for (const auto& c : sq.carry_forward) exported.insert(c);
    }
    if (producers != 1)
        out.push_back({Diagnostic::Level::Error, chain.threat, 0,
                       "chain must have exactly one asset producer, found " +
                           std::to_string(producers)});
    if (!chain.sub_questions.empty() && !chain.sub_questions.back().is_codegen)
        out.push_back({Diagnostic::Level::Error, chain.threat, 0,
                       "final sub-question must be the codegen question"});
    if (producers == 1) {
        const SubQuestion* producer = chain.asset_producer();
        for (const auto& sq : chain.sub_questions)
            if (sq.is_codegen && sq.index <= producer->index)
                out.push_back({Diagnostic::Level::Error, chain.threat + "/" + sq.id, sq.index,
                               "codegen precedes the asset producer"});
    }
    return out;
}

// parse + validate; throws with the first offending sub-question id
inline ThreatChain load_chain(const ThreatModel& threat, int k = 3) {
    ThreatChain chain = parse_chain_dir(threat.chain_path, threat.id);
    Diagnostics problems = validate_chain(chain, k);
    if (!problems.empty()) {
        const Diagnostic& first = problems.front();
        throw ChainValidationError(first.file, first.message);
    }
    return chain;
}

}  // namespace svagen::chain
