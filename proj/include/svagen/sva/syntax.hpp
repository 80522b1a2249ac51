// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "svagen/sva/lint.hpp"
#include "svagen/sva/snippet.hpp"

namespace svagen::sva {

// Syntax scoring out of 100: the tolerant scanner slices the text into
// `property ... assert property(...)` candidate regions; the score is the
// fraction that parse after constant lint.

struct SyntaxReport {
    double score = 0.0;
    int candidates = 0;
    int passing = 0;
    std::vector<std::string> diagnostics;
    std::vector<SvaSnippet> parsed;  // the passing snippets
};

inline std::vector<std::string> scan_snippet_candidates(std::string_view text) {
    detail::SvaScanner scanner(text);
    const auto& toks = scanner.tokens();
    using Kind = detail::SvaToken::Kind;

    std::vector<size_t> starts;  // token indices of candidate-opening `property`
    for (size_t i = 0; i < toks.size(); ++i) {
        if (toks[i].kind != Kind::Word || toks[i].text != "property") continue;
        bool after_assert = i > 0 && toks[i - 1].kind == Kind::Word && toks[i - 1].text == "assert";
        if (!after_assert) starts.push_back(i);
    }

    std::vector<std::string> out;
    for (size_t s = 0; s < starts.size(); ++s) {
        size_t begin_tok = starts[s];
        size_t limit_tok = s + 1 < starts.size() ? starts[s + 1] : toks.size() - 1;
        // extend through the closing `assert property ( name ) ;` if present
        size_t end_tok = limit_tok;
        for (size_t i = begin_tok; i + 1 < limit_tok; ++i) {
            if (toks[i].kind == Kind::Word && toks[i].text == "assert" &&
                toks[i + 1].kind == Kind::Word && toks[i + 1].text == "property") {
                size_t j = i + 2;
                while (j < limit_tok && !(toks[j].kind == Kind::Punct && toks[j].text == ";")) ++j;
                end_tok = j < limit_tok ? j + 1 : limit_tok;
                break;
            }
        }
        size_t a = toks[begin_tok].pos;
        size_t b = end_tok < toks.size() - 1
                       ? toks[end_tok - 1].pos + toks[end_tok - 1].text.size()
                       : text.size();
        if (end_tok == limit_tok && s + 1 < starts.size())
            b = toks[limit_tok].pos;  // runt region truncated at the next candidate
        out.emplace_back(trim(text.substr(a, b - a)));
    }
    return out;
}

inline SyntaxReport check_syntax(std::string_view text) {
    SyntaxReport rep;
    auto candidates = scan_snippet_candidates(text);
    rep.candidates = static_cast<int>(candidates.size());
    if (candidates.empty()) {
        rep.diagnostics.push_back("no assertions found");
        return rep;
    }
    for (const auto& cand : candidates) {
        LintResult linted = lint_constants(cand);
        try {
            rep.parsed.push_back(parse_snippet(linted.text));
            ++rep.passing;
        } catch (const SnippetSyntaxError& e) {
            rep.diagnostics.push_back(e.what());
        }
    }
    rep.score = 100.0 * rep.passing / rep.candidates;
    return rep;
}

}  // namespace svagen::sva
