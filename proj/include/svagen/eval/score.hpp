// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "svagen/chain/decompose.hpp"
#include "svagen/rtl/design.hpp"
#include "svagen/sva/syntax.hpp"

namespace svagen::eval {

struct ScoreReport {
    std::string design;
    std::string threat;
    std::string backend;
    double functionality = 0.0;
    double syntax = 0.0;
    int expected_assets = 0;
    int matched_assets = 0;
    int snippet_count = 0;
};

// Golden assets straight from the static analyses; what a correct run must
// cover. Payload carries the referenced signal and, when meaningful, the
// constant the assertion must encode.
inline std::vector<chain::AssetInfo> golden_assets(const rtl::DesignModel& design,
                                                   const std::string& threat_id,
                                                   const chain::DecomposeOptions& opts = {}) {
    const rtl::ModuleInfo& m = design.top();
    std::vector<chain::AssetInfo> out;
    if (threat_id == "unused_states") {
        for (const auto& fsm : m.fsms)
            for (auto enc : rtl::unused_states(fsm))
                out.push_back({threat_id, m.name, render_bin_constant(fsm.width, enc),
                               {{"signal", fsm.state_register},
                                {"constant", render_bin_constant(fsm.width, enc)}}});
    } else if (threat_id == "state_transition") {
        for (const auto& fsm : m.fsms)
            for (const auto& [from, tos] : chain::transition_map(fsm)) {
                (void)tos;
                out.push_back({threat_id, m.name, render_bin_constant(fsm.width, from),
                               {{"signal", fsm.state_register},
                                {"constant", render_bin_constant(fsm.width, from)}}});
            }
    } else if (threat_id == "info_leakage") {
        for (const auto& sig : chain::sensitive_signals(m, opts))
            out.push_back({threat_id, m.name, sig, {{"signal", sig}}});
    } else if (threat_id == "incorrect_init") {
        for (const auto& r : m.registers) {
            chain::AssetInfo a{threat_id, m.name, r.name, {{"signal", r.name}}};
            if (r.reset_value) a.payload["constant"] = render_bin_constant(r.width, *r.reset_value);
            out.push_back(std::move(a));
        }
    }
    return out;
}

namespace detail {

inline bool references_signal(const sva::SvaSnippet& s, const std::string& signal) {
    for (const std::string* part : {&s.left_part, &s.right_part, &s.disable_iff}) {
        sva::detail::SvaScanner scanner(*part);
        for (const auto& t : scanner.tokens())
            if (t.kind == sva::detail::SvaToken::Kind::Word && t.text == signal) return true;
    }
    return false;
}

inline bool encodes_constant(const sva::SvaSnippet& s, const std::string& constant) {
    auto want = parse_sized_constant(constant);
    if (!want) return false;
    for (const std::string* part : {&s.left_part, &s.right_part}) {
        sva::detail::SvaScanner scanner(*part);
        for (const auto& t : scanner.tokens()) {
            if (t.kind != sva::detail::SvaToken::Kind::Number) continue;
            auto got = parse_sized_constant(t.text);
            if (got && got->width == want->width && got->value == want->value) return true;
        }
    }
    return false;
}

}  // namespace detail

// An asset is matched iff some parsed snippet references the asset's signal
// and, when the asset carries a constant, encodes that constant in its left
// or right part.
inline ScoreReport score(const std::string& generated_text,
                         const std::vector<chain::AssetInfo>& golden) {
    ScoreReport rep;
    sva::SyntaxReport syn = sva::check_syntax(generated_text);
    rep.syntax = syn.score;
    rep.snippet_count = syn.candidates;
    rep.expected_assets = static_cast<int>(golden.size());
    for (const auto& asset : golden) {
        auto sig = asset.payload.find("signal");
        auto constant = asset.payload.find("constant");
        bool matched = false;
        for (const auto& snippet : syn.parsed) {
            if (sig != asset.payload.end() && !detail::references_signal(snippet, sig->second))
                continue;
            if (constant != asset.payload.end() &&
                !detail::encodes_constant(snippet, constant->second))
                continue;
            matched = true;
            break;
        }
        if (matched) ++rep.matched_assets;
    }
    rep.functionality = rep.expected_assets == 0
                            ? 100.0
                            : 100.0 * rep.matched_assets / rep.expected_assets;
    return rep;
}

}  // namespace svagen::eval
