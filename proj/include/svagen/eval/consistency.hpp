// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "svagen/sva/syntax.hpp"

namespace svagen::eval {

// Repeated-run agreement categories, best to worst: byte-identical output,
// cosmetic-only differences (comments, indentation, spacing), anything that
// changes the token stream or fails the syntax check.
enum class Consistency { SameLines, Acceptable, Unacceptable };

inline const char* to_string(Consistency c) {
    switch (c) {
    case Consistency::SameLines: return "same_lines";
    case Consistency::Acceptable: return "acceptable";
    case Consistency::Unacceptable: return "unacceptable";
    }
    return "?";
}

struct TooFewRuns : Error {
    explicit TooFewRuns(size_t n)
        : Error("consistency needs at least 2 runs, got " + std::to_string(n)) {}
};

struct PairwiseConsistency {
    int first = 0;
    int second = 0;
    Consistency category = Consistency::SameLines;
};

struct ConsistencyReport {
    std::string design;
    std::string threat;
    int runs = 0;
    Consistency classification = Consistency::SameLines;
    std::vector<PairwiseConsistency> pairwise_details;
};

namespace detail {

inline std::vector<std::string> token_stream(const std::string& text) {
    sva::detail::SvaScanner scanner(text);
    std::vector<std::string> out;
    for (const auto& t : scanner.tokens())
        if (t.kind != sva::detail::SvaToken::Kind::End) out.push_back(t.text);
    return out;
}

}  // namespace detail

inline Consistency classify_pair(const std::string& a, const std::string& b) {
    if (a == b) return Consistency::SameLines;
    if (detail::token_stream(a) == detail::token_stream(b) &&
        sva::check_syntax(a).score == 100.0 && sva::check_syntax(b).score == 100.0)
        return Consistency::Acceptable;
    return Consistency::Unacceptable;
}

// Pairwise over all runs; the report carries the worst category.
inline ConsistencyReport classify_consistency(const std::vector<std::string>& outputs) {
    if (outputs.size() < 2) throw TooFewRuns(outputs.size());
    ConsistencyReport rep;
    rep.runs = static_cast<int>(outputs.size());
    for (size_t i = 0; i < outputs.size(); ++i)
        for (size_t j = i + 1; j < outputs.size(); ++j) {
            Consistency c = classify_pair(outputs[i], outputs[j]);
            rep.pairwise_details.push_back(
                {static_cast<int>(i), static_cast<int>(j), c});
            if (static_cast<int>(c) > static_cast<int>(rep.classification))
                rep.classification = c;
        }
    return rep;
}

}  // namespace svagen::eval
