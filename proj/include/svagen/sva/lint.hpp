// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "svagen/common.hpp"

namespace svagen::sva {

// Constant lint: repairs the trailing-quote class of errors some models make
// on sized Verilog constants, e.g. 3'b001' -> 3'b001 and 2''b01 -> 2'b01.
// Idempotent; each repair is reported with its offset in the input.

struct ConstantRepair {
    size_t position;
    std::string original;
    std::string fixed;
};

struct LintResult {
    std::string text;
    std::vector<ConstantRepair> repairs;
};

inline LintResult lint_constants(std::string_view text) {
    LintResult out;
    out.text.reserve(text.size());
    size_t i = 0;
    const size_t n = text.size();

    auto is_word = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '$';
    };
    auto base_digit = [](char base, char c) {
        char l = static_cast<char>(c | 0x20);
        if (l == '_' ) return true;
        switch (static_cast<char>(base | 0x20)) {
        case 'b': return l == '0' || l == '1' || l == 'x' || l == 'z';
        case 'o': return (l >= '0' && l <= '7') || l == 'x' || l == 'z';
        case 'd': return (l >= '0' && l <= '9');
        case 'h': return (l >= '0' && l <= '9') || (l >= 'a' && l <= 'f') || l == 'x' || l == 'z';
        default: return false;
        }
    };
    auto is_base = [](char c) {
        char l = static_cast<char>(c | 0x20);
        return l == 'b' || l == 'o' || l == 'd' || l == 'h';
    };

    while (i < n) {
        char c = text[i];
        bool at_word_start = i == 0 || !is_word(text[i - 1]);
        if (c >= '0' && c <= '9' && at_word_start) {
            size_t j = i;
            while (j < n && text[j] >= '0' && text[j] <= '9') ++j;
            if (j < n && text[j] == '\'') {
                size_t start = i;
                size_t q = j;          // first quote
                size_t k = q + 1;
                bool doubled = false;
                if (k < n && text[k] == '\'') {
                    doubled = true;
                    ++k;
                }
                if (k < n && is_base(text[k]) && k + 1 < n && base_digit(text[k], text[k + 1])) {
                    char base = text[k];
                    size_t d = k + 1;
                    while (d < n && base_digit(base, text[d])) ++d;
                    std::string fixed = std::string(text.substr(start, q - start)) + "'" + base +
                                        std::string(text.substr(k + 1, d - k - 1));
                    std::string original = std::string(text.substr(start, d - start));
                    if (doubled)
                        out.repairs.push_back({start, original, fixed});
                    // trailing quotes / backticks directly after the digits
                    size_t e = d;
                    while (e < n && (text[e] == '\'' || text[e] == '`') &&
                           (e + 1 >= n || !is_word(text[e + 1]))) {
                        out.repairs.push_back(
                            {e, std::string(text.substr(start, e - start + 1)), fixed});
                        ++e;
                    }
                    out.text += fixed;
                    i = e;
                    continue;
                }
            }
        }
        out.text += c;
        ++i;
    }
    return out;
}

}  // namespace svagen::sva
