// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "svagen/common.hpp"

namespace svagen::sva {

// One assertion in the fixed snippet shape:
//
//   property <name>;
//     @(<edge> <signal>) [disable iff (<expr>)] <left> <op> <right>;
//   endproperty
//   <label>: assert property(<name>);
//
// The operator set is closed: |->, |=>, ==, != or none (plain boolean).

enum class SvaOp { Overlap, NonOverlap, Eq, Ne, None };

inline std::string to_string(SvaOp op) {
    switch (op) {
    case SvaOp::Overlap: return "|->";
    case SvaOp::NonOverlap: return "|=>";
    case SvaOp::Eq: return "==";
    case SvaOp::Ne: return "!=";
    case SvaOp::None: return "";
    }
    return "";
}

struct SvaSnippet {
    std::string property_name;
    bool posedge = true;
    std::string sense_signal;  // hierarchical, e.g. "fsm.clk"
    std::string disable_iff;   // optional guard expression
    std::string left_part;
    SvaOp op = SvaOp::None;
    std::string right_part;
    std::string assert_label;

    // original text as answered (kept for file assembly so cosmetic
    // differences between runs stay observable); not part of the structure
    std::string source_text;

    // sort keys used by the file assembler
    std::string threat_tag;
    std::string asset_tag;

    bool same_structure(const SvaSnippet& o) const {
        return property_name == o.property_name && posedge == o.posedge &&
               sense_signal == o.sense_signal && disable_iff == o.disable_iff &&
               left_part == o.left_part && op == o.op && right_part == o.right_part &&
               assert_label == o.assert_label;
    }
};

inline std::string serialize(const SvaSnippet& s) {
    std::string out = "property " + s.property_name + ";\n  @(";
    out += s.posedge ? "posedge " : "negedge ";
    out += s.sense_signal + ")";
    if (!s.disable_iff.empty()) out += " disable iff (" + s.disable_iff + ")";
    out += " " + s.left_part;
    if (s.op != SvaOp::None) out += " " + to_string(s.op) + " " + s.right_part;
    out += ";\nendproperty\n";
    out += s.assert_label + ": assert property(" + s.property_name + ");\n";
    return out;
}

struct SnippetSyntaxError : Error {
    size_t position;
    std::string expected;
    SnippetSyntaxError(size_t pos, const std::string& expected_)
        : Error("snippet syntax error at offset " + std::to_string(pos) + ": expected " +
                expected_),
          position(pos),
          expected(expected_) {}
};

namespace detail {

// lenient token scanner for snippet text: words, numbers, sized constants,
// multi-char operators, single punctuation; comments and whitespace skipped.
struct SvaToken {
    enum class Kind { Word, Number, Punct, End } kind = Kind::End;
    std::string text;
    size_t pos = 0;
};

class SvaScanner {
public:
    explicit SvaScanner(std::string_view text) : text_(text) { scan(); }

    const std::vector<SvaToken>& tokens() const { return toks_; }

private:
    std::string_view text_;
    std::vector<SvaToken> toks_;

    static bool word_head(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
    }
    static bool word_tail(char c) {
        return word_head(c) || (c >= '0' && c <= '9');
    }

    void scan() {
        size_t i = 0;
        const size_t n = text_.size();
        while (i < n) {
            char c = text_[i];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++i;
                continue;
            }
            if (c == '/' && i + 1 < n && text_[i + 1] == '/') {
                while (i < n && text_[i] != '\n') ++i;
                continue;
            }
            if (c == '/' && i + 1 < n && text_[i + 1] == '*') {
                i += 2;
                while (i + 1 < n && !(text_[i] == '*' && text_[i + 1] == '/')) ++i;
                i = i + 2 <= n ? i + 2 : n;
                continue;
            }
            SvaToken t;
            t.pos = i;
            if (word_head(c)) {
                size_t j = i;
                while (j < n && word_tail(text_[j])) ++j;
                t.kind = SvaToken::Kind::Word;
                t.text = std::string(text_.substr(i, j - i));
                i = j;
            } else if (c >= '0' && c <= '9') {
                size_t j = i;
                while (j < n && text_[j] >= '0' && text_[j] <= '9') ++j;
                if (j < n && text_[j] == '\'') {
                    ++j;
                    if (j < n && text_[j] == '\'') ++j;  // doubled-quote error form
                    if (j < n) ++j;                      // base letter
                    while (j < n &&
                           ((text_[j] >= '0' && text_[j] <= '9') ||
                            (text_[j] >= 'a' && text_[j] <= 'f') ||
                            (text_[j] >= 'A' && text_[j] <= 'F') || text_[j] == '_' ||
                            text_[j] == 'x' || text_[j] == 'z' || text_[j] == 'X' ||
                            text_[j] == 'Z'))
                        ++j;
                }
                t.kind = SvaToken::Kind::Number;
                t.text = std::string(text_.substr(i, j - i));
                i = j;
            } else {
                static const char* multi[] = {"|->", "|=>", "===", "!==", "==", "!=",
                                              "&&",  "||",  "<=",  ">=",  "<<", ">>"};
                t.kind = SvaToken::Kind::Punct;
                t.text = std::string(1, c);
                for (const char* m : multi) {
                    size_t len = std::char_traits<char>::length(m);
                    if (text_.compare(i, len, m) == 0) {
                        t.text = m;
                        break;
                    }
                }
                i += t.text.size();
            }
            toks_.push_back(std::move(t));
        }
        SvaToken end;
        end.pos = n;
        toks_.push_back(end);
    }
};

inline std::string normalize_expr(std::string_view raw) {
    std::string out;
    bool in_space = false;
    for (char c : raw) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out += ' ';
        in_space = false;
        out += c;
    }
    return out;
}

}  // namespace detail

// Parses exactly the snippet grammar above; anything else is rejected with
// the offset of the offending token.
inline SvaSnippet parse_snippet(std::string_view text) {
    detail::SvaScanner scanner(text);
    const auto& toks = scanner.tokens();
    size_t i = 0;
    using Kind = detail::SvaToken::Kind;

    auto at = [&](size_t k) -> const detail::SvaToken& {
        return toks[k < toks.size() ? k : toks.size() - 1];
    };
    auto expect_word = [&](const char* w) {
        if (at(i).kind != Kind::Word || at(i).text != w)
            throw SnippetSyntaxError(at(i).pos, std::string("'") + w + "'");
        ++i;
    };
    auto expect_punct = [&](const char* p) {
        if (at(i).kind != Kind::Punct || at(i).text != p)
            throw SnippetSyntaxError(at(i).pos, std::string("'") + p + "'");
        ++i;
    };
    auto expect_ident = [&]() {
        if (at(i).kind != Kind::Word) throw SnippetSyntaxError(at(i).pos, "identifier");
        return toks[i++].text;
    };
    auto hier_name = [&]() {
        std::string name = expect_ident();
        while (at(i).kind == Kind::Punct && at(i).text == "." && at(i + 1).kind == Kind::Word) {
            i += 2;
            name += "." + toks[i - 1].text;
        }
        return name;
    };

    SvaSnippet s;
    expect_word("property");
    s.property_name = expect_ident();
    expect_punct(";");
    expect_punct("@");
    expect_punct("(");
    if (at(i).kind == Kind::Word && at(i).text == "posedge") {
        s.posedge = true;
        ++i;
    } else if (at(i).kind == Kind::Word && at(i).text == "negedge") {
        s.posedge = false;
        ++i;
    } else {
        throw SnippetSyntaxError(at(i).pos, "'posedge' or 'negedge'");
    }
    s.sense_signal = hier_name();
    expect_punct(")");

    // punctuation legal inside expression text; anything else (stray quotes,
    // backticks, '@', '#', SVA delay operators) is rejected
    auto expr_punct_ok = [](const std::string& p) {
        static const std::set<std::string> ok = {
            "(", ")", "[", "]", "{", "}", ",",  ".",  ":",  "?",  "!",   "~",
            "&", "|", "^", "+", "-", "*", "/",  "%",  "<",  ">",  "<<",  ">>",
            "==", "!=", "<=", ">=", "===", "!==", "&&", "||", "|->", "|=>"};
        return ok.count(p) > 0;
    };

    if (at(i).kind == Kind::Word && at(i).text == "disable") {
        ++i;
        expect_word("iff");
        expect_punct("(");
        size_t start = at(i).pos;
        int depth = 1;
        size_t end = start;
        while (depth > 0) {
            if (at(i).kind == Kind::End) throw SnippetSyntaxError(at(i).pos, "')'");
            if (at(i).text == "(") ++depth;
            if (at(i).text == ")") --depth;
            if (depth > 0) {
                if (at(i).kind == Kind::Punct && !expr_punct_ok(at(i).text))
                    throw SnippetSyntaxError(at(i).pos, "expression token");
                end = at(i).pos + at(i).text.size();
            }
            ++i;
        }
        s.disable_iff = detail::normalize_expr(text.substr(start, end - start));
        if (s.disable_iff.empty()) throw SnippetSyntaxError(start, "expression");
    }

    // body expression up to the top-level ';'
    size_t body_begin = i;
    int depth = 0;
    std::optional<size_t> op_tok;      // implication, preferred split
    std::optional<size_t> cmp_tok;     // first top-level == / !=
    while (true) {
        const auto& t = at(i);
        if (t.kind == Kind::End) throw SnippetSyntaxError(t.pos, "';'");
        if (t.kind == Kind::Punct) {
            if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
            if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
            if (depth == 0 && t.text == ";") break;
            if (t.text == ";") throw SnippetSyntaxError(t.pos, "')'");
            if (!expr_punct_ok(t.text)) throw SnippetSyntaxError(t.pos, "expression token");
            if (depth == 0 && !op_tok && (t.text == "|->" || t.text == "|=>")) op_tok = i;
            if (depth == 0 && !op_tok && !cmp_tok && (t.text == "==" || t.text == "!="))
                cmp_tok = i;
        }
        ++i;
    }
    size_t body_end_tok = i;  // the ';'
    if (body_end_tok == body_begin)
        throw SnippetSyntaxError(at(body_begin).pos, "expression");

    auto slice = [&](size_t from_tok, size_t to_tok) {
        size_t a = at(from_tok).pos;
        size_t b = to_tok > from_tok ? at(to_tok - 1).pos + at(to_tok - 1).text.size() : a;
        return detail::normalize_expr(text.substr(a, b - a));
    };

    std::optional<size_t> split = op_tok ? op_tok : cmp_tok;
    if (split) {
        s.left_part = slice(body_begin, *split);
        s.right_part = slice(*split + 1, body_end_tok);
        const std::string& op = at(*split).text;
        s.op = op == "|->"  ? SvaOp::Overlap
               : op == "|=>" ? SvaOp::NonOverlap
               : op == "=="  ? SvaOp::Eq
                             : SvaOp::Ne;
        if (s.left_part.empty() || s.right_part.empty())
            throw SnippetSyntaxError(at(*split).pos, "expression around operator");
    } else {
        s.left_part = slice(body_begin, body_end_tok);
        s.op = SvaOp::None;
    }
    ++i;  // consume ';'

    expect_word("endproperty");
    s.assert_label = expect_ident();
    expect_punct(":");
    expect_word("assert");
    expect_word("property");
    expect_punct("(");
    std::string ref = expect_ident();
    if (ref != s.property_name)
        throw SnippetSyntaxError(at(i - 1).pos, "property name '" + s.property_name + "'");
    expect_punct(")");
    expect_punct(";");
    if (at(i).kind != Kind::End) throw SnippetSyntaxError(at(i).pos, "end of snippet");

    s.source_text = trim(text);
    return s;
}

}  // namespace svagen::sva
