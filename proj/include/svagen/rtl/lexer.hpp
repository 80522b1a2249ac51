// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svagen/common.hpp"

namespace svagen::rtl {

struct LexError : Error {
    int line, col;
    LexError(int line_, int col_, const std::string& msg)
        : Error("lex error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

enum class Tok {
    Identifier,
    Number,   // bare decimal
    SizedNumber,  // 2'b01 style; may contain x/z
    Punct,    // operators and punctuation, text in `text`
    Eof,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    int line = 1;
    int col = 1;
    // for numbers
    std::uint64_t value = 0;
    int width = 0;      // sized numbers only
    char base = 0;      // 'b''d''h''o' for sized numbers
    bool has_xz = false;
};

class Lexer {
public:
    explicit Lexer(std::string_view src, std::string file = {})
        : src_(src), file_(std::move(file)) {}

    std::vector<Token> run(Diagnostics* diags = nullptr) {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments(diags);
            Token t = next();
            bool eof = t.kind == Tok::Eof;
            out.push_back(std::move(t));
            if (eof) break;
        }
        return out;
    }

private:
    std::string_view src_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    bool at_end() const { return pos_ >= src_.size(); }

    void skip_space_and_comments(Diagnostics* diags) {
        for (;;) {
            if (at_end()) return;
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                int sl = line_;
                advance();
                advance();
                while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
                if (at_end()) throw LexError(sl, 1, "unterminated block comment");
                advance();
                advance();
            } else if (c == '`') {
                // compiler directive; not part of the supported subset
                int sl = line_;
                while (!at_end() && peek() != '\n') advance();
                if (diags)
                    diags->push_back({Diagnostic::Level::Info, file_, sl,
                                      "skipped compiler directive"});
            } else {
                return;
            }
        }
    }

    static bool ident_head(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool ident_tail(char c) {
        return ident_head(c) || (c >= '0' && c <= '9') || c == '$';
    }

    Token next() {
        Token t;
        t.line = line_;
        t.col = col_;
        if (at_end()) {
            t.kind = Tok::Eof;
            return t;
        }
        char c = peek();
        if (ident_head(c) || c == '$') {
            std::string s;
            if (c == '$') s += advance();
            while (!at_end() && ident_tail(peek())) s += advance();
            t.kind = Tok::Identifier;
            t.text = std::move(s);
            return t;
        }
        if (c >= '0' && c <= '9') return lex_number(t);
        if (c == '\'') {
            // unsized based literal like 'b0 — fold into a sized number of width 0
            return lex_based(t, 0, "");
        }
        // punctuation, longest-match
        static const char* two[] = {"<=", ">=", "==", "!=", "&&", "||", "<<", ">>", "->"};
        static const char* three[] = {"===", "!=="};
        for (const char* s : three) {
            if (src_.compare(pos_, 3, s) == 0) {
                t.kind = Tok::Punct;
                t.text = s;
                advance();
                advance();
                advance();
                return t;
            }
        }
        for (const char* s : two) {
            if (src_.compare(pos_, 2, s) == 0) {
                t.kind = Tok::Punct;
                t.text = s;
                advance();
                advance();
                return t;
            }
        }
        static const std::string singles = "()[]{};:,.@#?=+-*/%!~&|^<>";
        if (singles.find(c) != std::string::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, advance());
            return t;
        }
        throw LexError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    Token lex_number(Token t) {
        std::string digits;
        while (!at_end() && ((peek() >= '0' && peek() <= '9') || peek() == '_')) {
            char c = advance();
            if (c != '_') digits += c;
        }
        if (!at_end() && peek() == '\'') return lex_based(t, std::stoi(digits), digits);
        t.kind = Tok::Number;
        t.text = digits;
        t.value = std::stoull(digits);
        return t;
    }

    Token lex_based(Token t, int width, const std::string& width_digits) {
        advance();  // '
        if (at_end()) throw LexError(line_, col_, "truncated based literal");
        char b = static_cast<char>(advance() | 0x20);
        if (b != 'b' && b != 'd' && b != 'h' && b != 'o')
            throw LexError(t.line, t.col, std::string("bad numeric base '") + b + "'");
        std::string digits;
        auto is_digit = [&](char c) {
            c = static_cast<char>(c | 0x20);
            if (c == '_' || c == 'x' || c == 'z') return true;
            switch (b) {
            case 'b': return c == '0' || c == '1';
            case 'o': return c >= '0' && c <= '7';
            case 'd': return c >= '0' && c <= '9';
            case 'h': return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
            }
            return false;
        };
        while (!at_end() && is_digit(peek())) {
            char c = advance();
            if (c != '_') digits += c;
        }
        if (digits.empty()) throw LexError(t.line, t.col, "based literal without digits");
        t.kind = Tok::SizedNumber;
        t.width = width;
        t.base = b;
        t.text = (width_digits.empty() ? "" : width_digits) + "'" + b + digits;
        for (char c : digits) {
            char l = static_cast<char>(c | 0x20);
            if (l == 'x' || l == 'z') {
                t.has_xz = true;
                continue;
            }
            int digit = l <= '9' ? l - '0' : l - 'a' + 10;
            switch (b) {
            case 'b': t.value = (t.value << 1) | static_cast<std::uint64_t>(digit); break;
            case 'o': t.value = (t.value << 3) | static_cast<std::uint64_t>(digit); break;
            case 'd': t.value = t.value * 10 + static_cast<std::uint64_t>(digit); break;
            case 'h': t.value = (t.value << 4) | static_cast<std::uint64_t>(digit); break;
            }
        }
        return t;
    }
};

}  // namespace svagen::rtl
