// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svagen {

// Line-oriented diagnostic, printed as "LEVEL file:line: message".
struct Diagnostic {
    enum class Level { Info, Warning, Error };
    Level level = Level::Warning;
    std::string file;
    int line = 0;  // 1-based; 0 = whole-file
    std::string message;

    std::string str() const {
        std::string lvl = level == Level::Info      ? "INFO"
                          : level == Level::Warning ? "WARNING"
                                                    : "ERROR";
        return lvl + " " + (file.empty() ? "-" : file) + ":" + std::to_string(line) + ": " + message;
    }
};

using Diagnostics = std::vector<Diagnostic>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 64-bit FNV-1a. Stable across runs and platforms; used to fingerprint
// rendered prompts and key transcript lookups.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fingerprint_of(std::string_view text) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(text);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    for (auto& item : split(s, ',')) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

inline std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9') || c == '$'; };
    if (!head(s[0])) return false;
    for (size_t i = 1; i < s.size(); ++i)
        if (!tail(s[i])) return false;
    return true;
}

// Sized Verilog constant in the `<width>'<b|d|h><digits>` shape.
inline bool is_bit_constant(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == 0 || i + 1 >= s.size() || s[i] != '\'') return false;
    char base = s[i + 1];
    size_t j = i + 2;
    if (j >= s.size()) return false;
    auto ok = [&](char c) {
        switch (base) {
        case 'b': return c == '0' || c == '1';
        case 'd': return c >= '0' && c <= '9';
        case 'h':
            return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
        default: return false;
        }
    };
    if (base != 'b' && base != 'd' && base != 'h') return false;
    for (; j < s.size(); ++j)
        if (!ok(s[j])) return false;
    return true;
}

// Renders value as `<width>'b<binary digits>` padded to width.
inline std::string render_bin_constant(int width, std::uint64_t value) {
    std::string bits(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if (value >> i & 1) bits[static_cast<size_t>(width - 1 - i)] = '1';
    return std::to_string(width) + "'b" + bits;
}

// Parses a sized constant to (width, value); nullopt if malformed or wider
// than 64 bits.
struct SizedConstant {
    int width;
    std::uint64_t value;
};

inline std::optional<SizedConstant> parse_sized_constant(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == 0 || i + 1 >= s.size() || s[i] != '\'') return std::nullopt;
    int width = 0;
    for (size_t k = 0; k < i; ++k) width = width * 10 + (s[k] - '0');
    char base = static_cast<char>(s[i + 1] | 0x20);
    std::uint64_t value = 0;
    size_t j = i + 2;
    if (j >= s.size() || width <= 0 || width > 64) return std::nullopt;
    for (; j < s.size(); ++j) {
        char c = s[j];
        if (c == '_') continue;
        int digit;
        if (c >= '0' && c <= '9')
            digit = c - '0';
        else if (c >= 'a' && c <= 'f')
            digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            digit = c - 'A' + 10;
        else
            return std::nullopt;
        switch (base) {
        case 'b':
            if (digit > 1) return std::nullopt;
            value = (value << 1) | static_cast<std::uint64_t>(digit);
            break;
        case 'o':
            if (digit > 7) return std::nullopt;
            value = (value << 3) | static_cast<std::uint64_t>(digit);
            break;
        case 'd':
            if (digit > 9) return std::nullopt;
            value = value * 10 + static_cast<std::uint64_t>(digit);
            break;
        case 'h': value = (value << 4) | static_cast<std::uint64_t>(digit); break;
        default: return std::nullopt;
        }
    }
    return SizedConstant{width, value};
}

}  // namespace svagen
