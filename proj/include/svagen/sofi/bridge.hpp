// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "svagen/common.hpp"
#include "svagen/sva/snippet.hpp"

namespace svagen::sofi {

// Byte-level round-key fault-resistance properties translated into bit-range
// assertions over a 128-bit key vector split into four 32-bit words.

enum class ByteOrder { MsbFirst, LsbFirst };

struct ByteRangeSpec {
    std::string signal;
    int word_index = 0;            // 0..3
    std::vector<int> byte_indices;  // subset of {0,1,2,3}
    int word_width = 32;
    ByteOrder byte_order = ByteOrder::MsbFirst;
};

struct BitRange {
    int msb = 0;
    int lsb = 0;
    bool operator==(const BitRange&) const = default;
};

// word-relative (msb, lsb) per selected byte
inline std::vector<BitRange> byte_to_bits(const ByteRangeSpec& spec) {
    if (spec.byte_indices.empty()) throw Error("byte_indices must be nonempty");
    if (spec.word_width % 8 != 0) throw Error("word_width must be divisible by 8");
    std::vector<BitRange> out;
    for (int b : spec.byte_indices) {
        if (b < 0 || b >= spec.word_width / 8)
            throw Error("byte index " + std::to_string(b) + " out of range");
        if (spec.byte_order == ByteOrder::MsbFirst)
            out.push_back({spec.word_width - 1 - 8 * b, spec.word_width - 8 - 8 * b});
        else
            out.push_back({8 * b + 7, 8 * b});
    }
    return out;
}

enum class SofiProperty { SP3_1, SP3_2 };

struct UnsupportedRound : Error {
    explicit UnsupportedRound(int round)
        : Error("round " + std::to_string(round) + " unsupported; properties are stated for round 9") {}
};

struct SofiConfig {
    std::string key_signal;
    std::string ref_signal;
    std::string clock;
    ByteOrder byte_order = ByteOrder::MsbFirst;
    int round = 9;
    std::string state_signal;  // intermediate-state extension point, unused by SP3.x
};

namespace detail {

// absolute (msb, lsb) of word w within the 128-bit vector
inline BitRange word_range(int w, ByteOrder order) {
    if (order == ByteOrder::MsbFirst) return {127 - 32 * w, 96 - 32 * w};
    return {32 * w + 31, 32 * w};
}

// absolute (msb, lsb) of byte b within word w
inline BitRange byte_range(int w, int b, ByteOrder order) {
    ByteRangeSpec spec;
    spec.word_index = w;
    spec.byte_indices = {b};
    spec.byte_order = order;
    BitRange rel = byte_to_bits(spec)[0];
    int lo = word_range(w, order).lsb;
    return {lo + rel.msb, lo + rel.lsb};
}

inline std::string slice_eq(const SofiConfig& cfg, BitRange r) {
    auto slice = [&](const std::string& sig) {
        return sig + "[" + std::to_string(r.msb) + ":" + std::to_string(r.lsb) + "]";
    };
    return "(" + slice(cfg.key_signal) + " == " + slice(cfg.ref_signal) + ")";
}

inline std::string following_words_eq(const SofiConfig& cfg, int after_word) {
    std::string out;
    for (int w = after_word + 1; w < 4; ++w) {
        if (!out.empty()) out += " && ";
        out += slice_eq(cfg, word_range(w, cfg.byte_order));
    }
    return out;
}

}  // namespace detail

// SP3.1: any 1-3 bytes of the first word must match the reference, and the
// match must imply the following words are unaffected. One guard per
// nonempty subset of bytes {1,2,3} of word 0 (7 combinations).
// SP3.2: all 4 bytes of each word; one snippet per word.
inline std::vector<sva::SvaSnippet> emit_sofi_assertions(SofiProperty prop,
                                                         const SofiConfig& cfg) {
    if (cfg.round != 9) throw UnsupportedRound(cfg.round);
    if (cfg.key_signal.empty() || cfg.ref_signal.empty() || cfg.clock.empty())
        throw Error("key, reference and clock signals are required");

    std::vector<sva::SvaSnippet> out;
    auto finish = [&](sva::SvaSnippet& s, const std::string& id) {
        s.property_name = "p_" + id;
        s.assert_label = "a_" + id;
        s.sense_signal = cfg.clock;
        s.threat_tag = "sofi";
        s.asset_tag = id;
        s.source_text = serialize(s);
        out.push_back(s);
    };

    if (prop == SofiProperty::SP3_1) {
        // nonempty subsets of {1,2,3}, ordered by size then lexicographically
        std::vector<std::vector<int>> combos = {{1},    {2},    {3},      {1, 2},
                                                {1, 3}, {2, 3}, {1, 2, 3}};
        for (const auto& combo : combos) {
            sva::SvaSnippet s;
            std::string id = "sp3_1_round9_w0_b";
            std::string left;
            for (int b : combo) {
                id += std::to_string(b);
                if (!left.empty()) left += " && ";
                left += detail::slice_eq(cfg, detail::byte_range(0, b, cfg.byte_order));
            }
            s.left_part = left;
            s.op = sva::SvaOp::Overlap;
            s.right_part = detail::following_words_eq(cfg, 0);
            finish(s, id);
        }
    } else {
        for (int w = 0; w < 4; ++w) {
            sva::SvaSnippet s;
            std::string id = "sp3_2_round9_w" + std::to_string(w);
            std::string word_eq = detail::slice_eq(cfg, detail::word_range(w, cfg.byte_order));
            std::string following = detail::following_words_eq(cfg, w);
            if (following.empty()) {
                // last word: nothing follows, assert the word itself
                s.left_part = word_eq;
                s.op = sva::SvaOp::None;
            } else {
                s.left_part = word_eq;
                s.op = sva::SvaOp::Overlap;
                s.right_part = following;
            }
            finish(s, id);
        }
    }
    return out;
}

}  // namespace svagen::sofi
