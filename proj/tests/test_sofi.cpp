// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "svagen/rtl/analyze.hpp"
#include "svagen/sofi/bridge.hpp"
#include "svagen/sva/reorganize.hpp"
#include "svagen/sva/syntax.hpp"

using namespace svagen;
using namespace svagen::sofi;

// shift-marker brute force: plant an all-ones byte at a byte slot of a
// 32-bit word, read the set-bit range back
static BitRange marker_range(int byte_index, ByteOrder order) {
    int slot = order == ByteOrder::MsbFirst ? 3 - byte_index : byte_index;
    std::uint32_t word = 0xFFu << (8 * slot);
    int msb = -1, lsb = -1;
    for (int bit = 31; bit >= 0; --bit)
        if (word >> bit & 1) {
            if (msb < 0) msb = bit;
            lsb = bit;
        }
    return {msb, lsb};
}

TEST_CASE("byte_to_bits matches the shift-marker oracle for all bytes and orders") {
    for (ByteOrder order : {ByteOrder::MsbFirst, ByteOrder::LsbFirst}) {
        for (int b = 0; b < 4; ++b) {
            ByteRangeSpec spec;
            spec.byte_indices = {b};
            spec.byte_order = order;
            auto got = byte_to_bits(spec);
            REQUIRE(got.size() == 1);
            CHECK(got[0] == marker_range(b, order));
        }
    }
}

TEST_CASE("byte_to_bits: documented examples") {
    ByteRangeSpec one;
    one.byte_indices = {0};
    CHECK(byte_to_bits(one)[0] == BitRange{31, 24});

    ByteRangeSpec three;
    three.byte_indices = {1, 2, 3};
    auto got = byte_to_bits(three);
    REQUIRE(got.size() == 3);
    CHECK(got[0] == BitRange{23, 16});
    CHECK(got[1] == BitRange{15, 8});
    CHECK(got[2] == BitRange{7, 0});

    ByteRangeSpec lsb;
    lsb.byte_indices = {3};
    lsb.byte_order = ByteOrder::LsbFirst;
    CHECK(byte_to_bits(lsb)[0] == BitRange{31, 24});
}

TEST_CASE("byte_to_bits: all four bytes tile the word disjointly") {
    for (ByteOrder order : {ByteOrder::MsbFirst, ByteOrder::LsbFirst}) {
        ByteRangeSpec spec;
        spec.byte_indices = {0, 1, 2, 3};
        spec.byte_order = order;
        auto ranges = byte_to_bits(spec);
        std::uint32_t covered = 0;
        for (const auto& r : ranges) {
            REQUIRE(r.msb >= r.lsb);
            REQUIRE(r.msb < 32);
            REQUIRE(r.lsb >= 0);
            for (int bit = r.lsb; bit <= r.msb; ++bit) {
                CHECK_FALSE(covered >> bit & 1);  // disjoint
                covered |= 1u << bit;
            }
        }
        CHECK(covered == 0xFFFFFFFFu);
    }
}

TEST_CASE("byte orders are byte-reversal images of each other") {
    for (int b = 0; b < 4; ++b) {
        ByteRangeSpec msb, lsb;
        msb.byte_indices = {b};
        lsb.byte_indices = {3 - b};
        lsb.byte_order = ByteOrder::LsbFirst;
        CHECK(byte_to_bits(msb)[0] == byte_to_bits(lsb)[0]);
    }
}

TEST_CASE("byte_to_bits rejects an empty selection") {
    ByteRangeSpec spec;
    REQUIRE_THROWS_AS(byte_to_bits(spec), Error);
}

// ---------------------------------------------------------------------------

static SofiConfig aes_config() {
    SofiConfig cfg;
    cfg.key_signal = "aes.round_key";
    cfg.ref_signal = "aes.key_ref";
    cfg.clock = "aes.clk";
    return cfg;
}

TEST_CASE("SP3.1 emits exactly 7 byte-combination guards for word 0") {
    auto snippets = emit_sofi_assertions(SofiProperty::SP3_1, aes_config());
    CHECK(snippets.size() == 7);
    for (const auto& s : snippets) {
        REQUIRE_NOTHROW(sva::parse_snippet(sva::serialize(s)));
        CHECK(s.op == sva::SvaOp::Overlap);
        // non-propagation covers words 1..3
        CHECK(s.right_part.find("[95:64]") != std::string::npos);
        CHECK(s.right_part.find("[63:32]") != std::string::npos);
        CHECK(s.right_part.find("[31:0]") != std::string::npos);
    }
    // single-byte guard over byte 1 of word 0: bits 119:112
    CHECK(snippets[0].left_part.find("[119:112]") != std::string::npos);
}

TEST_CASE("SP3.2 emits 4 word-level snippets guarding bits 127-32w down") {
    auto snippets = emit_sofi_assertions(SofiProperty::SP3_2, aes_config());
    REQUIRE(snippets.size() == 4);
    for (int w = 0; w < 4; ++w) {
        int hi = 127 - 32 * w;
        int lo = hi - 31;
        std::string slice = "[" + std::to_string(hi) + ":" + std::to_string(lo) + "]";
        CHECK(snippets[static_cast<size_t>(w)].left_part.find(slice) != std::string::npos);
        REQUIRE_NOTHROW(sva::parse_snippet(sva::serialize(snippets[static_cast<size_t>(w)])));
    }
    // last word asserts itself; nothing follows it
    CHECK(snippets[3].op == sva::SvaOp::None);
}

TEST_CASE("unsupported round is rejected") {
    SofiConfig cfg = aes_config();
    cfg.round = 5;
    REQUIRE_THROWS_AS(emit_sofi_assertions(SofiProperty::SP3_1, cfg), UnsupportedRound);
}

TEST_CASE("sofi snippets survive reorganize against an AES-shaped module") {
    const char* stub = R"(
module aes(clk, rst, round_key, key_ref, state_q);
  input clk;
  input rst;
  input [127:0] round_key;
  input [127:0] key_ref;
  output [127:0] state_q;
endmodule
)";
    Diagnostics diags;
    rtl::ModuleInfo m = rtl::parse_design(stub, std::nullopt, &diags).top();
    for (SofiProperty prop : {SofiProperty::SP3_1, SofiProperty::SP3_2}) {
        auto snippets = emit_sofi_assertions(prop, aes_config());
        sva::SvaFile file = sva::reorganize(snippets, m, {});
        CHECK(sva::check_syntax(file.text).score == 100.0);
    }
}

TEST_CASE("lsb-first word placement mirrors the key layout") {
    SofiConfig cfg = aes_config();
    cfg.byte_order = ByteOrder::LsbFirst;
    auto snippets = emit_sofi_assertions(SofiProperty::SP3_2, cfg);
    REQUIRE(snippets.size() == 4);
    CHECK(snippets[0].left_part.find("[31:0]") != std::string::npos);
}
