// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "svagen/rtl/analyze.hpp"
#include "svagen/sva/emit.hpp"
#include "svagen/sva/lint.hpp"
#include "svagen/sva/reorganize.hpp"
#include "svagen/sva/syntax.hpp"

#include "fixtures.hpp"

using namespace svagen;
using namespace svagen::sva;

static const char* kUnusedSnippet =
    "property p0; @(posedge fsm.clk) fsm.state != 2'b11; endproperty "
    "a0: assert property(p0);";

TEST_CASE("parse_snippet: unused-state example") {
    SvaSnippet s = parse_snippet(kUnusedSnippet);
    CHECK(s.property_name == "p0");
    CHECK(s.posedge);
    CHECK(s.sense_signal == "fsm.clk");
    CHECK(s.left_part == "fsm.state");
    CHECK(s.op == SvaOp::Ne);
    CHECK(s.right_part == "2'b11");
    CHECK(s.assert_label == "a0");
}

TEST_CASE("parse_snippet: empty text") {
    REQUIRE_THROWS_AS(parse_snippet(""), SnippetSyntaxError);
}

TEST_CASE("parse_snippet: missing endproperty") {
    try {
        parse_snippet("property p1; @(posedge m.clk) m.x != 1'b1; a1: assert property(p1);");
        FAIL("expected SnippetSyntaxError");
    } catch (const SnippetSyntaxError& e) {
        CHECK(e.expected == "'endproperty'");
    }
}

TEST_CASE("parse_snippet: implication with disable iff") {
    const char* text =
        "property p_t;\n"
        "  @(posedge fsm.clk) disable iff (fsm.rst) (fsm.state == 2'b00) |=> (fsm.state == 2'b01) || (fsm.state == 2'b00);\n"
        "endproperty\n"
        "a_t: assert property(p_t);\n";
    SvaSnippet s = parse_snippet(text);
    CHECK(s.disable_iff == "fsm.rst");
    CHECK(s.op == SvaOp::NonOverlap);
    CHECK(s.left_part == "(fsm.state == 2'b00)");
    CHECK(s.right_part == "(fsm.state == 2'b01) || (fsm.state == 2'b00)");
}

TEST_CASE("parse_snippet: comments are skipped") {
    const char* text =
        "// unused-state check\n"
        "property p0; @(posedge fsm.clk) /* inline */ fsm.state != 2'b11; endproperty\n"
        "a0: assert property(p0);";
    CHECK(parse_snippet(text).right_part == "2'b11");
}

TEST_CASE("parse_snippet: label must reference the property") {
    REQUIRE_THROWS_AS(
        parse_snippet("property p0; @(posedge m.clk) m.x != 1'b0; endproperty "
                      "a0: assert property(other);"),
        SnippetSyntaxError);
}

// ---------------------------------------------------------------------------

TEST_CASE("lint_constants: trailing quote removed") {
    auto r = lint_constants("3'b001'");
    CHECK(r.text == "3'b001");
    CHECK(r.repairs.size() == 1);
}

TEST_CASE("lint_constants: identity on clean text") {
    auto r = lint_constants("3'b001");
    CHECK(r.text == "3'b001");
    CHECK(r.repairs.empty());
}

TEST_CASE("lint_constants: two errors in one expression") {
    auto r = lint_constants("x != 2'b11' && y == 4'hF'");
    CHECK(r.text == "x != 2'b11 && y == 4'hF");
    CHECK(r.repairs.size() == 2);
}

TEST_CASE("lint_constants: doubled quote normalized") {
    auto r = lint_constants("2''b01");
    CHECK(r.text == "2'b01");
    CHECK(r.repairs.size() == 1);
}

TEST_CASE("lint_constants: backtick after constant") {
    auto r = lint_constants("3'b001`");
    CHECK(r.text == "3'b001");
    CHECK(r.repairs.size() == 1);
}

TEST_CASE("lint_constants is idempotent") {
    const char* cases[] = {"3'b001'", "x != 2'b11' && y == 4'hF'", "2''b01", "8'hde'",
                           "a == 4'd12"};
    for (const char* c : cases) {
        auto once = lint_constants(c);
        auto twice = lint_constants(once.text);
        CHECK(twice.text == once.text);
        CHECK(twice.repairs.empty());
    }
}

TEST_CASE("lint_constants: 25 synthesized broken snippets all repaired to parse") {
    std::mt19937 rng(42);
    const char* bases = "bdh";
    int repaired_and_parsed = 0;
    for (int k = 0; k < 25; ++k) {
        int width = 1 + static_cast<int>(rng() % 8);
        char base = bases[rng() % 3];
        std::string digits = base == 'b' ? std::string(static_cast<size_t>(width), '1')
                             : base == 'd' ? std::to_string(rng() % 9)
                                           : std::string(1, "0123456789abcdef"[rng() % 16]);
        std::string broken = std::to_string(width) + "'" + base + digits + "'";
        std::string text = "property p" + std::to_string(k) +
                           "; @(posedge m.clk) m.sig != " + broken + "; endproperty a" +
                           std::to_string(k) + ": assert property(p" + std::to_string(k) + ");";
        REQUIRE_THROWS_AS(parse_snippet(text), SnippetSyntaxError);

        auto linted = lint_constants(text);
        REQUIRE_FALSE(linted.repairs.empty());
        REQUIRE_NOTHROW(parse_snippet(linted.text));
        auto again = lint_constants(linted.text);
        CHECK(again.repairs.empty());
        CHECK(again.text == linted.text);
        ++repaired_and_parsed;
    }
    CHECK(repaired_and_parsed == 25);
}

// ---------------------------------------------------------------------------

static std::string make_valid_snippet(int i) {
    std::string n = std::to_string(i);
    return "property p" + n + ";\n  @(posedge m.clk) m.x != " +
           std::to_string(1 + i % 4) + "'b1;\nendproperty\na" + n +
           ": assert property(p" + n + ");\n";
}

TEST_CASE("check_syntax: all valid scores 100") {
    std::string text;
    for (int i = 0; i < 4; ++i) text += make_valid_snippet(i) + "\n";
    auto rep = check_syntax(text);
    CHECK(rep.candidates == 4);
    CHECK(rep.score == 100.0);
}

TEST_CASE("check_syntax: 3 valid + 1 broken scores 75") {
    std::string text;
    for (int i = 0; i < 3; ++i) text += make_valid_snippet(i) + "\n";
    text += "property bad; @(posedge m.clk) m.x != 1'b0; bad_label: assert property(bad);\n";
    auto rep = check_syntax(text);
    CHECK(rep.candidates == 4);
    CHECK(rep.passing == 3);
    CHECK(rep.score == 75.0);
}

TEST_CASE("check_syntax: no candidates") {
    auto rep = check_syntax("module empty; endmodule\n");
    CHECK(rep.candidates == 0);
    CHECK(rep.score == 0.0);
    REQUIRE_FALSE(rep.diagnostics.empty());
    CHECK(rep.diagnostics[0] == "no assertions found");
}

TEST_CASE("check_syntax: lint runs before parsing") {
    std::string text =
        "property p0; @(posedge m.clk) m.x != 2'b01'; endproperty a0: assert property(p0);";
    CHECK(check_syntax(text).score == 100.0);
}

// ---------------------------------------------------------------------------

namespace {

SvaSnippet random_snippet(std::mt19937& rng, int idx) {
    auto pick = [&](std::initializer_list<const char*> xs) {
        auto it = xs.begin();
        std::advance(it, static_cast<long>(rng() % xs.size()));
        return std::string(*it);
    };
    SvaSnippet s;
    s.property_name = "p_gen_" + std::to_string(idx);
    s.assert_label = "a_gen_" + std::to_string(idx);
    s.posedge = rng() % 2 == 0;
    s.sense_signal = pick({"m.clk", "top.clock", "u.clk_i"});
    if (rng() % 2) s.disable_iff = pick({"m.rst", "!m.rst_n", "(m.rst == 1'b1)"});
    switch (rng() % 5) {
    case 0:
        s.op = SvaOp::Ne;
        s.left_part = pick({"m.state", "m.q", "m.key[7:0]"});
        s.right_part = pick({"2'b11", "4'hA", "8'd200"});
        break;
    case 1:
        s.op = SvaOp::Eq;
        s.left_part = pick({"m.count", "m.mode"});
        s.right_part = pick({"3'b000", "m.ref"});
        break;
    case 2:
        s.op = SvaOp::Overlap;
        s.left_part = "(m.state == 2'b00)";
        s.right_part = pick({"(m.out == 1'b0)", "!$isunknown(m.out)"});
        break;
    case 3:
        s.op = SvaOp::NonOverlap;
        s.left_part = "(m.state == 2'b01)";
        s.right_part = "(m.state == 2'b10) || (m.state == 2'b00)";
        break;
    default:
        s.op = SvaOp::None;
        s.left_part = pick({"!$isunknown(m.q)", "(m.a == m.b) && (m.c != m.d)", "m.ready"});
        break;
    }
    return s;
}

}  // namespace

TEST_CASE("serialize then parse is a fixpoint on 100 generated snippets") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        SvaSnippet s0 = random_snippet(rng, i);
        std::string text = serialize(s0);
        SvaSnippet s1 = parse_snippet(text);
        CHECK(s1.same_structure(s0));
        CHECK(serialize(s1) == text);
        // and once more around the loop
        SvaSnippet s2 = parse_snippet(serialize(s1));
        CHECK(s2.same_structure(s1));
    }
}

// ---------------------------------------------------------------------------

static rtl::ModuleInfo fsm_module() {
    Diagnostics diags;
    return rtl::parse_design(fixtures::kFsm3, std::nullopt, &diags).top();
}

TEST_CASE("reorganize: one unused-state snippet over the fixture") {
    rtl::ModuleInfo m = fsm_module();
    auto ctx = make_context(m);
    std::vector<SvaSnippet> snippets = {make_unused_state_snippet(ctx, "state", 2, 3)};
    SvaFile file = reorganize(snippets, m, {});
    CHECK(file.checker_module_name == "fsm_sva_checker");
    CHECK(file.bind_stmt == "bind fsm fsm_sva_checker u_fsm_sva (.*);");
    CHECK(file.text.find("bind fsm fsm_sva_checker u_fsm_sva (.*);") != std::string::npos);
    CHECK(file.text.find("2'b11") != std::string::npos);
    auto rep = check_syntax(file.text);
    CHECK(rep.candidates == 1);
    CHECK(rep.score == 100.0);
}

TEST_CASE("reorganize: zero snippets gives an empty checker plus diagnostic") {
    rtl::ModuleInfo m = fsm_module();
    Diagnostics diags;
    SvaFile file = reorganize({}, m, {}, &diags);
    CHECK(file.text.find("module fsm_sva_checker") != std::string::npos);
    CHECK(file.text.find("endmodule") != std::string::npos);
    REQUIRE_FALSE(diags.empty());
}

TEST_CASE("reorganize: unknown signal is rejected") {
    rtl::ModuleInfo m = fsm_module();
    SvaSnippet s = parse_snippet(
        "property pb; @(posedge fsm.clk) fsm.bogus != 2'b11; endproperty "
        "ab: assert property(pb);");
    try {
        reorganize({std::move(s)}, m, {});
        FAIL("expected UnresolvedSignal");
    } catch (const UnresolvedSignal& e) {
        CHECK(e.signal == "bogus");
    }
}

TEST_CASE("reorganize: deterministic bytes under reproducible options") {
    rtl::ModuleInfo m = fsm_module();
    auto ctx = make_context(m);
    std::vector<SvaSnippet> snippets = {make_unused_state_snippet(ctx, "state", 2, 3),
                                        make_transition_snippet(ctx, "state", 2, 0, {0, 1})};
    ReorganizeOptions opts;
    opts.reproducible = true;
    opts.threat_label = "unused_states";
    std::string a = reorganize(snippets, m, opts).text;
    std::string b = reorganize(snippets, m, opts).text;
    CHECK(a == b);
}

TEST_CASE("reorganize: snippets sorted by (threat, asset, name)") {
    rtl::ModuleInfo m = fsm_module();
    auto ctx = make_context(m);
    auto t = make_transition_snippet(ctx, "state", 2, 1, {2});
    auto u = make_unused_state_snippet(ctx, "state", 2, 3);
    SvaFile file = reorganize({u, t}, m, {});
    CHECK(file.snippets[0].threat_tag == "state_transition");
    CHECK(file.snippets[1].threat_tag == "unused_states");
    size_t p_trans = file.text.find("p_trans_state_1");
    size_t p_unused = file.text.find("p_unused_state_3");
    REQUIRE(p_trans != std::string::npos);
    REQUIRE(p_unused != std::string::npos);
    CHECK(p_trans < p_unused);
}

TEST_CASE("reorganize: emitter snippets re-parse at 100") {
    rtl::ModuleInfo m = fsm_module();
    auto ctx = make_context(m);
    std::vector<SvaSnippet> snippets = {
        make_unused_state_snippet(ctx, "state", 2, 3),
        make_transition_snippet(ctx, "state", 2, 0, {0, 1}),
        make_init_value_snippet(ctx, "state", 2, 0),
        make_init_unknown_snippet(ctx, "out"),
        make_leak_snippet(ctx, "state", "out"),
    };
    for (auto& s : snippets) REQUIRE_NOTHROW(parse_snippet(serialize(s)));
    SvaFile file = reorganize(snippets, m, {});
    CHECK(check_syntax(file.text).score == 100.0);
    CHECK(check_syntax(file.text).candidates == 5);
}
