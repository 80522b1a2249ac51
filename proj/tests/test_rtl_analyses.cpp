// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "svagen/rtl/analyze.hpp"

#include "fixtures.hpp"

using namespace svagen;
using namespace svagen::rtl;

// ---------------------------------------------------------------------------
// brute-force one-step simulator, independent of the FSM pattern matcher.
// Executes the parsed always blocks directly: star blocks settle first with
// blocking semantics, then edged blocks run once with reset deasserted.

namespace {

class OneStepSim {
public:
    OneStepSim(const ModuleDecl& ast, const ModuleInfo& info) : ast_(ast), info_(info) {}

    // next value of `reg_name` from state `from` with the given input values
    std::uint64_t step(const std::string& reg_name, std::uint64_t from,
                       const std::map<std::string, std::uint64_t>& inputs) {
        std::map<std::string, std::uint64_t> env;
        for (const auto& c : info_.constants) env[c.name] = c.value;
        for (const auto& r : info_.registers) env[r.name] = 0;
        env[reg_name] = from;
        for (const auto& [k, v] : inputs) env[k] = v;
        if (info_.reset) env[info_.reset->signal] = info_.reset->active_high ? 0 : 1;

        // combinational settle (two passes are plenty for these fixtures)
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& ab : ast_.always_blocks)
                if (ab.star || !has_edge(ab)) {
                    std::map<std::string, std::uint64_t> nb;
                    exec(*ab.body, env, nb);
                    for (const auto& [k, v] : nb) env[k] = v;
                }

        std::map<std::string, std::uint64_t> nonblocking;
        for (const auto& ab : ast_.always_blocks)
            if (has_edge(ab)) exec(*ab.body, env, nonblocking);
        auto it = nonblocking.find(reg_name);
        return it != nonblocking.end() ? it->second : from;
    }

private:
    const ModuleDecl& ast_;
    const ModuleInfo& info_;

    static bool has_edge(const AlwaysBlock& ab) {
        for (const auto& s : ab.sensitivity)
            if (s.edge != SensItem::Edge::Level) return true;
        return false;
    }

    std::uint64_t eval(const Expr& e, std::map<std::string, std::uint64_t>& env) {
        ConstEval ce(env);
        auto v = ce.eval(e);
        REQUIRE(v.has_value());
        return *v;
    }

    void exec(const Stmt& s, std::map<std::string, std::uint64_t>& env,
              std::map<std::string, std::uint64_t>& nonblocking) {
        switch (s.kind) {
        case StmtKind::Block:
            for (const auto& child : s.stmts) exec(*child, env, nonblocking);
            break;
        case StmtKind::If:
            if (eval(*s.cond, env))
                exec(*s.then_branch, env, nonblocking);
            else if (s.else_branch)
                exec(*s.else_branch, env, nonblocking);
            break;
        case StmtKind::Case: {
            std::uint64_t subject = eval(*s.subject, env);
            const CaseArm* hit = nullptr;
            const CaseArm* def = nullptr;
            for (const auto& arm : s.arms) {
                if (arm.is_default) def = &arm;
                for (const auto& l : arm.labels)
                    if (!hit && eval(*l, env) == subject) hit = &arm;
            }
            if (!hit) hit = def;
            if (hit && hit->body) exec(*hit->body, env, nonblocking);
            break;
        }
        case StmtKind::Assign: {
            if (s.target->kind != ExprKind::Ident) break;
            std::uint64_t v = eval(*s.rhs, env);
            if (s.nonblocking)
                nonblocking[s.target->name] = v;
            else
                env[s.target->name] = v;
            break;
        }
        case StmtKind::Null: break;
        }
    }
};

struct ParsedFixture {
    SourceUnit unit;
    ModuleInfo info;
};

ParsedFixture analyze_fixture(const char* src) {
    Parser p(src);
    ParsedFixture f{p.parse(), {}};
    f.info = analyze_module(f.unit.modules.at(0), nullptr);
    return f;
}

// one-bit input ports other than clock/reset
std::vector<std::string> data_inputs(const ModuleInfo& m) {
    std::vector<std::string> out;
    for (const auto& p : m.ports) {
        if (p.dir != PortDirection::Input || p.width != 1) continue;
        if (m.clock && p.name == *m.clock) continue;
        if (m.reset && p.name == m.reset->signal) continue;
        out.push_back(p.name);
    }
    return out;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> simulated_transitions(const ParsedFixture& f,
                                                                        const FsmInfo& fsm) {
    OneStepSim sim(f.unit.modules.at(0), f.info);
    auto inputs = data_inputs(f.info);
    std::set<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& st : fsm.defined_states) {
        for (std::uint64_t combo = 0; combo < (1ull << inputs.size()); ++combo) {
            std::map<std::string, std::uint64_t> env;
            for (size_t i = 0; i < inputs.size(); ++i) env[inputs[i]] = (combo >> i) & 1;
            out.emplace(st.encoding, sim.step(fsm.state_register, st.encoding, env));
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("clock and reset: canonical pattern") {
    auto f = analyze_fixture(fixtures::kFsm3);
    REQUIRE(f.info.clock);
    CHECK(*f.info.clock == "clk");
    REQUIRE(f.info.reset);
    CHECK(f.info.reset->signal == "rst");
    CHECK(f.info.reset->active_high);
    CHECK(f.info.reset->asynchronous);
}

TEST_CASE("clock and reset: module without always blocks") {
    Diagnostics diags;
    DesignModel model = parse_design(fixtures::kCombinational, std::nullopt, &diags);
    CHECK_FALSE(model.top().clock);
    CHECK_FALSE(model.top().reset);
    CHECK_FALSE(diags.empty());
}

TEST_CASE("clock tie-break by port order with AmbiguousClock diagnostic") {
    Diagnostics diags;
    DesignModel model = parse_design(fixtures::kTwoClocks, std::nullopt, &diags);
    REQUIRE(model.top().clock);
    CHECK(*model.top().clock == "clk_a");
    bool saw = false;
    for (const auto& d : diags) saw |= d.message.find("AmbiguousClock") != std::string::npos;
    CHECK(saw);
}

TEST_CASE("negedge reset name gives active-low async reset") {
    auto f = analyze_fixture(fixtures::kFsmTwoProcess);
    REQUIRE(f.info.reset);
    CHECK(f.info.reset->signal == "rst_n");
    CHECK_FALSE(f.info.reset->active_high);
    CHECK(f.info.reset->asynchronous);
}

TEST_CASE("synchronous reset detected from guarded if") {
    const char* src = R"(
module syncrst(clk, rst, d, q);
  input clk;
  input rst;
  input d;
  output reg q;
  always @(posedge clk) begin
    if (rst) q <= 1'b0;
    else q <= d;
  end
endmodule
)";
    auto f = analyze_fixture(src);
    REQUIRE(f.info.reset);
    CHECK(f.info.reset->signal == "rst");
    CHECK(f.info.reset->active_high);
    CHECK_FALSE(f.info.reset->asynchronous);
}

TEST_CASE("fsm extraction: 3-state fixture") {
    auto f = analyze_fixture(fixtures::kFsm3);
    REQUIRE(f.info.fsms.size() == 1);
    const FsmInfo& fsm = f.info.fsms[0];
    CHECK(fsm.state_register == "state");
    CHECK(fsm.width == 2);
    REQUIRE(fsm.defined_states.size() == 3);
    CHECK(fsm.label_of(0) == "S0");
    CHECK(fsm.label_of(1) == "S1");
    CHECK(fsm.label_of(2) == "S2");
    REQUIRE(fsm.reset_state);
    CHECK(*fsm.reset_state == 0);

    std::set<std::pair<std::uint64_t, std::uint64_t>> got;
    for (const auto& t : fsm.transitions) got.emplace(t.from, t.to);
    std::set<std::pair<std::uint64_t, std::uint64_t>> want = {{0, 1}, {0, 0}, {1, 2}, {2, 0}};
    CHECK(got == want);

    // condition text on the guarded arm
    bool cond_in = false, cond_not_in = false;
    for (const auto& t : fsm.transitions) {
        if (t.from == 0 && t.to == 1) cond_in = t.condition == "in";
        if (t.from == 0 && t.to == 0) cond_not_in = t.condition == "!in";
    }
    CHECK(cond_in);
    CHECK(cond_not_in);
}

TEST_CASE("fsm extraction: case on an input is not an FSM") {
    auto f = analyze_fixture(fixtures::kCaseOnInput);
    CHECK(f.info.fsms.empty());
}

TEST_CASE("fsm extraction: raw literals synthesize STATE_<n> labels") {
    auto f = analyze_fixture(fixtures::kFsmRawLiterals);
    REQUIRE(f.info.fsms.size() == 1);
    const FsmInfo& fsm = f.info.fsms[0];
    CHECK(fsm.label_of(0) == "STATE_0");
    CHECK(fsm.label_of(1) == "STATE_1");
    CHECK(fsm.defined_states.size() == 2);
}

TEST_CASE("fsm extraction: two-process with companion next register") {
    auto f = analyze_fixture(fixtures::kFsmTwoProcess);
    REQUIRE(f.info.fsms.size() == 1);
    CHECK(f.info.fsms[0].state_register == "cur");
    CHECK(f.info.fsms[0].defined_states.size() == 3);
}

TEST_CASE("fsm extraction matches one-step simulation on all fixtures") {
    const char* sources[] = {fixtures::kFsm3, fixtures::kFsmRawLiterals,
                             fixtures::kFsmTwoProcess};
    for (const char* src : sources) {
        auto f = analyze_fixture(src);
        REQUIRE(f.info.fsms.size() == 1);
        const FsmInfo& fsm = f.info.fsms[0];
        std::set<std::pair<std::uint64_t, std::uint64_t>> extracted;
        for (const auto& t : fsm.transitions) extracted.emplace(t.from, t.to);
        CHECK(extracted == simulated_transitions(f, fsm));
    }
}

TEST_CASE("if/else chain FSM shape is diagnosed, not extracted") {
    const char* src = R"(
module chainfsm(clk, rst, go, st);
  input clk;
  input rst;
  input go;
  output reg [1:0] st;
  localparam A = 2'b00;
  localparam B = 2'b01;
  always @(posedge clk or posedge rst) begin
    if (rst) st <= A;
    else if (go) st <= B;
    else st <= A;
  end
endmodule
)";
    Diagnostics diags;
    DesignModel model = parse_design(src, std::nullopt, &diags);
    CHECK(model.top().fsms.empty());
    bool saw = false;
    for (const auto& d : diags)
        saw |= d.message.find("if/else state machine") != std::string::npos;
    CHECK(saw);
}

// ---------------------------------------------------------------------------

TEST_CASE("unused states: examples") {
    FsmInfo fsm;
    fsm.width = 2;
    fsm.defined_states = {{"S0", 0}, {"S1", 1}, {"S2", 2}};
    CHECK(unused_states(fsm) == std::vector<std::uint64_t>{3});

    FsmInfo full;
    full.width = 1;
    full.defined_states = {{"A", 0}, {"B", 1}};
    CHECK(unused_states(full).empty());

    FsmInfo sparse;
    sparse.width = 3;
    sparse.defined_states = {{"Z", 0}};
    CHECK(unused_states(sparse) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("unused states: width cap") {
    FsmInfo fsm;
    fsm.width = 17;
    REQUIRE_THROWS_AS(unused_states(fsm), WidthTooLarge);
}

TEST_CASE("unused states tile the full space with defined states") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 50; ++trial) {
        FsmInfo fsm;
        fsm.width = 1 + static_cast<int>(rng() % 6);
        std::uint64_t space = 1ull << fsm.width;
        for (std::uint64_t v = 0; v < space; ++v)
            if (rng() % 2) fsm.defined_states.push_back({"S" + std::to_string(v), v});

        auto unused = unused_states(fsm);

        // independent enumeration
        std::vector<std::uint64_t> expected;
        for (std::uint64_t v = 0; v < space; ++v)
            if (!fsm.has_state(v)) expected.push_back(v);
        CHECK(unused == expected);
        CHECK(unused.size() + fsm.defined_states.size() == space);
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("uninitialized registers: out lacks a reset assignment") {
    auto f = analyze_fixture(fixtures::kFsm3);
    auto regs = uninitialized_registers(f.info);
    REQUIRE(regs.size() == 1);
    CHECK(regs[0].name == "out");
    const RegInfo* state = f.info.find_register("state");
    REQUIRE(state);
    CHECK(state->initialized_on_reset);
    REQUIRE(state->reset_value);
    CHECK(*state->reset_value == 0);
}

TEST_CASE("uninitialized registers: no reset lists everything with diagnostic") {
    auto f = analyze_fixture(fixtures::kNoReset);
    Diagnostics diags;
    auto regs = uninitialized_registers(f.info, &diags);
    CHECK(regs.size() == f.info.registers.size());
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0].message == "no reset found");
}

TEST_CASE("uninitialized registers: fully initialized module is clean") {
    auto f = analyze_fixture(fixtures::kFullyInitialized);
    CHECK(uninitialized_registers(f.info).empty());
}

TEST_CASE("declaration initializer counts as initialized") {
    const char* src = R"(
module declinit(clk, q);
  input clk;
  output q;
  reg q = 1'b1;
  always @(posedge clk) q <= ~q;
endmodule
)";
    auto f = analyze_fixture(src);
    CHECK(uninitialized_registers(f.info).empty());
    REQUIRE(f.info.find_register("q")->reset_value);
    CHECK(*f.info.find_register("q")->reset_value == 1);
}

TEST_CASE("reset_value respects invariants") {
    auto f = analyze_fixture(fixtures::kFsm3);
    for (const auto& r : f.info.registers) {
        if (r.reset_value) {
            CHECK(r.initialized_on_reset);
            if (r.width < 64) CHECK(*r.reset_value < (1ull << r.width));
        }
    }
}
