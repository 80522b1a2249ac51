// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "svagen/rtl/design.hpp"
#include "svagen/sva/snippet.hpp"

namespace svagen::sva {

// Deterministic snippet builders, one per threat class. The oracle backend
// answers codegen sub-questions with these, and the eval harness scores
// against the same shapes.

struct EmitContext {
    std::string module;
    std::string clock;
    std::string reset;          // empty = none
    bool reset_active_high = true;

    std::string hier(const std::string& sig) const { return module + "." + sig; }
    std::string reset_asserted() const {
        if (reset.empty()) return {};
        return reset_active_high ? hier(reset) : "!" + hier(reset);
    }
};

inline EmitContext make_context(const rtl::ModuleInfo& m) {
    EmitContext ctx;
    ctx.module = m.name;
    if (m.clock) ctx.clock = *m.clock;
    if (m.reset) {
        ctx.reset = m.reset->signal;
        ctx.reset_active_high = m.reset->active_high;
    }
    return ctx;
}

// state register must never hold an unused encoding
inline SvaSnippet make_unused_state_snippet(const EmitContext& ctx, const std::string& state_reg,
                                            int width, std::uint64_t encoding) {
    SvaSnippet s;
    std::string id = state_reg + "_" + std::to_string(encoding);
    s.property_name = "p_unused_" + id;
    s.assert_label = "a_unused_" + id;
    s.sense_signal = ctx.hier(ctx.clock);
    s.disable_iff = ctx.reset_asserted();
    s.left_part = ctx.hier(state_reg);
    s.op = SvaOp::Ne;
    s.right_part = render_bin_constant(width, encoding);
    s.threat_tag = "unused_states";
    s.asset_tag = id;
    s.source_text = serialize(s);
    return s;
}

// from a defined state, only the extracted next states may follow
inline SvaSnippet make_transition_snippet(const EmitContext& ctx, const std::string& state_reg,
                                          int width, std::uint64_t from,
                                          const std::vector<std::uint64_t>& allowed) {
    SvaSnippet s;
    std::string id = state_reg + "_" + std::to_string(from);
    s.property_name = "p_trans_" + id;
    s.assert_label = "a_trans_" + id;
    s.sense_signal = ctx.hier(ctx.clock);
    s.disable_iff = ctx.reset_asserted();
    s.left_part = "(" + ctx.hier(state_reg) + " == " + render_bin_constant(width, from) + ")";
    s.op = SvaOp::NonOverlap;
    std::string rhs;
    for (size_t i = 0; i < allowed.size(); ++i) {
        if (i) rhs += " || ";
        rhs += "(" + ctx.hier(state_reg) + " == " + render_bin_constant(width, allowed[i]) + ")";
    }
    s.right_part = rhs;
    s.threat_tag = "state_transition";
    s.asset_tag = id;
    s.source_text = serialize(s);
    return s;
}

// a register with a documented reset value must hold it while reset asserts
inline SvaSnippet make_init_value_snippet(const EmitContext& ctx, const std::string& reg,
                                          int width, std::uint64_t value) {
    SvaSnippet s;
    s.property_name = "p_init_" + reg;
    s.assert_label = "a_init_" + reg;
    s.sense_signal = ctx.hier(ctx.clock);
    s.left_part = ctx.reset_asserted();
    s.op = SvaOp::Overlap;
    s.right_part = "(" + ctx.hier(reg) + " == " + render_bin_constant(width, value) + ")";
    s.threat_tag = "incorrect_init";
    s.asset_tag = reg;
    s.source_text = serialize(s);
    return s;
}

// a register without any reset assignment must still be initialized; asserted
// as never-unknown once the design runs
inline SvaSnippet make_init_unknown_snippet(const EmitContext& ctx, const std::string& reg) {
    SvaSnippet s;
    s.property_name = "p_init_" + reg;
    s.assert_label = "a_init_" + reg;
    s.sense_signal = ctx.hier(ctx.clock);
    std::string check = "!$isunknown(" + ctx.hier(reg) + ")";
    if (ctx.reset.empty()) {
        s.left_part = check;
        s.op = SvaOp::None;
    } else {
        s.left_part = ctx.reset_asserted();
        s.op = SvaOp::Overlap;
        s.right_part = check;
    }
    s.threat_tag = "incorrect_init";
    s.asset_tag = reg;
    s.source_text = serialize(s);
    return s;
}

// a sensitive signal must not appear verbatim on an observable output
inline SvaSnippet make_leak_snippet(const EmitContext& ctx, const std::string& sensitive,
                                    const std::string& observable) {
    SvaSnippet s;
    s.property_name = "p_leak_" + sensitive;
    s.assert_label = "a_leak_" + sensitive;
    s.sense_signal = ctx.hier(ctx.clock);
    s.disable_iff = ctx.reset_asserted();
    s.left_part = ctx.hier(observable);
    s.op = SvaOp::Ne;
    s.right_part = ctx.hier(sensitive);
    s.threat_tag = "info_leakage";
    s.asset_tag = sensitive;
    s.source_text = serialize(s);
    return s;
}

}  // namespace svagen::sva
