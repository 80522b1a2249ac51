// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "svagen/chain/decompose.hpp"
#include "svagen/llm/backend.hpp"
#include "svagen/sva/emit.hpp"
#include "svagen/sva/lint.hpp"

namespace svagen::llm {

struct OracleUnknownQuestion : Error {
    std::string id;
    explicit OracleUnknownQuestion(const std::string& sq_id)
        : Error("oracle has no rule for sub-question '" + sq_id + "'"), id(sq_id) {}
};

// Deterministic local answerer: computes every sub-question answer of the
// shipped chains straight from the design model. Ground truth for tests and
// the hermetic CI path; same design + same question id always gives the same
// bytes.
class OracleBackend : public Backend {
public:
    OracleBackend(const rtl::DesignModel& design, chain::DecomposeOptions opts = {})
        : design_(design), opts_(std::move(opts)) {}

    std::string name() const override { return "oracle"; }

    std::string submit(const prompt::PromptBundle& bundle) override {
        const rtl::ModuleInfo& m = design_.top();
        const auto& carried = bundle.carried_info;
        const std::string& id = bundle.sub_question_id;
        auto ctx = sva::make_context(m);

        auto want = [&](const char* key) -> std::string {
            auto it = carried.find(key);
            return it == carried.end() ? std::string() : it->second;
        };
        auto fenced = [](const std::string& label, const std::string& body) {
            return label + ":\n```\n" + body + "\n```";
        };

        if (id == "module_name") return "module: " + m.name;

        if (id == "io_ports") {
            std::vector<std::string> ins, outs;
            for (const auto& p : m.ports)
                (p.dir == rtl::PortDirection::Input ? ins : outs).push_back(p.name);
            return "inputs: " + (ins.empty() ? "none" : join(ins, ", ")) +
                   "\noutputs: " + (outs.empty() ? "none" : join(outs, ", "));
        }

        if (id == "clock_reset") {
            if (!m.clock) return "N/A — no sequential logic, so no clock pin to report.";
            if (!m.reset) return "N/A — no reset signal found in module " + m.name + ".";
            return "clock: " + *m.clock + "\nreset: " + m.reset->signal +
                   "\nreset_polarity: " + (m.reset->active_high ? "high" : "low") +
                   "\nreset_kind: " + (m.reset->asynchronous ? "async" : "sync");
        }

        if (id == "state_register") {
            if (m.fsms.empty()) return "N/A — no case-based FSM found.";
            const auto& fsm = m.fsms.front();
            return "state_register: " + fsm.state_register +
                   "\nwidth: " + std::to_string(fsm.width);
        }

        if (id == "defined_states") {
            if (m.fsms.empty()) return "N/A — no case-based FSM found.";
            const auto& fsm = m.fsms.front();
            std::vector<std::string> encs, labels;
            for (const auto& st : fsm.defined_states) {
                encs.push_back(render_bin_constant(fsm.width, st.encoding));
                labels.push_back(st.label);
            }
            return "defined_states: " + join(encs, ", ") + "\nstate_labels: " + join(labels, ", ");
        }

        if (id == "sva_sense") {
            if (ctx.clock.empty()) return "N/A — no clock to sample on.";
            std::string guard = ctx.reset.empty() ? "1'b0" : ctx.reset_asserted();
            return "sense_list: posedge " + ctx.hier(ctx.clock) + "\ndisable_guard: " + guard;
        }

        if (id == "unused_states") {
            if (m.fsms.empty()) return "N/A — no case-based FSM found.";
            const auto& fsm = m.fsms.front();
            auto unused = rtl::unused_states(fsm);
            if (unused.empty()) return "unused_states: none";
            std::vector<std::string> encs;
            for (auto v : unused) encs.push_back(render_bin_constant(fsm.width, v));
            return "unused_states: " + join(encs, ", ");
        }

        if (id == "gen_sva_unused") {
            const auto& fsm = m.fsms.front();
            auto enc = parse_sized_constant(want("unused_state"));
            if (!enc) return "N/A — the requested encoding is not a sized constant.";
            auto snippet =
                sva::make_unused_state_snippet(ctx, fsm.state_register, fsm.width, enc->value);
            return fenced("sva", trim(sva::serialize(snippet)));
        }

        if (id == "transition_table" || id == "valid_transitions") {
            if (m.fsms.empty()) return "N/A — no case-based FSM found.";
            std::string field = id == "transition_table" ? "transitions" : "valid_transitions";
            return field + ": " + chain::render_transition_relation(m.fsms.front());
        }

        if (id == "reset_state") {
            if (m.fsms.empty() || !m.fsms.front().reset_state)
                return "N/A — no reset state recorded for the FSM.";
            const auto& fsm = m.fsms.front();
            return "reset_state: " + render_bin_constant(fsm.width, *fsm.reset_state);
        }

        if (id == "transition_guard") {
            const auto& fsm = m.fsms.front();
            std::string cond;
            for (const auto& next : split_list(want("next_states"))) {
                if (!cond.empty()) cond += " || ";
                cond += "(" + ctx.hier(fsm.state_register) + " == " + next + ")";
            }
            if (cond.empty()) return "N/A — no successor states were carried forward.";
            return "condition: " + cond;
        }

        if (id == "gen_sva_transition") {
            const auto& fsm = m.fsms.front();
            auto from = parse_sized_constant(want("from_state"));
            if (!from) return "N/A — the from-state is not a sized constant.";
            std::vector<std::uint64_t> allowed;
            for (const auto& next : split_list(want("next_states")))
                if (auto v = parse_sized_constant(next)) allowed.push_back(v->value);
            if (allowed.empty()) return "N/A — no successor states were carried forward.";
            auto snippet = sva::make_transition_snippet(ctx, fsm.state_register, fsm.width,
                                                        from->value, allowed);
            return fenced("sva", trim(sva::serialize(snippet)));
        }

        if (id == "internal_signals" || id == "register_inventory") {
            if (m.registers.empty())
                return id == "register_inventory" ? "N/A — module has no registers."
                                                  : "registers: none\nwidths: none";
            std::vector<std::string> names, widths;
            for (const auto& r : m.registers) {
                names.push_back(r.name);
                widths.push_back(r.name + ":" + std::to_string(r.width));
            }
            return "registers: " + join(names, ", ") + "\nwidths: " + join(widths, ", ");
        }

        if (id == "observable_outputs") {
            // widest first: data-bearing outputs ahead of handshake strobes
            std::vector<const rtl::PortInfo*> outs;
            for (const auto& p : m.ports)
                if (p.dir != rtl::PortDirection::Input) outs.push_back(&p);
            std::stable_sort(outs.begin(), outs.end(),
                             [](const rtl::PortInfo* a, const rtl::PortInfo* b) {
                                 return a->width > b->width;
                             });
            std::vector<std::string> names;
            for (const auto* p : outs) names.push_back(p->name);
            return "observable: " + (names.empty() ? "none" : join(names, ", "));
        }

        if (id == "sensitive_candidates" || id == "confirm_assets") {
            auto sensitive = chain::sensitive_signals(m, opts_);
            std::string field = id == "sensitive_candidates" ? "candidates" : "sensitive_signals";
            return field + ": " + (sensitive.empty() ? "none" : join(sensitive, ", "));
        }

        if (id == "leak_condition") {
            std::string sig = want("sensitive_signal"), port = want("observable_port");
            if (sig.empty() || port.empty()) return "N/A — leak pair incomplete.";
            return "condition: " + ctx.hier(port) + " != " + ctx.hier(sig);
        }

        if (id == "gen_sva_leak") {
            std::string sig = want("sensitive_signal"), port = want("observable_port");
            if (sig.empty() || port.empty()) return "N/A — leak pair incomplete.";
            return fenced("sva", trim(sva::serialize(sva::make_leak_snippet(ctx, sig, port))));
        }

        if (id == "reset_values" || id == "init_assets") {
            if (m.registers.empty()) return "N/A — module has no registers.";
            std::string field = id == "reset_values" ? "init_report" : "init_assets";
            std::string report;
            for (const auto& r : m.registers) {
                if (!report.empty()) report += "; ";
                report += r.name + "=";
                report += r.reset_value ? render_bin_constant(r.width, *r.reset_value) : "none";
            }
            return field + ": " + report;
        }

        if (id == "gen_sva_init") {
            std::string reg = want("register");
            const rtl::RegInfo* info = m.find_register(reg);
            if (!info) return "N/A — register '" + reg + "' is not declared in the module.";
            auto value = parse_sized_constant(want("reset_value"));
            auto snippet = value ? sva::make_init_value_snippet(ctx, reg, info->width, value->value)
                                 : sva::make_init_unknown_snippet(ctx, reg);
            return fenced("sva", trim(sva::serialize(snippet)));
        }

        if (id == "lint_check") {
            std::string draft = want("sva");
            if (draft.empty()) return "N/A — no snippet was carried forward to check.";
            return fenced("sva_final", trim(sva::lint_constants(draft).text));
        }

        throw OracleUnknownQuestion(id);
    }

private:
    const rtl::DesignModel& design_;
    chain::DecomposeOptions opts_;
};

}  // namespace svagen::llm
