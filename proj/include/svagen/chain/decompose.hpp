// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "svagen/chain/loader.hpp"
#include "svagen/chain/model.hpp"
#include "svagen/rtl/design.hpp"

namespace svagen::chain {

struct MissingDesignFact : Error {
    std::string fact;
    explicit MissingDesignFact(const std::string& name)
        : Error("design provides no value for required fact '" + name + "'"), fact(name) {}
};

struct DecomposeOptions {
    std::vector<std::string> sensitive_patterns = {"key", "secret", "password", "priv"};
    std::vector<std::string> sideband_assets;  // from the per-design .assets file
};

// Signals whose (lowercased) names contain a sensitive pattern, plus the
// sideband list, restricted to declared signals. Outputs are excluded: they
// are where a secret could leak to, not where it lives.
inline std::vector<std::string> sensitive_signals(const rtl::ModuleInfo& m,
                                                  const DecomposeOptions& opts) {
    std::vector<std::string> out;
    auto consider = [&](const std::string& name) {
        const rtl::PortInfo* port = m.find_port(name);
        if (port && port->dir != rtl::PortDirection::Input) return;
        std::string l = lower(name);
        bool hit = false;
        for (const auto& p : opts.sensitive_patterns)
            hit |= l.find(p) != std::string::npos;
        for (const auto& s : opts.sideband_assets) hit |= s == name;
        if (!hit) return;
        for (const auto& existing : out)
            if (existing == name) return;
        out.push_back(name);
    };
    for (const auto& r : m.registers) consider(r.name);
    for (const auto& p : m.ports) consider(p.name);
    for (const auto& w : m.wires) consider(w);
    return out;
}

// per-from-state successor sets of the first FSM, encodings ascending
inline std::map<std::uint64_t, std::vector<std::uint64_t>> transition_map(const rtl::FsmInfo& fsm) {
    std::map<std::uint64_t, std::set<std::uint64_t>> collected;
    for (const auto& t : fsm.transitions) collected[t.from].insert(t.to);
    std::map<std::uint64_t, std::vector<std::uint64_t>> out;
    for (const auto& [from, tos] : collected) out[from] = {tos.begin(), tos.end()};
    return out;
}

inline std::string render_transition_dump(const rtl::FsmInfo& fsm) {
    std::string out;
    for (const auto& t : fsm.transitions) {
        out += fsm.label_of(t.from) + " (" + render_bin_constant(fsm.width, t.from) + ") -> " +
               fsm.label_of(t.to) + " (" + render_bin_constant(fsm.width, t.to) + ")";
        if (!t.condition.empty()) out += " when (" + t.condition + ")";
        out += "\n";
    }
    return trim(out);
}

// compact per-from-state relation: "2'b00 -> 2'b00, 2'b01; 2'b01 -> 2'b10"
inline std::string render_transition_relation(const rtl::FsmInfo& fsm) {
    std::string out;
    for (const auto& [from, tos] : transition_map(fsm)) {
        if (!out.empty()) out += "; ";
        out += render_bin_constant(fsm.width, from) + " -> ";
        for (size_t i = 0; i < tos.size(); ++i) {
            if (i) out += ", ";
            out += render_bin_constant(fsm.width, tos[i]);
        }
    }
    return out;
}

// design-provided placeholder values for one (design, threat) cell
inline std::map<std::string, std::string> bind_design_facts(const rtl::DesignModel& design,
                                                            const DecomposeOptions& opts = {}) {
    const rtl::ModuleInfo& m = design.top();
    std::map<std::string, std::string> facts;
    facts["source"] = trim(design.source_text);
    facts["module"] = m.name;
    {
        std::string stem = design.source_path;
        size_t slash = stem.find_last_of('/');
        if (slash != std::string::npos) stem = stem.substr(slash + 1);
        size_t dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        facts["design_name"] = stem.empty() ? m.name : stem;
    }
    std::vector<std::string> ins, outs;
    for (const auto& p : m.ports)
        (p.dir == rtl::PortDirection::Input ? ins : outs).push_back(p.name);
    facts["inputs"] = ins.empty() ? "none" : join(ins, ", ");
    facts["outputs"] = outs.empty() ? "none" : join(outs, ", ");
    if (!m.registers.empty()) {
        std::string table;
        for (const auto& r : m.registers) {
            if (!table.empty()) table += ", ";
            table += r.name + ":" + std::to_string(r.width);
        }
        facts["register_table"] = table;
    }
    if (!m.fsms.empty()) {
        const rtl::FsmInfo& fsm = m.fsms.front();
        facts["fsm_summary"] = "state register " + fsm.state_register + ", width " +
                               std::to_string(fsm.width) + ", " +
                               std::to_string(fsm.defined_states.size()) + " defined states";
        facts["transition_dump"] = render_transition_dump(fsm);
    }
    {
        auto sensitive = sensitive_signals(m, opts);
        facts["sensitive_candidates"] = sensitive.empty() ? "none" : join(sensitive, ", ");
    }
    return facts;
}

struct BoundChain {
    ThreatChain chain;
    std::string module;
    std::map<std::string, std::string> facts;
};

// Binds the chain templates to design facts. Throws MissingDesignFact when a
// referenced design placeholder has no value for this design (a combinational
// module under an FSM threat, for example); the caller skips the cell with a
// diagnostic.
inline BoundChain decompose(const rtl::DesignModel& design, const ThreatChain& chain,
                            const DecomposeOptions& opts = {}) {
    BoundChain bound;
    bound.chain = chain;
    bound.module = design.top().name;
    bound.facts = bind_design_facts(design, opts);

    auto fact_group = [](const std::string& name) -> std::string {
        if (name == "fsm_summary" || name == "transition_dump") return "fsm";
        if (name == "register_table") return "registers";
        return name;
    };
    for (const auto& sq : chain.sub_questions)
        for (const auto& placeholder : placeholders_of(sq.question_template))
            if (is_design_fact(placeholder) && !bound.facts.count(placeholder))
                throw MissingDesignFact(fact_group(placeholder));
    return bound;
}

inline BoundChain decompose(const rtl::DesignModel& design, const ThreatModel& threat,
                            const DecomposeOptions& opts = {}, int k = 3) {
    return decompose(design, load_chain(threat, k), opts);
}

// ---------------------------------------------------------------------------
// per-asset expansion of the producer answer

namespace detail {

// "a=1; b=none" style entries
inline std::vector<std::pair<std::string, std::string>> parse_assignments(
    const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& entry : split(text, ';')) {
        std::string t = trim(entry);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) continue;
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

}  // namespace detail

// Splits the asset-producer answer into per-asset records whose payload keys
// are the producer's declared per-asset exports.
inline std::vector<AssetInfo> extract_assets(const std::string& threat_id,
                                             const std::string& module,
                                             const std::map<std::string, std::string>& extracted,
                                             const std::map<std::string, std::string>& carried) {
    std::vector<AssetInfo> out;
    auto field = [&](const char* name) -> std::string {
        auto it = extracted.find(name);
        return it == extracted.end() ? std::string() : it->second;
    };
    auto carried_field = [&](const char* name) -> std::string {
        auto it = carried.find(name);
        return it == carried.end() ? std::string() : it->second;
    };

    if (threat_id == "unused_states") {
        std::string list = field("unused_states");
        if (list == "none") return out;
        for (const auto& enc : split_list(list))
            out.push_back({threat_id, module, enc, {{"unused_state", enc}}});
    } else if (threat_id == "state_transition") {
        for (const auto& entry : split(field("valid_transitions"), ';')) {
            std::string t = trim(entry);
            if (t.empty()) continue;
            size_t arrow = t.find("->");
            if (arrow == std::string::npos) continue;
            std::string from = trim(t.substr(0, arrow));
            std::string nexts = trim(t.substr(arrow + 2));
            if (from.empty() || nexts.empty()) continue;
            out.push_back({threat_id, module, from,
                           {{"from_state", from}, {"next_states", nexts}}});
        }
    } else if (threat_id == "info_leakage") {
        std::string list = field("sensitive_signals");
        if (list == "none") return out;
        auto observed = split_list(carried_field("observable"));
        std::string port = observed.empty() ? "" : observed.front();
        for (const auto& sig : split_list(list)) {
            if (port.empty()) continue;  // nothing observable, nothing to assert
            out.push_back({threat_id, module, sig,
                           {{"sensitive_signal", sig}, {"observable_port", port}}});
        }
    } else if (threat_id == "incorrect_init") {
        for (const auto& [reg, value] : detail::parse_assignments(field("init_assets")))
            out.push_back({threat_id, module, reg,
                           {{"register", reg}, {"reset_value", value}}});
    }
    return out;
}

}  // namespace svagen::chain
