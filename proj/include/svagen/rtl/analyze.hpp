// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "svagen/rtl/ast.hpp"
#include "svagen/rtl/design.hpp"
#include "svagen/rtl/parser.hpp"

namespace svagen::rtl {

// ---------------------------------------------------------------------------
// constant evaluation over module parameters

class ConstEval {
public:
    explicit ConstEval(const std::map<std::string, std::uint64_t>& env) : env_(env) {}

    std::optional<std::uint64_t> eval(const Expr& e) const {
        switch (e.kind) {
        case ExprKind::Number: return e.has_xz ? std::nullopt : std::optional(e.value);
        case ExprKind::Ident: {
            auto it = env_.find(e.name);
            if (it == env_.end()) return std::nullopt;
            return it->second;
        }
        case ExprKind::Unary: {
            auto v = eval(*e.a);
            if (!v) return std::nullopt;
            if (e.op == "-") return static_cast<std::uint64_t>(-static_cast<std::int64_t>(*v));
            if (e.op == "~") return ~*v;
            if (e.op == "!") return static_cast<std::uint64_t>(*v == 0);
            if (e.op == "+") return *v;
            return std::nullopt;
        }
        case ExprKind::Binary: {
            auto a = eval(*e.a), b = eval(*e.b);
            if (!a || !b) return std::nullopt;
            const std::string& op = e.op;
            if (op == "+") return *a + *b;
            if (op == "-") return *a - *b;
            if (op == "*") return *a * *b;
            if (op == "/") return *b ? std::optional(*a / *b) : std::nullopt;
            if (op == "%") return *b ? std::optional(*a % *b) : std::nullopt;
            if (op == "<<") return *a << *b;
            if (op == ">>") return *a >> *b;
            if (op == "&") return *a & *b;
            if (op == "|") return *a | *b;
            if (op == "^") return *a ^ *b;
            if (op == "&&") return static_cast<std::uint64_t>(*a && *b);
            if (op == "||") return static_cast<std::uint64_t>(*a || *b);
            if (op == "==") return static_cast<std::uint64_t>(*a == *b);
            if (op == "!=") return static_cast<std::uint64_t>(*a != *b);
            if (op == "<") return static_cast<std::uint64_t>(*a < *b);
            if (op == "<=") return static_cast<std::uint64_t>(*a <= *b);
            if (op == ">") return static_cast<std::uint64_t>(*a > *b);
            if (op == ">=") return static_cast<std::uint64_t>(*a >= *b);
            return std::nullopt;
        }
        case ExprKind::Ternary: {
            auto c = eval(*e.a);
            if (!c) return std::nullopt;
            return eval(*c ? *e.b : *e.c);
        }
        default: return std::nullopt;
        }
    }

private:
    const std::map<std::string, std::uint64_t>& env_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline const std::string* assign_target_name(const Stmt& s) {
    if (s.kind != StmtKind::Assign) return nullptr;
    const Expr* t = s.target.get();
    if (t->kind == ExprKind::Select) t = t->sel_base.get();
    if (t->kind == ExprKind::Ident) return &t->name;
    return nullptr;
}

inline bool is_whole_target(const Stmt& s) {
    return s.kind == StmtKind::Assign && s.target->kind == ExprKind::Ident;
}

// signal referenced as plain identifier or !ident / ~ident / (ident == 0)...
inline bool condition_mentions(const Expr& e, const std::string& sig) {
    switch (e.kind) {
    case ExprKind::Ident: return e.name == sig;
    case ExprKind::Unary: return condition_mentions(*e.a, sig);
    case ExprKind::Binary: return condition_mentions(*e.a, sig) || condition_mentions(*e.b, sig);
    case ExprKind::Ternary:
        return condition_mentions(*e.a, sig) || condition_mentions(*e.b, sig) ||
               condition_mentions(*e.c, sig);
    case ExprKind::Select: return condition_mentions(*e.sel_base, sig);
    default: return false;
    }
}

// true if the condition tests the signal asserted ("rst", "rst == 1"),
// false if negated ("!rst", "~rst", "rst == 0"), nullopt otherwise
inline std::optional<bool> condition_polarity(const Expr& e, const std::string& sig) {
    if (e.kind == ExprKind::Ident && e.name == sig) return true;
    if (e.kind == ExprKind::Unary && (e.op == "!" || e.op == "~"))
        if (auto inner = condition_polarity(*e.a, sig)) return !*inner;
    if (e.kind == ExprKind::Binary && (e.op == "==" || e.op == "!=")) {
        const Expr *lhs = e.a.get(), *rhs = e.b.get();
        if (rhs->kind == ExprKind::Ident && rhs->name == sig) std::swap(lhs, rhs);
        if (lhs->kind == ExprKind::Ident && lhs->name == sig && rhs->kind == ExprKind::Number) {
            bool asserted = rhs->value != 0;
            return e.op == "==" ? asserted : !asserted;
        }
    }
    return std::nullopt;
}

struct ConstAssign {
    std::string target;
    std::uint64_t value;
    std::string condition;  // path condition inside the enclosing arm
    bool nonblocking;
};

// collect constant-RHS assignments with path conditions
inline void collect_const_assigns(const Stmt& s, const ConstEval& ce, std::string cond,
                                  std::vector<ConstAssign>& out) {
    switch (s.kind) {
    case StmtKind::Block:
        for (const auto& child : s.stmts) collect_const_assigns(*child, ce, cond, out);
        break;
    case StmtKind::If: {
        std::string then_cond = cond.empty() ? expr_text(*s.cond)
                                             : cond + " && " + expr_text(*s.cond);
        collect_const_assigns(*s.then_branch, ce, then_cond, out);
        if (s.else_branch) {
            std::string else_cond =
                cond.empty() ? negate_text(*s.cond) : cond + " && " + negate_text(*s.cond);
            collect_const_assigns(*s.else_branch, ce, else_cond, out);
        }
        break;
    }
    case StmtKind::Case:
        // nested case inside an arm: fold the nested subject comparison in
        for (const auto& arm : s.arms) {
            if (!arm.body) continue;
            std::string arm_cond = cond;
            if (!arm.is_default && !arm.labels.empty()) {
                std::string eq = expr_text(*s.subject) + " == " + expr_text(*arm.labels[0]);
                arm_cond = cond.empty() ? eq : cond + " && " + eq;
            }
            collect_const_assigns(*arm.body, ce, arm_cond, out);
        }
        break;
    case StmtKind::Assign: {
        const std::string* tgt = assign_target_name(s);
        if (!tgt || !is_whole_target(s)) break;
        if (auto v = ce.eval(*s.rhs))
            out.push_back({*tgt, *v, cond, s.nonblocking});
        break;
    }
    case StmtKind::Null: break;
    }
}

// all assignments (any RHS) in a statement tree
inline void collect_assign_targets(const Stmt& s, std::vector<const Stmt*>& out) {
    switch (s.kind) {
    case StmtKind::Block:
        for (const auto& child : s.stmts) collect_assign_targets(*child, out);
        break;
    case StmtKind::If:
        collect_assign_targets(*s.then_branch, out);
        if (s.else_branch) collect_assign_targets(*s.else_branch, out);
        break;
    case StmtKind::Case:
        for (const auto& arm : s.arms)
            if (arm.body) collect_assign_targets(*arm.body, out);
        break;
    case StmtKind::Assign: out.push_back(&s); break;
    case StmtKind::Null: break;
    }
}

inline void collect_case_stmts(const Stmt& s, std::vector<const Stmt*>& out) {
    switch (s.kind) {
    case StmtKind::Block:
        for (const auto& child : s.stmts) collect_case_stmts(*child, out);
        break;
    case StmtKind::If:
        collect_case_stmts(*s.then_branch, out);
        if (s.else_branch) collect_case_stmts(*s.else_branch, out);
        break;
    case StmtKind::Case:
        out.push_back(&s);
        for (const auto& arm : s.arms)
            if (arm.body) collect_case_stmts(*arm.body, out);
        break;
    default: break;
    }
}

inline bool is_sequential(const AlwaysBlock& ab) {
    for (const auto& s : ab.sensitivity)
        if (s.edge != SensItem::Edge::Level) return true;
    return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// clock / reset detection
//
// clock: the signal under posedge/negedge in at least one sequential block,
// preferring names equal (case-insensitively) to clk|clock; ties between
// non-preferred candidates are broken by port order with a diagnostic.
// reset: name match on rst|reset|rst_n|resetn, or the non-clock edge signal
// guarded by a top-level if inside a clocked block.

inline bool is_reset_name(const std::string& name) {
    std::string l = lower(name);
    return l == "rst" || l == "reset" || l == "rst_n" || l == "resetn";
}

inline bool is_clock_name(const std::string& name) {
    std::string l = lower(name);
    return l == "clk" || l == "clock";
}

inline void detect_clock_reset(ModuleInfo& m, const ModuleDecl& ast, Diagnostics* diags,
                               const std::string& file = {}) {
    struct EdgeSig {
        std::string name;
        SensItem::Edge edge;
        int line;
    };
    std::vector<EdgeSig> edges;
    bool any_sequential = false;
    for (const auto& ab : ast.always_blocks) {
        if (!detail::is_sequential(ab)) continue;
        any_sequential = true;
        for (const auto& s : ab.sensitivity) {
            if (s.edge == SensItem::Edge::Level) continue;
            bool seen = false;
            for (const auto& e : edges) seen |= e.name == s.signal;
            if (!seen) edges.push_back({s.signal, s.edge, ab.line});
        }
    }
    if (!any_sequential) {
        if (diags)
            diags->push_back({Diagnostic::Level::Info, file, ast.line,
                              "no sequential block; clock and reset left unset"});
        return;
    }

    auto port_order = [&](const std::string& name) {
        for (size_t i = 0; i < m.ports.size(); ++i)
            if (m.ports[i].name == name) return static_cast<int>(i);
        return static_cast<int>(m.ports.size());
    };

    std::vector<EdgeSig> clock_candidates, reset_edges;
    for (const auto& e : edges)
        (is_reset_name(e.name) ? reset_edges : clock_candidates).push_back(e);

    std::stable_sort(clock_candidates.begin(), clock_candidates.end(),
                     [&](const EdgeSig& a, const EdgeSig& b) {
                         return port_order(a.name) < port_order(b.name);
                     });

    if (!clock_candidates.empty()) {
        const EdgeSig* chosen = nullptr;
        for (const auto& c : clock_candidates)
            if (is_clock_name(c.name) && !chosen) chosen = &c;
        if (!chosen) {
            chosen = &clock_candidates[0];
            if (clock_candidates.size() > 1 && diags) {
                std::vector<std::string> names;
                for (const auto& c : clock_candidates) names.push_back(c.name);
                diags->push_back({Diagnostic::Level::Warning, file, chosen->line,
                                  "AmbiguousClock: candidates " + join(names, ", ") +
                                      "; picked '" + chosen->name + "' by port order"});
            }
        }
        m.clock = chosen->name;
    } else if (diags) {
        diags->push_back({Diagnostic::Level::Warning, file, ast.line, "no clock candidate found"});
    }

    // async reset by name
    for (const auto& e : reset_edges) {
        m.reset = ResetInfo{e.name, e.edge == SensItem::Edge::Posedge, true};
        break;
    }
    // sync reset by name: a top-level if in a clocked block testing a
    // reset-named signal
    if (!m.reset) {
        for (const auto& ab : ast.always_blocks) {
            if (!detail::is_sequential(ab) || !ab.body) continue;
            const Stmt* body = ab.body.get();
            if (body->kind == StmtKind::Block && body->stmts.size() == 1)
                body = body->stmts[0].get();
            if (body->kind != StmtKind::If) continue;
            for (const auto& p : ast.port_decls)
                for (const auto& n : p.names)
                    if (is_reset_name(n))
                        if (auto pol = detail::condition_polarity(*body->cond, n)) {
                            m.reset = ResetInfo{n, *pol, false};
                            break;
                        }
            if (m.reset) break;
        }
    }
    // unnamed reset: second edge signal guarded by a top-level if
    if (!m.reset && m.clock) {
        for (const auto& ab : ast.always_blocks) {
            if (!detail::is_sequential(ab) || !ab.body) continue;
            const Stmt* body = ab.body.get();
            if (body->kind == StmtKind::Block && body->stmts.size() == 1)
                body = body->stmts[0].get();
            if (body->kind != StmtKind::If) continue;
            for (const auto& s : ab.sensitivity) {
                if (s.edge == SensItem::Edge::Level || s.signal == *m.clock) continue;
                if (detail::condition_mentions(*body->cond, s.signal)) {
                    auto pol = detail::condition_polarity(*body->cond, s.signal);
                    m.reset = ResetInfo{s.signal,
                                        pol.value_or(s.edge == SensItem::Edge::Posedge), true};
                    break;
                }
            }
            if (m.reset) break;
        }
    }
    if (!m.reset && diags)
        diags->push_back({Diagnostic::Level::Info, file, ast.line, "no reset found"});
}

// ---------------------------------------------------------------------------
// initialization analysis: which registers are assigned under a reset branch

namespace detail {

// returns the reset branch of a sequential block body, if it is guarded by a
// top-level if on the module reset
inline const Stmt* reset_branch(const Stmt& body, const ResetInfo& reset) {
    const Stmt* s = &body;
    if (s->kind == StmtKind::Block && s->stmts.size() == 1) s = s->stmts[0].get();
    if (s->kind != StmtKind::If) return nullptr;
    auto pol = condition_polarity(*s->cond, reset.signal);
    if (!pol) return nullptr;
    // condition true == reset asserted (active high tests signal, active low
    // tests negation)
    bool tests_asserted = (*pol == reset.active_high);
    return tests_asserted ? s->then_branch.get() : s->else_branch.get();
}

}  // namespace detail

inline void analyze_initialization(ModuleInfo& m, const ModuleDecl& ast, const ConstEval& ce) {
    // declaration initializers
    for (const auto& n : ast.nets) {
        if (!n.is_reg) continue;
        for (const auto& [name, init] : n.names) {
            if (!init) continue;
            if (auto* r = const_cast<RegInfo*>(m.find_register(name))) {
                r->initialized_on_reset = true;
                if (auto v = ce.eval(*init))
                    r->reset_value = r->width >= 64 ? *v : (*v & ((1ull << r->width) - 1));
            }
        }
    }
    if (!m.reset) return;
    for (const auto& ab : ast.always_blocks) {
        if (!detail::is_sequential(ab) || !ab.body) continue;
        const Stmt* rb = detail::reset_branch(*ab.body, *m.reset);
        if (!rb) continue;
        std::vector<const Stmt*> assigns;
        detail::collect_assign_targets(*rb, assigns);
        for (const Stmt* a : assigns) {
            const std::string* tgt = detail::assign_target_name(*a);
            if (!tgt) continue;
            if (auto* r = const_cast<RegInfo*>(m.find_register(*tgt))) {
                r->initialized_on_reset = true;
                if (detail::is_whole_target(*a))
                    if (auto v = ce.eval(*a->rhs))
                        r->reset_value = r->width >= 64 ? *v : (*v & ((1ull << r->width) - 1));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// FSM extraction
//
// A register R is a state register iff some case statement switches on R (or
// on a companion next-R register written back into R in a sequential block)
// and at least two case arms assign constant encodings to R/next-R.

inline std::vector<FsmInfo> extract_fsms(const ModuleInfo& m, const ModuleDecl& ast,
                                         Diagnostics* diags = nullptr,
                                         const std::string& file = {}) {
    std::map<std::string, std::uint64_t> env;
    for (const auto& c : m.constants) env[c.name] = c.value;
    ConstEval ce(env);

    // sequential copy links: lhs <= rhs between plain registers
    std::vector<std::pair<std::string, std::string>> seq_copies;
    for (const auto& ab : ast.always_blocks) {
        if (!detail::is_sequential(ab) || !ab.body) continue;
        std::vector<const Stmt*> assigns;
        detail::collect_assign_targets(*ab.body, assigns);
        for (const Stmt* a : assigns) {
            if (!detail::is_whole_target(*a)) continue;
            if (a->rhs->kind == ExprKind::Ident)
                seq_copies.emplace_back(a->target->name, a->rhs->name);
        }
    }

    std::vector<const Stmt*> cases;
    for (const auto& ab : ast.always_blocks)
        if (ab.body) detail::collect_case_stmts(*ab.body, cases);

    std::vector<FsmInfo> out;
    std::set<std::string> claimed;  // state registers already extracted

    for (const Stmt* cs : cases) {
        if (cs->subject->kind != ExprKind::Ident) continue;
        const std::string& subject = cs->subject->name;

        // per-arm constant assignments
        struct ArmInfo {
            std::vector<std::uint64_t> labels;
            bool is_default = false;
            bool label_const = true;
            std::vector<detail::ConstAssign> assigns;
        };
        std::vector<ArmInfo> arms;
        for (const auto& arm : cs->arms) {
            ArmInfo ai;
            ai.is_default = arm.is_default;
            for (const auto& l : arm.labels) {
                if (auto v = ce.eval(*l))
                    ai.labels.push_back(*v);
                else
                    ai.label_const = false;
            }
            if (arm.body) detail::collect_const_assigns(*arm.body, ce, "", ai.assigns);
            arms.push_back(std::move(ai));
        }

        // choose the assignment target T
        std::map<std::string, int> target_arm_count;
        for (const auto& ai : arms) {
            std::set<std::string> seen;
            for (const auto& a : ai.assigns)
                if (seen.insert(a.target).second) ++target_arm_count[a.target];
        }
        std::string T;
        if (target_arm_count.count(subject)) {
            T = subject;
        } else {
            int best = 0;
            for (const auto& [name, count] : target_arm_count)
                if (count > best) {
                    best = count;
                    T = name;
                }
        }
        if (T.empty() || target_arm_count[T] < 2) continue;

        // resolve the state register
        std::string state_reg;
        if (T == subject) {
            if (m.find_register(subject)) {
                state_reg = subject;
            } else {
                // case on next-state: a register copies the subject back
                for (const auto& [lhs, rhs] : seq_copies)
                    if (rhs == subject && m.find_register(lhs)) {
                        state_reg = lhs;
                        break;
                    }
            }
        } else {
            // two-process: subject <= T written in a sequential block
            for (const auto& [lhs, rhs] : seq_copies)
                if (lhs == subject && rhs == T && m.find_register(subject)) {
                    state_reg = subject;
                    break;
                }
        }
        if (state_reg.empty() || claimed.count(state_reg)) continue;

        const RegInfo* reg = m.find_register(state_reg);
        FsmInfo fsm;
        fsm.state_register = state_reg;
        fsm.width = reg->width;
        const std::uint64_t mask =
            fsm.width >= 64 ? ~0ull : ((1ull << fsm.width) - 1);

        auto in_range = [&](std::uint64_t v) { return fsm.width >= 64 || v <= mask; };

        // defined states: named constants used as labels or assigned values
        std::set<std::uint64_t> encodings;
        for (const auto& ai : arms) {
            for (auto v : ai.labels)
                if (in_range(v)) encodings.insert(v);
            for (const auto& a : ai.assigns)
                if (a.target == T && in_range(a.value)) encodings.insert(a.value);
        }
        if (reg->reset_value && in_range(*reg->reset_value)) {
            encodings.insert(*reg->reset_value);
            fsm.reset_state = *reg->reset_value;
        }
        auto label_for = [&](std::uint64_t v) -> std::string {
            for (const auto& c : m.constants)
                if (c.value == v) return c.name;
            return "STATE_" + std::to_string(v);
        };
        for (auto v : encodings) fsm.defined_states.push_back({label_for(v), v});

        // transitions per (arm label, assignment) pair
        std::set<std::uint64_t> labeled;
        for (const auto& ai : arms)
            for (auto v : ai.labels) labeled.insert(v);
        for (const auto& ai : arms) {
            std::vector<std::uint64_t> froms = ai.labels;
            if (ai.is_default) {
                froms.clear();
                for (auto v : encodings)
                    if (!labeled.count(v)) froms.push_back(v);
            }
            for (auto from : froms) {
                if (!in_range(from)) continue;
                for (const auto& a : ai.assigns) {
                    if (a.target != T || !in_range(a.value)) continue;
                    fsm.transitions.push_back({from, a.value, a.condition});
                }
            }
        }
        claimed.insert(state_reg);
        out.push_back(std::move(fsm));
    }

    // diagnose if/else-chain FSM shapes we deliberately do not extract
    for (const auto& ab : ast.always_blocks) {
        if (!ab.body) continue;
        std::vector<const Stmt*> case_here;
        detail::collect_case_stmts(*ab.body, case_here);
        if (!case_here.empty()) continue;
        std::vector<detail::ConstAssign> assigns;
        detail::collect_const_assigns(*ab.body, ConstEval(env), "", assigns);
        std::map<std::string, std::set<std::uint64_t>> values;
        for (const auto& a : assigns)
            if (!a.condition.empty()) values[a.target].insert(a.value);
        for (const auto& [name, vals] : values) {
            if (vals.size() < 2 || claimed.count(name) || !m.find_register(name)) continue;
            bool named = false;
            for (const auto& c : m.constants)
                for (auto v : vals) named |= c.value == v;
            if (named && diags)
                diags->push_back({Diagnostic::Level::Info, file, ab.line,
                                  "register '" + name +
                                      "' looks like an if/else state machine; only "
                                      "case-based FSMs are extracted"});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// module analysis and the parse_design entry point

inline ModuleInfo analyze_module(const ModuleDecl& ast, Diagnostics* diags,
                                 const std::string& file = {}) {
    ModuleInfo m;
    m.name = ast.name;

    // parameters first; ranges and widths may reference them
    std::map<std::string, std::uint64_t> env;
    for (const auto& p : ast.params) {
        ConstEval ce(env);
        auto v = ce.eval(*p.value);
        if (!v) {
            if (diags)
                diags->push_back({Diagnostic::Level::Warning, file, p.line,
                                  "parameter '" + p.name + "' is not constant; ignored"});
            continue;
        }
        int width = 32;
        if (p.range) {
            auto msb = ce.eval(*p.range->msb), lsb = ce.eval(*p.range->lsb);
            if (msb && lsb)
                width = static_cast<int>(*msb > *lsb ? *msb - *lsb : *lsb - *msb) + 1;
        } else if (p.value->kind == ExprKind::Number && p.value->width > 0) {
            width = p.value->width;
        }
        std::uint64_t value = *v;
        if (width < 64 && value >= (1ull << width)) {
            value &= (1ull << width) - 1;
            if (diags)
                diags->push_back({Diagnostic::Level::Warning, file, p.line,
                                  "constant '" + p.name + "' value truncated to " +
                                      std::to_string(width) + " bits"});
        }
        m.constants.push_back({p.name, width, value});
        env[p.name] = value;
    }
    ConstEval ce(env);

    auto range_width = [&](const std::optional<RangeSpec>& r) {
        if (!r) return 1;
        auto msb = ce.eval(*r->msb), lsb = ce.eval(*r->lsb);
        if (!msb || !lsb) return 1;
        return static_cast<int>(*msb > *lsb ? *msb - *lsb : *lsb - *msb) + 1;
    };

    // ports in header order; directions/widths from decls
    for (const auto& name : ast.header_ports) {
        PortInfo p;
        p.name = name;
        bool declared = false;
        for (const auto& d : ast.port_decls)
            for (const auto& n : d.names)
                if (n == name) {
                    p.dir = d.dir == PortDir::Input    ? PortDirection::Input
                            : d.dir == PortDir::Output ? PortDirection::Output
                                                       : PortDirection::Inout;
                    p.width = range_width(d.range);
                    declared = true;
                }
        if (!declared && diags)
            diags->push_back({Diagnostic::Level::Warning, file, ast.line,
                              "port '" + name + "' has no direction declaration"});
        bool dup = false;
        for (const auto& existing : m.ports) dup |= existing.name == name;
        if (dup) {
            if (diags)
                diags->push_back({Diagnostic::Level::Warning, file, ast.line,
                                  "duplicate port '" + name + "' ignored"});
            continue;
        }
        m.ports.push_back(std::move(p));
    }

    // registers: reg decls and `output reg` ports
    for (const auto& n : ast.nets) {
        int width = range_width(n.range);
        for (const auto& entry : n.names) {
            if (n.is_reg)
                m.registers.push_back({entry.first, width, false, std::nullopt});
            else
                m.wires.push_back(entry.first);
        }
    }
    for (const auto& d : ast.port_decls)
        if (d.is_reg)
            for (const auto& name : d.names)
                if (!m.find_register(name))
                    m.registers.push_back({name, range_width(d.range), false, std::nullopt});

    detect_clock_reset(m, ast, diags, file);
    analyze_initialization(m, ast, ce);
    m.fsms = extract_fsms(m, ast, diags, file);
    return m;
}

inline DesignModel parse_design(std::string_view source,
                                const std::optional<std::string>& top_hint = std::nullopt,
                                Diagnostics* diags = nullptr,
                                const std::string& file = "<input>") {
    Parser parser(source, file);
    SourceUnit unit = parser.parse();
    if (diags)
        diags->insert(diags->end(), parser.diagnostics().begin(), parser.diagnostics().end());

    DesignModel model;
    model.source_path = file;
    model.source_text = std::string(source);
    std::set<std::string> names;
    for (const auto& mod : unit.modules) {
        if (!names.insert(mod.name).second)
            throw ParseError(mod.line, 1, mod.name, "duplicate module name");
        model.modules.push_back(analyze_module(mod, diags, file));
    }

    if (top_hint) {
        bool found = false;
        for (const auto& m : model.modules) found |= m.name == *top_hint;
        if (!found) throw TopModuleNotFound(*top_hint);
        model.top_module = *top_hint;
    } else {
        // top = first module never instantiated by another
        std::set<std::string> instantiated;
        for (const auto& mod : unit.modules)
            for (const auto& inst : mod.instances) instantiated.insert(inst.module_name);
        for (const auto& m : model.modules)
            if (!instantiated.count(m.name)) {
                model.top_module = m.name;
                break;
            }
        if (model.top_module.empty()) model.top_module = model.modules.front().name;
    }
    return model;
}

}  // namespace svagen::rtl
