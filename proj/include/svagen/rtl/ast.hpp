// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "svagen/common.hpp"

namespace svagen::rtl {

// AST for the supported Verilog-2001 subset. One node struct per syntactic
// class, yosys-style, with a kind tag.

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class ExprKind { Number, Ident, Unary, Binary, Ternary, Select, Concat };

struct Expr {
    ExprKind kind;
    int line = 0;

    // Number
    std::uint64_t value = 0;
    int width = 0;       // 0 = bare decimal
    char base = 0;       // 'b''d''h''o' when sized
    bool has_xz = false;
    std::string literal;  // original spelling for sized numbers

    // Ident
    std::string name;

    // Unary / Binary / Ternary
    std::string op;
    ExprPtr a, b, c;

    // Select: a[msb] or a[msb:lsb]
    ExprPtr sel_base, sel_msb, sel_lsb;

    // Concat
    std::vector<ExprPtr> parts;

    static ExprPtr number(std::uint64_t v, int line) {
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Number;
        e->value = v;
        e->line = line;
        return e;
    }
    static ExprPtr ident(std::string n, int line) {
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Ident;
        e->name = std::move(n);
        e->line = line;
        return e;
    }
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

enum class StmtKind { Block, If, Case, Assign, Null };

struct CaseArm {
    std::vector<ExprPtr> labels;  // empty + is_default for `default:`
    bool is_default = false;
    StmtPtr body;  // may be null (empty arm)
    int line = 0;
};

struct Stmt {
    StmtKind kind;
    int line = 0;

    std::vector<StmtPtr> stmts;  // Block

    ExprPtr cond;  // If
    StmtPtr then_branch, else_branch;

    ExprPtr subject;  // Case
    std::vector<CaseArm> arms;

    bool nonblocking = false;  // Assign
    ExprPtr target, rhs;
};

struct RangeSpec {
    ExprPtr msb, lsb;
};

enum class PortDir { Input, Output, Inout };

struct PortDecl {
    PortDir dir = PortDir::Input;
    bool is_reg = false;
    std::optional<RangeSpec> range;
    std::vector<std::string> names;
    int line = 0;
};

struct NetDecl {
    bool is_reg = false;  // false = wire
    std::optional<RangeSpec> range;
    std::vector<std::pair<std::string, ExprPtr>> names;  // name, optional initializer
    int line = 0;
};

struct ParamDecl {
    bool is_local = false;
    std::optional<RangeSpec> range;
    std::string name;
    ExprPtr value;
    int line = 0;
};

struct SensItem {
    enum class Edge { Posedge, Negedge, Level } edge = Edge::Level;
    std::string signal;
};

struct AlwaysBlock {
    bool star = false;  // @* or @(*)
    std::vector<SensItem> sensitivity;
    StmtPtr body;
    int line = 0;
};

struct ContAssign {
    ExprPtr target, rhs;
    int line = 0;
};

struct Instance {
    std::string module_name;
    std::string instance_name;
    std::vector<std::pair<std::string, ExprPtr>> connections;  // ".name(expr)"; positional = empty name
    int line = 0;
};

struct ModuleDecl {
    std::string name;
    std::vector<std::string> header_ports;  // order as written
    std::vector<PortDecl> port_decls;       // ANSI header decls + body input/output decls
    std::vector<NetDecl> nets;
    std::vector<ParamDecl> params;
    std::vector<AlwaysBlock> always_blocks;
    std::vector<ContAssign> assigns;
    std::vector<Instance> instances;
    int line = 0;
};

struct SourceUnit {
    std::vector<ModuleDecl> modules;
};

// ---------------------------------------------------------------------------
// Printer. Canonical 2-space indented form; parse(print(ast)) is structurally
// equal to ast, which the test suite checks via print-fixpoint.

class AstPrinter {
public:
    std::string print(const SourceUnit& unit) {
        out_.clear();
        for (const auto& m : unit.modules) print_module(m);
        return out_;
    }

    std::string print(const Expr& e) {
        out_.clear();
        expr(e);
        return out_;
    }

private:
    std::string out_;
    int indent_ = 0;

    void nl() {
        out_ += '\n';
        out_.append(static_cast<size_t>(indent_) * 2, ' ');
    }

    void print_module(const ModuleDecl& m) {
        out_ += "module " + m.name + "(" + join(m.header_ports, ", ") + ");";
        indent_ = 1;
        for (const auto& p : m.port_decls) {
            nl();
            out_ += p.dir == PortDir::Input ? "input" : p.dir == PortDir::Output ? "output" : "inout";
            if (p.is_reg) out_ += " reg";
            range(p.range);
            out_ += " " + join(p.names, ", ") + ";";
        }
        for (const auto& p : m.params) {
            nl();
            out_ += p.is_local ? "localparam" : "parameter";
            range(p.range);
            out_ += " " + p.name + " = ";
            expr(*p.value);
            out_ += ";";
        }
        for (const auto& n : m.nets) {
            nl();
            out_ += n.is_reg ? "reg" : "wire";
            range(n.range);
            out_ += " ";
            for (size_t i = 0; i < n.names.size(); ++i) {
                if (i) out_ += ", ";
                out_ += n.names[i].first;
                if (n.names[i].second) {
                    out_ += " = ";
                    expr(*n.names[i].second);
                }
            }
            out_ += ";";
        }
        for (const auto& a : m.assigns) {
            nl();
            out_ += "assign ";
            expr(*a.target);
            out_ += " = ";
            expr(*a.rhs);
            out_ += ";";
        }
        for (const auto& inst : m.instances) {
            nl();
            out_ += inst.module_name + " " + inst.instance_name + "(";
            for (size_t i = 0; i < inst.connections.size(); ++i) {
                if (i) out_ += ", ";
                const auto& [port, e] = inst.connections[i];
                if (!port.empty()) {
                    out_ += "." + port + "(";
                    if (e) expr(*e);
                    out_ += ")";
                } else if (e) {
                    expr(*e);
                }
            }
            out_ += ");";
        }
        for (const auto& ab : m.always_blocks) {
            nl();
            out_ += "always @(";
            if (ab.star) {
                out_ += "*";
            } else {
                for (size_t i = 0; i < ab.sensitivity.size(); ++i) {
                    if (i) out_ += " or ";
                    const auto& s = ab.sensitivity[i];
                    if (s.edge == SensItem::Edge::Posedge) out_ += "posedge ";
                    if (s.edge == SensItem::Edge::Negedge) out_ += "negedge ";
                    out_ += s.signal;
                }
            }
            out_ += ")";
            stmt(*ab.body);
        }
        indent_ = 0;
        nl();
        out_ += "endmodule";
        nl();
    }

    void range(const std::optional<RangeSpec>& r) {
        if (!r) return;
        out_ += " [";
        expr(*r->msb);
        out_ += ":";
        expr(*r->lsb);
        out_ += "]";
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
        case StmtKind::Block: {
            out_ += " begin";
            ++indent_;
            for (const auto& child : s.stmts) {
                nl_stmt(*child);
            }
            --indent_;
            nl();
            out_ += "end";
            break;
        }
        case StmtKind::If: {
            out_ += " if (";
            expr(*s.cond);
            out_ += ")";
            stmt(*s.then_branch);
            if (s.else_branch) {
                nl();
                out_ += "else";
                stmt(*s.else_branch);
            }
            break;
        }
        case StmtKind::Case: {
            out_ += " case (";
            expr(*s.subject);
            out_ += ")";
            ++indent_;
            for (const auto& arm : s.arms) {
                nl();
                if (arm.is_default) {
                    out_ += "default:";
                } else {
                    for (size_t i = 0; i < arm.labels.size(); ++i) {
                        if (i) out_ += ", ";
                        expr(*arm.labels[i]);
                    }
                    out_ += ":";
                }
                if (arm.body)
                    stmt(*arm.body);
                else
                    out_ += " ;";
            }
            --indent_;
            nl();
            out_ += "endcase";
            break;
        }
        case StmtKind::Assign: {
            out_ += " ";
            expr(*s.target);
            out_ += s.nonblocking ? " <= " : " = ";
            expr(*s.rhs);
            out_ += ";";
            break;
        }
        case StmtKind::Null: out_ += " ;"; break;
        }
    }

    // statement on its own line (inside begin/end)
    void nl_stmt(const Stmt& s) {
        nl();
        // stmt() emits a leading space for the inline case; strip it here
        size_t mark = out_.size();
        stmt(s);
        if (out_.size() > mark && out_[mark] == ' ') out_.erase(mark, 1);
    }

    void expr(const Expr& e) {
        switch (e.kind) {
        case ExprKind::Number:
            if (e.width > 0 || e.base) {
                out_ += e.literal;
            } else {
                out_ += std::to_string(e.value);
            }
            break;
        case ExprKind::Ident: out_ += e.name; break;
        case ExprKind::Unary:
            out_ += e.op;
            paren_expr(*e.a);
            break;
        case ExprKind::Binary:
            paren_expr(*e.a);
            out_ += " " + e.op + " ";
            paren_expr(*e.b);
            break;
        case ExprKind::Ternary:
            paren_expr(*e.a);
            out_ += " ? ";
            paren_expr(*e.b);
            out_ += " : ";
            paren_expr(*e.c);
            break;
        case ExprKind::Select:
            expr(*e.sel_base);
            out_ += "[";
            expr(*e.sel_msb);
            if (e.sel_lsb) {
                out_ += ":";
                expr(*e.sel_lsb);
            }
            out_ += "]";
            break;
        case ExprKind::Concat:
            out_ += "{";
            for (size_t i = 0; i < e.parts.size(); ++i) {
                if (i) out_ += ", ";
                expr(*e.parts[i]);
            }
            out_ += "}";
            break;
        }
    }

    // compound subexpressions always parenthesized; keeps the printer
    // precedence-free and round-trip stable
    void paren_expr(const Expr& e) {
        bool atom = e.kind == ExprKind::Number || e.kind == ExprKind::Ident ||
                    e.kind == ExprKind::Select || e.kind == ExprKind::Concat ||
                    e.kind == ExprKind::Unary;
        if (atom) {
            expr(e);
        } else {
            out_ += "(";
            expr(e);
            out_ += ")";
        }
    }
};

// Renders an expression as condition text for transition tables and
// diagnostics ("in", "!in", "a && b").
inline std::string expr_text(const Expr& e) {
    AstPrinter p;
    return p.print(e);
}

inline std::string negate_text(const Expr& e) {
    if (e.kind == ExprKind::Ident) return "!" + e.name;
    if (e.kind == ExprKind::Unary && e.op == "!") return expr_text(*e.a);
    return "!(" + expr_text(e) + ")";
}

}  // namespace svagen::rtl
