// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "svagen/rtl/ast.hpp"
#include "svagen/rtl/lexer.hpp"

namespace svagen::rtl {

struct ParseError : Error {
    int line, col;
    std::string token;
    ParseError(int line_, int col_, const std::string& tok, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " +
                msg + (tok.empty() ? "" : " (got '" + tok + "')")),
          line(line_),
          col(col_),
          token(tok) {}
};

// Recursive-descent parser for the supported subset: module decls, ANSI and
// non-ANSI port lists, wire/reg decls, parameter/localparam, always blocks
// with edge or star sensitivity, if/else, case/endcase, blocking and
// nonblocking assignments, continuous assigns, module instances.
// Unsupported constructs inside a module body are skipped with a diagnostic.
class Parser {
public:
    Parser(std::string_view source, std::string file = {})
        : file_(std::move(file)) {
        Lexer lex(source, file_);
        toks_ = lex.run(&diags_);
    }

    SourceUnit parse() {
        SourceUnit unit;
        if (peek().kind == Tok::Eof) fail("expected 'module'");
        while (peek().kind != Tok::Eof) {
            if (!is_kw("module")) fail("expected 'module'");
            unit.modules.push_back(parse_module());
        }
        return unit;
    }

    const Diagnostics& diagnostics() const { return diags_; }

private:
    std::vector<Token> toks_;
    size_t idx_ = 0;
    std::string file_;
    Diagnostics diags_;

    static const std::set<std::string>& keywords() {
        static const std::set<std::string> kw = {
            "module", "endmodule", "input",  "output",     "inout",  "wire",
            "reg",    "integer",   "parameter", "localparam", "assign", "always",
            "begin",  "end",       "if",     "else",       "case",   "casez",
            "casex",  "endcase",   "default", "posedge",    "negedge", "or",
            "initial", "function", "endfunction", "task", "endtask", "generate",
            "endgenerate", "for", "while", "forever",
        };
        return kw;
    }

    const Token& peek(size_t ahead = 0) const {
        size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& advance() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

    bool is_kw(const std::string& kw, size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Identifier && t.text == kw;
    }
    bool is_punct(const std::string& p, size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Punct && t.text == p;
    }
    bool accept_kw(const std::string& kw) {
        if (is_kw(kw)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_punct(const std::string& p) {
        if (is_punct(p)) {
            advance();
            return true;
        }
        return false;
    }
    void expect_kw(const std::string& kw) {
        if (!accept_kw(kw)) fail("expected '" + kw + "'");
    }
    void expect_punct(const std::string& p) {
        if (!accept_punct(p)) fail("expected '" + p + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, t.kind == Tok::Eof ? "<eof>" : t.text, msg);
    }

    std::string expect_ident() {
        const Token& t = peek();
        if (t.kind != Tok::Identifier || keywords().count(t.text)) fail("expected identifier");
        return advance().text;
    }

    void diag_skip(int line, const std::string& what) {
        diags_.push_back({Diagnostic::Level::Warning, file_, line,
                          "skipped unsupported construct '" + what + "'"});
    }

    // -- module ------------------------------------------------------------

    ModuleDecl parse_module() {
        ModuleDecl m;
        m.line = peek().line;
        expect_kw("module");
        m.name = expect_ident();
        if (accept_punct("#")) skip_parenthesized();  // parameter override list
        if (accept_punct("(")) {
            if (!is_punct(")")) parse_port_list(m);
            expect_punct(")");
        }
        expect_punct(";");
        while (!is_kw("endmodule")) {
            if (peek().kind == Tok::Eof) fail("expected 'endmodule'");
            parse_module_item(m);
        }
        expect_kw("endmodule");
        return m;
    }

    // Header list: plain names (non-ANSI) or ANSI decls.
    void parse_port_list(ModuleDecl& m) {
        PortDecl current;
        bool ansi_seen = false;
        for (;;) {
            if (is_kw("input") || is_kw("output") || is_kw("inout")) {
                if (ansi_seen && !current.names.empty()) m.port_decls.push_back(std::move(current));
                current = PortDecl{};
                current.line = peek().line;
                ansi_seen = true;
                current.dir = accept_kw("input")    ? PortDir::Input
                              : accept_kw("output") ? PortDir::Output
                                                    : (expect_kw("inout"), PortDir::Inout);
                current.is_reg = accept_kw("reg");
                accept_kw("wire");
                if (is_punct("[")) current.range = parse_range();
            }
            std::string name = expect_ident();
            m.header_ports.push_back(name);
            if (ansi_seen) current.names.push_back(name);
            if (!accept_punct(",")) break;
        }
        if (ansi_seen && !current.names.empty()) m.port_decls.push_back(std::move(current));
    }

    RangeSpec parse_range() {
        expect_punct("[");
        RangeSpec r;
        r.msb = parse_expr();
        expect_punct(":");
        r.lsb = parse_expr();
        expect_punct("]");
        return r;
    }

    void parse_module_item(ModuleDecl& m) {
        int line = peek().line;
        if (is_kw("input") || is_kw("output") || is_kw("inout")) {
            PortDecl p;
            p.line = line;
            p.dir = accept_kw("input")    ? PortDir::Input
                    : accept_kw("output") ? PortDir::Output
                                          : (expect_kw("inout"), PortDir::Inout);
            p.is_reg = accept_kw("reg");
            accept_kw("wire");
            if (is_punct("[")) p.range = parse_range();
            p.names.push_back(expect_ident());
            while (accept_punct(",")) p.names.push_back(expect_ident());
            expect_punct(";");
            m.port_decls.push_back(std::move(p));
            return;
        }
        if (is_kw("wire") || is_kw("reg") || is_kw("integer")) {
            NetDecl n;
            n.line = line;
            n.is_reg = !is_kw("wire");
            advance();
            if (is_punct("[")) n.range = parse_range();
            for (;;) {
                std::string name = expect_ident();
                ExprPtr init;
                if (is_punct("[")) {
                    // memory declaration; record name, skip the dimension
                    diag_skip(line, "memory dimension");
                    skip_bracketed();
                }
                if (accept_punct("=")) init = parse_expr();
                n.names.emplace_back(std::move(name), std::move(init));
                if (!accept_punct(",")) break;
            }
            expect_punct(";");
            m.nets.push_back(std::move(n));
            return;
        }
        if (is_kw("parameter") || is_kw("localparam")) {
            bool local = is_kw("localparam");
            advance();
            std::optional<RangeSpec> range;
            if (is_punct("[")) range = parse_range();
            for (;;) {
                ParamDecl p;
                p.line = line;
                p.is_local = local;
                if (range) {
                    p.range.emplace();
                    p.range->msb = clone_expr(*range->msb);
                    p.range->lsb = clone_expr(*range->lsb);
                }
                p.name = expect_ident();
                expect_punct("=");
                p.value = parse_expr();
                m.params.push_back(std::move(p));
                if (!accept_punct(",")) break;
            }
            expect_punct(";");
            return;
        }
        if (is_kw("assign")) {
            advance();
            ContAssign a;
            a.line = line;
            a.target = parse_primary();
            expect_punct("=");
            a.rhs = parse_expr();
            expect_punct(";");
            m.assigns.push_back(std::move(a));
            return;
        }
        if (is_kw("always")) {
            advance();
            AlwaysBlock ab;
            ab.line = line;
            expect_punct("@");
            if (accept_punct("*")) {
                ab.star = true;
            } else {
                expect_punct("(");
                if (accept_punct("*")) {
                    ab.star = true;
                } else {
                    for (;;) {
                        SensItem s;
                        if (accept_kw("posedge"))
                            s.edge = SensItem::Edge::Posedge;
                        else if (accept_kw("negedge"))
                            s.edge = SensItem::Edge::Negedge;
                        s.signal = expect_ident();
                        ab.sensitivity.push_back(std::move(s));
                        if (!accept_kw("or") && !accept_punct(",")) break;
                    }
                }
                expect_punct(")");
            }
            ab.body = parse_stmt();
            m.always_blocks.push_back(std::move(ab));
            return;
        }
        if (is_kw("initial") || is_kw("function") || is_kw("task") || is_kw("generate")) {
            std::string kw = peek().text;
            diag_skip(line, kw);
            if (kw == "initial") {
                advance();
                skip_stmt_tokens();
            } else {
                skip_until_kw("end" + kw);
            }
            return;
        }
        // module instance: ident ident ( ... ) ;
        if (peek().kind == Tok::Identifier && !keywords().count(peek().text)) {
            Instance inst;
            inst.line = line;
            inst.module_name = expect_ident();
            if (accept_punct("#")) skip_parenthesized();
            inst.instance_name = expect_ident();
            expect_punct("(");
            if (!is_punct(")")) {
                for (;;) {
                    if (accept_punct(".")) {
                        std::string port = expect_ident();
                        expect_punct("(");
                        ExprPtr e;
                        if (!is_punct(")")) e = parse_expr();
                        expect_punct(")");
                        inst.connections.emplace_back(std::move(port), std::move(e));
                    } else {
                        inst.connections.emplace_back("", parse_expr());
                    }
                    if (!accept_punct(",")) break;
                }
            }
            expect_punct(")");
            expect_punct(";");
            m.instances.push_back(std::move(inst));
            return;
        }
        fail("expected module item");
    }

    void skip_parenthesized() {
        expect_punct("(");
        int depth = 1;
        while (depth > 0) {
            if (peek().kind == Tok::Eof) fail("unbalanced '('");
            if (is_punct("(")) ++depth;
            if (is_punct(")")) --depth;
            advance();
        }
    }
    void skip_bracketed() {
        expect_punct("[");
        int depth = 1;
        while (depth > 0) {
            if (peek().kind == Tok::Eof) fail("unbalanced '['");
            if (is_punct("[")) ++depth;
            if (is_punct("]")) --depth;
            advance();
        }
    }
    void skip_until_kw(const std::string& kw) {
        advance();
        while (!is_kw(kw)) {
            if (peek().kind == Tok::Eof) fail("expected '" + kw + "'");
            advance();
        }
        advance();
    }
    // skip one statement-shaped region: balanced begin/end or up to ';'
    void skip_stmt_tokens() {
        if (is_kw("begin")) {
            int depth = 0;
            do {
                if (peek().kind == Tok::Eof) fail("expected 'end'");
                if (is_kw("begin")) ++depth;
                if (is_kw("end")) --depth;
                advance();
            } while (depth > 0);
        } else {
            while (!is_punct(";")) {
                if (peek().kind == Tok::Eof) fail("expected ';'");
                advance();
            }
            advance();
        }
    }

    // -- statements ----------------------------------------------------------

    StmtPtr parse_stmt() {
        auto s = std::make_unique<Stmt>();
        s->line = peek().line;
        if (accept_punct(";")) {
            s->kind = StmtKind::Null;
            return s;
        }
        if (is_kw("for") || is_kw("while") || is_kw("forever")) {
            diag_skip(s->line, peek().text);
            advance();
            if (is_punct("(")) skip_parenthesized();
            skip_stmt_tokens();
            s->kind = StmtKind::Null;
            return s;
        }
        if (accept_kw("begin")) {
            s->kind = StmtKind::Block;
            if (accept_punct(":")) expect_ident();  // named block
            while (!is_kw("end")) {
                if (peek().kind == Tok::Eof) fail("expected 'end'");
                s->stmts.push_back(parse_stmt());
            }
            expect_kw("end");
            return s;
        }
        if (accept_kw("if")) {
            s->kind = StmtKind::If;
            expect_punct("(");
            s->cond = parse_expr();
            expect_punct(")");
            s->then_branch = parse_stmt();
            if (accept_kw("else")) s->else_branch = parse_stmt();
            return s;
        }
        if (is_kw("case") || is_kw("casez") || is_kw("casex")) {
            advance();
            s->kind = StmtKind::Case;
            expect_punct("(");
            s->subject = parse_expr();
            expect_punct(")");
            while (!is_kw("endcase")) {
                if (peek().kind == Tok::Eof) fail("expected 'endcase'");
                CaseArm arm;
                arm.line = peek().line;
                if (accept_kw("default")) {
                    arm.is_default = true;
                    accept_punct(":");
                } else {
                    arm.labels.push_back(parse_expr());
                    while (accept_punct(",")) arm.labels.push_back(parse_expr());
                    expect_punct(":");
                }
                if (!is_kw("endcase")) arm.body = parse_stmt();
                s->arms.push_back(std::move(arm));
            }
            expect_kw("endcase");
            return s;
        }
        // assignment
        s->kind = StmtKind::Assign;
        s->target = parse_primary();
        if (accept_punct("<=")) {
            s->nonblocking = true;
        } else {
            expect_punct("=");
        }
        s->rhs = parse_expr();
        expect_punct(";");
        return s;
    }

    // -- expressions ---------------------------------------------------------
    // precedence climbing; `?:` lowest

    static int prec(const std::string& op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "|") return 3;
        if (op == "^") return 4;
        if (op == "&") return 5;
        if (op == "==" || op == "!=" || op == "===" || op == "!==") return 6;
        if (op == "<" || op == "<=" || op == ">" || op == ">=") return 7;
        if (op == "<<" || op == ">>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        return -1;
    }

    ExprPtr parse_expr() { return parse_ternary(); }

    ExprPtr parse_ternary() {
        ExprPtr cond = parse_binary(1);
        if (!accept_punct("?")) return cond;
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::Ternary;
        e->line = cond->line;
        e->a = std::move(cond);
        e->b = parse_expr();
        expect_punct(":");
        e->c = parse_expr();
        return e;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (peek().kind != Tok::Punct) return lhs;
            int p = prec(peek().text);
            if (p < min_prec) return lhs;
            std::string op = advance().text;
            ExprPtr rhs = parse_binary(p + 1);
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Binary;
            e->op = std::move(op);
            e->line = lhs->line;
            e->a = std::move(lhs);
            e->b = std::move(rhs);
            lhs = std::move(e);
        }
    }

    ExprPtr parse_unary() {
        if (peek().kind == Tok::Punct) {
            const std::string& t = peek().text;
            if (t == "!" || t == "~" || t == "-" || t == "+" || t == "&" || t == "|" || t == "^") {
                auto e = std::make_unique<Expr>();
                e->kind = ExprKind::Unary;
                e->line = peek().line;
                e->op = advance().text;
                e->a = parse_unary();
                return e;
            }
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        if (t.kind == Tok::Number || t.kind == Tok::SizedNumber) {
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Number;
            e->line = t.line;
            e->value = t.value;
            e->width = t.width;
            e->base = t.base;
            e->has_xz = t.has_xz;
            e->literal = t.text;
            advance();
            return postfix(std::move(e));
        }
        if (t.kind == Tok::Identifier && !keywords().count(t.text)) {
            auto e = Expr::ident(advance().text, t.line);
            return postfix(std::move(e));
        }
        if (accept_punct("(")) {
            ExprPtr e = parse_expr();
            expect_punct(")");
            return postfix(std::move(e));
        }
        if (accept_punct("{")) {
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Concat;
            e->line = t.line;
            e->parts.push_back(parse_expr());
            while (accept_punct(",")) e->parts.push_back(parse_expr());
            expect_punct("}");
            return e;
        }
        fail("expected expression");
    }

    ExprPtr postfix(ExprPtr base) {
        while (is_punct("[")) {
            advance();
            auto e = std::make_unique<Expr>();
            e->kind = ExprKind::Select;
            e->line = base->line;
            e->sel_base = std::move(base);
            e->sel_msb = parse_expr();
            if (accept_punct(":")) e->sel_lsb = parse_expr();
            expect_punct("]");
            base = std::move(e);
        }
        return base;
    }

    static ExprPtr clone_expr(const Expr& e) {
        auto out = std::make_unique<Expr>();
        out->kind = e.kind;
        out->line = e.line;
        out->value = e.value;
        out->width = e.width;
        out->base = e.base;
        out->has_xz = e.has_xz;
        out->literal = e.literal;
        out->name = e.name;
        out->op = e.op;
        if (e.a) out->a = clone_expr(*e.a);
        if (e.b) out->b = clone_expr(*e.b);
        if (e.c) out->c = clone_expr(*e.c);
        if (e.sel_base) out->sel_base = clone_expr(*e.sel_base);
        if (e.sel_msb) out->sel_msb = clone_expr(*e.sel_msb);
        if (e.sel_lsb) out->sel_lsb = clone_expr(*e.sel_lsb);
        for (const auto& p : e.parts) out->parts.push_back(clone_expr(*p));
        return out;
    }
};

}  // namespace svagen::rtl
