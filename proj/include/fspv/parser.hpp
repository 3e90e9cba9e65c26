#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fspv/ast.hpp"
#include "fspv/eval.hpp"
#include "fspv/label.hpp"
#include "fspv/lexer.hpp"

namespace fspv {

// ---------------------------------------------------------------------------
// Recursive-descent parser for FSP-lite.
//
//   spec       := item*
//   item       := 'const' UpperName '=' expr
//               | 'range' UpperName '=' expr '..' expr
//               | ['property'] localDef (',' localDef)* '.'
//               | '||' UpperName '=' '(' component ('||' component)* ')'
//                 ['/' '{' relabel (',' relabel)* '}'] '.'
//               | 'progress' UpperName '=' '{' labelLit (',' labelLit)* '}' '.'
//   localDef   := UpperName ('[' var ':' rangeRef ']')* '=' procExpr
//   procExpr   := 'STOP' | 'END' | 'ERROR' | reference | '(' choice ')'
//   choice     := alt ('|' alt)*          alt := 'END' | branch
//   branch     := ['when' '(' expr ')'] actionElem ('->' actionElem)* '->' procExpr
//   actionElem := actionPat | '{' actionPat (',' actionPat)* '}'
//   actionPat  := word ('.' word | '[' (var ':' rangeRef | expr) ']')*
//   component  := [word ('[' expr ['..' expr] ']')? ':'] UpperName
//
// Expressions are a single precedence-climbing grammar shared by guards and
// indices; `|`/`||` only mean boolean OR inside a `when (...)` guard, which
// the parser enters explicitly, so the lexeme needs no lexer-level context.
// Constant declarations and all range-like bounds (range decls, parameter
// ranges, replication bounds, relabel/progress label indices) are evaluated
// against previously declared constants at parse time.
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Spec parse() {
        Spec spec;
        while (!peek().is(TokenKind::EndOfInput)) {
            parse_item(spec);
        }
        validate(spec);
        return spec;
    }

private:
    // --- token plumbing ---

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool match(TokenKind kind) {
        if (peek().is(kind)) {
            advance();
            return true;
        }
        return false;
    }
    const Token& expect(TokenKind kind, const char* what) {
        if (!peek().is(kind)) syntax_error(what);
        return advance();
    }
    [[noreturn]] void syntax_error(const std::string& expected) const {
        const Token& t = peek();
        fail(ErrorCode::SyntaxError,
             "expected " + expected + ", found " + token_kind_name(t.kind) +
                 (t.text.empty() ? "" : " '" + t.text + "'"),
             t.pos);
    }

    // --- items ---

    void parse_item(Spec& spec) {
        switch (peek().kind) {
            case TokenKind::KwConst: {
                advance();
                const Token& name = expect(TokenKind::UpperIdentifier, "constant name");
                expect(TokenKind::Assign, "'='");
                ExprPtr value = parse_int_expr();
                spec.constants.emplace_back(name.text, eval_int(*value, Env{}, spec));
                return;
            }
            case TokenKind::KwRange: {
                advance();
                const Token& name = expect(TokenKind::UpperIdentifier, "range name");
                expect(TokenKind::Assign, "'='");
                ExprPtr lo = parse_int_expr();
                expect(TokenKind::DotDot, "'..'");
                ExprPtr hi = parse_int_expr();
                RangeDef def{name.text, eval_int(*lo, Env{}, spec), eval_int(*hi, Env{}, spec),
                             name.pos};
                if (def.lo > def.hi) {
                    fail(ErrorCode::SyntaxError,
                         "range '" + def.name + "' has lo > hi", name.pos);
                }
                spec.ranges.push_back(std::move(def));
                return;
            }
            case TokenKind::KwProgress: {
                advance();
                const Token& name = expect(TokenKind::UpperIdentifier, "progress name");
                expect(TokenKind::Assign, "'='");
                expect(TokenKind::LBrace, "'{'");
                ProgressDef def{name.text, {}, name.pos};
                do {
                    def.labels.push_back(parse_label_literal(spec).text());
                } while (match(TokenKind::Comma));
                expect(TokenKind::RBrace, "'}'");
                expect(TokenKind::Dot, "'.' terminating the definition");
                spec.progress_defs.push_back(std::move(def));
                return;
            }
            case TokenKind::KwProperty: {
                advance();
                ProcessDef def = parse_process_def(spec);
                spec.property_names.insert(def.name());
                spec.process_defs.push_back(std::move(def));
                return;
            }
            case TokenKind::UpperIdentifier: {
                spec.process_defs.push_back(parse_process_def(spec));
                return;
            }
            case TokenKind::PipePipe: {
                spec.composite_defs.push_back(parse_composite_def(spec));
                return;
            }
            default:
                syntax_error("a definition ('const', 'range', 'property', 'progress', '||' or a process name)");
        }
    }

    ProcessDef parse_process_def(const Spec& spec) {
        ProcessDef def;
        def.pos = peek().pos;
        do {
            def.locals.push_back(parse_local_def(spec));
        } while (match(TokenKind::Comma));
        expect(TokenKind::Dot, "'.' terminating the definition");
        return def;
    }

    LocalDef parse_local_def(const Spec& spec) {
        LocalDef local;
        const Token& name = expect(TokenKind::UpperIdentifier, "process name");
        local.name = name.text;
        local.pos = name.pos;
        while (peek().is(TokenKind::LBracket)) {
            advance();
            const Token& var = expect(TokenKind::Identifier, "parameter variable");
            expect(TokenKind::Colon, "':'");
            RangeRef range = parse_range_ref(spec);
            expect(TokenKind::RBracket, "']'");
            local.params.push_back(Param{var.text, std::move(range)});
        }
        expect(TokenKind::Assign, "'='");
        local.body = parse_proc_expr(spec);
        return local;
    }

    RangeRef parse_range_ref(const Spec& spec) {
        // Named range, or inline bounds evaluated against the constants.
        if (peek().is(TokenKind::UpperIdentifier) && peek(1).is(TokenKind::RBracket) &&
            spec.find_range(peek().text)) {
            RangeRef r;
            r.name = advance().text;
            return r;
        }
        const SourcePos at = peek().pos;
        ExprPtr lo = parse_int_expr();
        expect(TokenKind::DotDot, "'..'");
        ExprPtr hi = parse_int_expr();
        RangeRef r;
        r.lo = eval_int(*lo, Env{}, spec);
        r.hi = eval_int(*hi, Env{}, spec);
        if (r.lo > r.hi) {
            fail(ErrorCode::SyntaxError, "range bounds have lo > hi", at);
        }
        return r;
    }

    ProcExprPtr parse_proc_expr(const Spec& spec) {
        auto node = std::make_shared<ProcExpr>();
        node->pos = peek().pos;
        switch (peek().kind) {
            case TokenKind::KwStop:
                advance();
                node->kind = ProcExpr::Kind::Stop;
                return node;
            case TokenKind::KwEnd:
                advance();
                node->kind = ProcExpr::Kind::End;
                return node;
            case TokenKind::KwError:
                advance();
                node->kind = ProcExpr::Kind::Error;
                return node;
            case TokenKind::UpperIdentifier: {
                node->kind = ProcExpr::Kind::Reference;
                node->ref_name = advance().text;
                while (match(TokenKind::LBracket)) {
                    node->ref_args.push_back(parse_int_expr());
                    expect(TokenKind::RBracket, "']'");
                }
                return node;
            }
            case TokenKind::LParen: {
                advance();
                node->kind = ProcExpr::Kind::Choice;
                do {
                    if (peek().is(TokenKind::KwEnd)) {
                        advance();
                        node->accepts_end = true;
                    } else {
                        node->branches.push_back(parse_branch(spec));
                    }
                } while (match(TokenKind::Pipe));
                expect(TokenKind::RParen, "')'");
                if (node->branches.empty() && !node->accepts_end) {
                    fail(ErrorCode::SyntaxError, "empty choice", node->pos);
                }
                if (node->branches.empty() && node->accepts_end) {
                    node->kind = ProcExpr::Kind::End;  // (END) is just END
                    node->accepts_end = false;
                }
                return node;
            }
            default:
                syntax_error("a process expression (STOP, END, ERROR, a reference, or '(')");
        }
    }

    Branch parse_branch(const Spec& spec) {
        Branch branch;
        if (match(TokenKind::KwWhen)) {
            expect(TokenKind::LParen, "'(' after 'when'");
            branch.guard = parse_expr();
            expect(TokenKind::RParen, "')'");
        }
        branch.actions.push_back(parse_action_elem(spec));
        expect(TokenKind::Arrow, "'->'");
        for (;;) {
            // A continuation starts with STOP/END/ERROR, a reference, or '('.
            switch (peek().kind) {
                case TokenKind::KwStop:
                case TokenKind::KwEnd:
                case TokenKind::KwError:
                case TokenKind::UpperIdentifier:
                case TokenKind::LParen:
                    branch.next = parse_proc_expr(spec);
                    return branch;
                default:
                    branch.actions.push_back(parse_action_elem(spec));
                    expect(TokenKind::Arrow, "'->'");
            }
        }
    }

    ActionElem parse_action_elem(const Spec& spec) {
        ActionElem elem;
        if (match(TokenKind::LBrace)) {
            elem.kind = ActionElem::Kind::Set;
            do {
                ActionPattern member = parse_action_pattern(spec);
                for (const ActionPart& part : member.parts) {
                    if (part.kind == ActionPart::Kind::Binding) {
                        fail(ErrorCode::SyntaxError, "binding index inside a label set",
                             member.pos);
                    }
                }
                elem.set.push_back(std::move(member));
            } while (match(TokenKind::Comma));
            expect(TokenKind::RBrace, "'}'");
            return elem;
        }
        elem.kind = ActionElem::Kind::Single;
        elem.single = parse_action_pattern(spec);
        return elem;
    }

    ActionPattern parse_action_pattern(const Spec& spec) {
        ActionPattern pattern;
        const Token& head = expect(TokenKind::Identifier, "action label");
        pattern.pos = head.pos;
        pattern.parts.push_back(ActionPart{ActionPart::Kind::Word, head.text, nullptr, "", {}});
        for (;;) {
            if (peek().is(TokenKind::Dot) && peek(1).is(TokenKind::Identifier)) {
                advance();
                const Token& word = advance();
                pattern.parts.push_back(
                    ActionPart{ActionPart::Kind::Word, word.text, nullptr, "", {}});
                continue;
            }
            if (peek().is(TokenKind::Dot) && peek(1).is(TokenKind::Integer)) {
                // dotted integer components: a.1 is the same as a[1]
                advance();
                const Token& num = advance();
                ActionPart part;
                part.kind = ActionPart::Kind::Index;
                part.index = Expr::make_literal(std::stol(num.text), num.pos);
                pattern.parts.push_back(std::move(part));
                continue;
            }
            if (peek().is(TokenKind::LBracket)) {
                advance();
                if (peek().is(TokenKind::Identifier) && peek(1).is(TokenKind::Colon)) {
                    const Token& var = advance();
                    advance();  // ':'
                    RangeRef range = parse_range_ref(spec);
                    pattern.parts.push_back(
                        ActionPart{ActionPart::Kind::Binding, "", nullptr, var.text,
                                   std::move(range)});
                } else {
                    ActionPart part;
                    part.kind = ActionPart::Kind::Index;
                    part.index = parse_int_expr();
                    pattern.parts.push_back(std::move(part));
                }
                expect(TokenKind::RBracket, "']'");
                continue;
            }
            break;
        }
        return pattern;
    }

    CompositeDef parse_composite_def(const Spec& spec) {
        CompositeDef def;
        expect(TokenKind::PipePipe, "'||'");
        const Token& name = expect(TokenKind::UpperIdentifier, "composite name");
        def.name = name.text;
        def.pos = name.pos;
        expect(TokenKind::Assign, "'='");
        expect(TokenKind::LParen, "'('");
        do {
            def.components.push_back(parse_component(spec));
        } while (match(TokenKind::PipePipe));
        expect(TokenKind::RParen, "')'");
        if (match(TokenKind::Slash)) {
            expect(TokenKind::LBrace, "'{'");
            do {
                RelabelPair pair;
                pair.pos = peek().pos;
                pair.new_label = parse_label_literal(spec).text();
                expect(TokenKind::Slash, "'/' between new and old label");
                pair.old_label = parse_label_literal(spec).text();
                def.relabels.push_back(std::move(pair));
            } while (match(TokenKind::Comma));
            expect(TokenKind::RBrace, "'}'");
        }
        expect(TokenKind::Dot, "'.' terminating the definition");
        return def;
    }

    Component parse_component(const Spec& spec) {
        Component comp;
        comp.pos = peek().pos;
        if (peek().is(TokenKind::Identifier)) {
            Labeling labeling;
            labeling.word = advance().text;
            if (match(TokenKind::LBracket)) {
                ExprPtr lo = parse_int_expr();
                labeling.lo = eval_int(*lo, Env{}, spec);
                if (match(TokenKind::DotDot)) {
                    labeling.kind = Labeling::Kind::Range;
                    labeling.hi = eval_int(*parse_int_expr(), Env{}, spec);
                    if (labeling.lo > labeling.hi) {
                        fail(ErrorCode::SyntaxError, "replication bounds have lo > hi",
                             comp.pos);
                    }
                } else {
                    labeling.kind = Labeling::Kind::Single;
                    labeling.hi = labeling.lo;
                }
                expect(TokenKind::RBracket, "']'");
            }
            expect(TokenKind::Colon, "':' after component labeling");
            comp.labeling = std::move(labeling);
        }
        comp.target = expect(TokenKind::UpperIdentifier, "component process name").text;
        return comp;
    }

    /// Literal labels in relabel pairs and progress sets; indices must be
    /// constant expressions.
    Label parse_label_literal(const Spec& spec) {
        Label label;
        const Token& head = expect(TokenKind::Identifier, "action label");
        label.parts.push_back(LabelPart::of_word(head.text));
        for (;;) {
            if (peek().is(TokenKind::Dot) && peek(1).is(TokenKind::Identifier)) {
                advance();
                label.parts.push_back(LabelPart::of_word(advance().text));
                continue;
            }
            if (peek().is(TokenKind::Dot) && peek(1).is(TokenKind::Integer)) {
                advance();
                label.parts.push_back(LabelPart::of_int(std::stol(advance().text)));
                continue;
            }
            if (peek().is(TokenKind::LBracket)) {
                advance();
                label.parts.push_back(
                    LabelPart::of_int(eval_int(*parse_int_expr(), Env{}, spec)));
                expect(TokenKind::RBracket, "']'");
                continue;
            }
            break;
        }
        return label;
    }

    // --- expressions (precedence climbing) ---

    ExprPtr parse_expr() { return parse_or(); }

    // Integer contexts (constant values, range and replication bounds,
    // indices, reference arguments) must not swallow a following '||' or '|'
    // as boolean OR: `const N = 2` may be directly followed by a composite
    // definition. Parentheses re-enter the full grammar.
    ExprPtr parse_int_expr() { return parse_additive(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (peek().is(TokenKind::Pipe) || peek().is(TokenKind::PipePipe)) {
            const SourcePos at = advance().pos;
            lhs = Expr::make_binary(BinOp::Or, std::move(lhs), parse_and(), at);
        }
        return lhs;
    }
    ExprPtr parse_and() {
        ExprPtr lhs = parse_comparison();
        while (peek().is(TokenKind::And)) {
            const SourcePos at = advance().pos;
            lhs = Expr::make_binary(BinOp::And, std::move(lhs), parse_comparison(), at);
        }
        return lhs;
    }
    ExprPtr parse_comparison() {
        ExprPtr lhs = parse_additive();
        BinOp op;
        switch (peek().kind) {
            case TokenKind::EqEq: op = BinOp::Eq; break;
            case TokenKind::NotEq: op = BinOp::Ne; break;
            case TokenKind::Less: op = BinOp::Lt; break;
            case TokenKind::LessEq: op = BinOp::Le; break;
            case TokenKind::Greater: op = BinOp::Gt; break;
            case TokenKind::GreaterEq: op = BinOp::Ge; break;
            default: return lhs;
        }
        const SourcePos at = advance().pos;
        return Expr::make_binary(op, std::move(lhs), parse_additive(), at);
    }
    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        for (;;) {
            BinOp op;
            if (peek().is(TokenKind::Plus)) {
                op = BinOp::Add;
            } else if (peek().is(TokenKind::Minus)) {
                op = BinOp::Sub;
            } else {
                return lhs;
            }
            const SourcePos at = advance().pos;
            lhs = Expr::make_binary(op, std::move(lhs), parse_multiplicative(), at);
        }
    }
    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            BinOp op;
            if (peek().is(TokenKind::Star)) {
                op = BinOp::Mul;
            } else if (peek().is(TokenKind::Slash)) {
                op = BinOp::Div;
            } else if (peek().is(TokenKind::Percent)) {
                op = BinOp::Mod;
            } else {
                return lhs;
            }
            const SourcePos at = advance().pos;
            lhs = Expr::make_binary(op, std::move(lhs), parse_unary(), at);
        }
    }
    ExprPtr parse_unary() {
        if (peek().is(TokenKind::Minus)) {
            const SourcePos at = advance().pos;
            return Expr::make_unary(UnOp::Neg, parse_unary(), at);
        }
        if (peek().is(TokenKind::Bang)) {
            const SourcePos at = advance().pos;
            return Expr::make_unary(UnOp::Not, parse_unary(), at);
        }
        return parse_primary();
    }
    ExprPtr parse_primary() {
        switch (peek().kind) {
            case TokenKind::Integer: {
                const Token& t = advance();
                return Expr::make_literal(std::stol(t.text), t.pos);
            }
            case TokenKind::Identifier:
            case TokenKind::UpperIdentifier: {
                const Token& t = advance();
                return Expr::make_name(t.text, t.pos);
            }
            case TokenKind::LParen: {
                advance();
                ExprPtr e = parse_expr();
                expect(TokenKind::RParen, "')'");
                return e;
            }
            default:
                syntax_error("an expression");
        }
    }

    // --- post-parse validation ---

    void validate(const Spec& spec) {
        std::map<std::string, SourcePos> names;
        auto declare = [&](const std::string& name, SourcePos pos) {
            auto [it, inserted] = names.emplace(name, pos);
            if (!inserted) {
                fail(ErrorCode::DuplicateDefinition, "duplicate definition '" + name + "'",
                     pos);
            }
        };
        for (const auto& [name, value] : spec.constants) declare(name, {});
        for (const auto& r : spec.ranges) declare(r.name, r.pos);
        for (const auto& d : spec.process_defs) declare(d.name(), d.pos);
        for (const auto& d : spec.composite_defs) declare(d.name, d.pos);
        for (const auto& d : spec.progress_defs) declare(d.name, d.pos);

        for (const auto& def : spec.process_defs) {
            std::set<std::string> local_names;
            for (const auto& local : def.locals) {
                if (!local_names.insert(local.name).second) {
                    fail(ErrorCode::DuplicateDefinition,
                         "duplicate local process '" + local.name + "'", local.pos);
                }
            }
            for (const auto& local : def.locals) {
                check_references(*local.body, def, spec);
            }
        }
        for (const auto& def : spec.composite_defs) {
            for (const auto& comp : def.components) {
                if (!spec.find_process(comp.target) && !spec.find_composite(comp.target)) {
                    fail(ErrorCode::UnresolvedReference,
                         "unknown component '" + comp.target + "'", comp.pos);
                }
            }
        }
    }

    void check_references(const ProcExpr& expr, const ProcessDef& def, const Spec& spec) {
        switch (expr.kind) {
            case ProcExpr::Kind::Reference: {
                if (def.find_local(expr.ref_name) || spec.find_process(expr.ref_name)) return;
                if (spec.find_composite(expr.ref_name)) {
                    fail(ErrorCode::UnresolvedReference,
                         "'" + expr.ref_name +
                             "' is a composite; process bodies may only reference "
                             "local or top-level processes",
                         expr.pos);
                }
                fail(ErrorCode::UnresolvedReference,
                     "unresolved process reference '" + expr.ref_name + "'", expr.pos);
            }
            case ProcExpr::Kind::Choice:
                for (const Branch& b : expr.branches) check_references(*b.next, def, spec);
                return;
            default:
                return;
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

inline Spec parse(std::vector<Token> tokens) { return Parser(std::move(tokens)).parse(); }

inline Spec parse_text(std::string_view text) { return parse(tokenize(text)); }

}  // namespace fspv
