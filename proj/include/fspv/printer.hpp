#pragma once

#include <sstream>
#include <string>

#include "fspv/ast.hpp"

namespace fspv {

namespace detail {

inline int precedence_of(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Literal:
        case Expr::Kind::Name:
            return 7;
        case Expr::Kind::Unary:
            return 6;
        case Expr::Kind::Binary:
            switch (e.bin_op) {
                case BinOp::Or: return 1;
                case BinOp::And: return 2;
                case BinOp::Eq:
                case BinOp::Ne:
                case BinOp::Lt:
                case BinOp::Le:
                case BinOp::Gt:
                case BinOp::Ge: return 3;
                case BinOp::Add:
                case BinOp::Sub: return 4;
                case BinOp::Mul:
                case BinOp::Div:
                case BinOp::Mod: return 5;
            }
    }
    return 7;
}

inline const char* bin_op_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::And: return "&&";  // canonical form even when parsed from '&'
        case BinOp::Or: return "||";
    }
    return "?";
}

inline void print_expr(std::ostream& out, const Expr& e) {
    auto child = [&](const Expr& c, bool needs_parens) {
        if (needs_parens) out << '(';
        print_expr(out, c);
        if (needs_parens) out << ')';
    };
    switch (e.kind) {
        case Expr::Kind::Literal:
            out << e.literal;
            return;
        case Expr::Kind::Name:
            out << e.name;
            return;
        case Expr::Kind::Unary:
            out << (e.un_op == UnOp::Neg ? "-" : "!");
            child(*e.lhs, precedence_of(*e.lhs) < 6);
            return;
        case Expr::Kind::Binary: {
            const int prec = precedence_of(e);
            child(*e.lhs, precedence_of(*e.lhs) < prec);
            out << bin_op_text(e.bin_op);
            // left-associative: parenthesize an equal-precedence right child
            child(*e.rhs, precedence_of(*e.rhs) <= prec);
            return;
        }
    }
}

inline std::string expr_text(const ExprPtr& e) {
    std::ostringstream out;
    print_expr(out, *e);
    return out.str();
}

inline std::string range_ref_text(const RangeRef& r) {
    if (r.is_named()) return r.name;
    return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

inline std::string action_pattern_text(const ActionPattern& p) {
    std::string out;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        const ActionPart& part = p.parts[i];
        switch (part.kind) {
            case ActionPart::Kind::Word:
                if (i) out += '.';
                out += part.word;
                break;
            case ActionPart::Kind::Index:
                out += '[' + expr_text(part.index) + ']';
                break;
            case ActionPart::Kind::Binding:
                out += '[' + part.var + ':' + range_ref_text(part.range) + ']';
                break;
        }
    }
    return out;
}

inline std::string action_elem_text(const ActionElem& e) {
    if (e.kind == ActionElem::Kind::Single) return action_pattern_text(e.single);
    std::string out = "{";
    for (std::size_t i = 0; i < e.set.size(); ++i) {
        if (i) out += ", ";
        out += action_pattern_text(e.set[i]);
    }
    out += '}';
    return out;
}

void print_proc_expr(std::ostream& out, const ProcExpr& e, int indent);

inline void print_branch(std::ostream& out, const Branch& b, int indent) {
    if (b.guard) out << "when (" << expr_text(b.guard) << ") ";
    for (const ActionElem& a : b.actions) out << action_elem_text(a) << " -> ";
    print_proc_expr(out, *b.next, indent);
}

inline void print_proc_expr(std::ostream& out, const ProcExpr& e, int indent) {
    switch (e.kind) {
        case ProcExpr::Kind::Stop: out << "STOP"; return;
        case ProcExpr::Kind::End: out << "END"; return;
        case ProcExpr::Kind::Error: out << "ERROR"; return;
        case ProcExpr::Kind::Reference:
            out << e.ref_name;
            for (const ExprPtr& arg : e.ref_args) out << '[' << expr_text(arg) << ']';
            return;
        case ProcExpr::Kind::Choice: {
            const std::size_t alternatives = e.branches.size() + (e.accepts_end ? 1 : 0);
            if (alternatives == 1 && !e.branches.empty()) {
                out << '(';
                print_branch(out, e.branches.front(), indent);
                out << ')';
                return;
            }
            const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
            out << "(\n";
            bool first = true;
            for (const Branch& b : e.branches) {
                out << pad << (first ? "    " : "  | ");
                first = false;
                print_branch(out, b, indent + 1);
                out << '\n';
            }
            if (e.accepts_end) {
                out << pad << (first ? "    " : "  | ") << "END\n";
            }
            out << pad << ')';
            return;
        }
    }
}

}  // namespace detail

/// Canonical pretty-printing: groups declarations (constants, ranges,
/// processes, composites, progress), one definition per block, guards with
/// `&&`/`||`. parse(format(s)) is structurally equal to s.
inline std::string format(const Spec& spec) {
    std::ostringstream out;
    for (const auto& [name, value] : spec.constants) {
        out << "const " << name << " = " << value << '\n';
    }
    for (const RangeDef& r : spec.ranges) {
        out << "range " << r.name << " = " << r.lo << ".." << r.hi << '\n';
    }
    if (!spec.constants.empty() || !spec.ranges.empty()) out << '\n';

    for (const ProcessDef& def : spec.process_defs) {
        if (spec.is_property(def.name())) out << "property ";
        for (std::size_t i = 0; i < def.locals.size(); ++i) {
            const LocalDef& local = def.locals[i];
            if (i) out << ",\n";
            out << local.name;
            for (const Param& p : local.params) {
                out << '[' << p.var << ':' << detail::range_ref_text(p.range) << ']';
            }
            out << " = ";
            detail::print_proc_expr(out, *local.body, 0);
        }
        out << ".\n\n";
    }

    for (const CompositeDef& def : spec.composite_defs) {
        out << "||" << def.name << " = (";
        for (std::size_t i = 0; i < def.components.size(); ++i) {
            if (i) out << " || ";
            const Component& comp = def.components[i];
            if (comp.labeling) {
                out << comp.labeling->word;
                switch (comp.labeling->kind) {
                    case Labeling::Kind::Plain: break;
                    case Labeling::Kind::Single:
                        out << '[' << comp.labeling->lo << ']';
                        break;
                    case Labeling::Kind::Range:
                        out << '[' << comp.labeling->lo << ".." << comp.labeling->hi << ']';
                        break;
                }
                out << ':';
            }
            out << comp.target;
        }
        out << ')';
        if (!def.relabels.empty()) {
            out << "/{";
            for (std::size_t i = 0; i < def.relabels.size(); ++i) {
                if (i) out << ", ";
                out << def.relabels[i].new_label << '/' << def.relabels[i].old_label;
            }
            out << '}';
        }
        out << ".\n\n";
    }

    for (const ProgressDef& def : spec.progress_defs) {
        out << "progress " << def.name << " = {";
        for (std::size_t i = 0; i < def.labels.size(); ++i) {
            if (i) out << ", ";
            out << def.labels[i];
        }
        out << "}.\n";
    }
    return out.str();
}

}  // namespace fspv
