#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fspv/diagnostics.hpp"

namespace fspv {

// ---------------------------------------------------------------------------
// Expressions. Integer and boolean expressions share one tree; evaluation
// type-checks (guards must come out boolean, indices integer).
// ---------------------------------------------------------------------------

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnOp { Neg, Not };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Literal, Name, Unary, Binary };

    Kind kind = Kind::Literal;
    long literal = 0;
    std::string name;  // constant or bound variable
    UnOp un_op = UnOp::Neg;
    BinOp bin_op = BinOp::Add;
    ExprPtr lhs;  // Unary operand / Binary left
    ExprPtr rhs;  // Binary right
    SourcePos pos;

    static ExprPtr make_literal(long v, SourcePos p = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Literal;
        e->literal = v;
        e->pos = p;
        return e;
    }
    static ExprPtr make_name(std::string n, SourcePos p = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Name;
        e->name = std::move(n);
        e->pos = p;
        return e;
    }
    static ExprPtr make_unary(UnOp op, ExprPtr operand, SourcePos p = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Unary;
        e->un_op = op;
        e->lhs = std::move(operand);
        e->pos = p;
        return e;
    }
    static ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos p = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Binary;
        e->bin_op = op;
        e->lhs = std::move(lhs);
        e->rhs = std::move(rhs);
        e->pos = p;
        return e;
    }
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Literal: return a->literal == b->literal;
        case Expr::Kind::Name: return a->name == b->name;
        case Expr::Kind::Unary:
            return a->un_op == b->un_op && expr_equal(a->lhs, b->lhs);
        case Expr::Kind::Binary:
            return a->bin_op == b->bin_op && expr_equal(a->lhs, b->lhs) &&
                   expr_equal(a->rhs, b->rhs);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Ranges: either a named `range` declaration or inline bounds. Inline bounds
// are evaluated against the constants at parse time.
// ---------------------------------------------------------------------------

struct RangeRef {
    std::string name;  // non-empty for named ranges
    long lo = 0;
    long hi = -1;

    bool is_named() const { return !name.empty(); }

    friend bool operator==(const RangeRef&, const RangeRef&) = default;
};

// ---------------------------------------------------------------------------
// Actions. An action pattern is a dotted sequence of parts; bracketed parts
// are either index expressions (readSign[v]) or bindings (readSign[s:R]).
// ---------------------------------------------------------------------------

struct ActionPart {
    enum class Kind { Word, Index, Binding };

    Kind kind = Kind::Word;
    std::string word;   // Word
    ExprPtr index;      // Index
    std::string var;    // Binding variable
    RangeRef range;     // Binding range
};

inline bool action_part_equal(const ActionPart& a, const ActionPart& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ActionPart::Kind::Word: return a.word == b.word;
        case ActionPart::Kind::Index: return expr_equal(a.index, b.index);
        case ActionPart::Kind::Binding: return a.var == b.var && a.range == b.range;
    }
    return false;
}

struct ActionPattern {
    std::vector<ActionPart> parts;
    SourcePos pos;
};

inline bool action_pattern_equal(const ActionPattern& a, const ActionPattern& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
        if (!action_part_equal(a.parts[i], b.parts[i])) return false;
    }
    return true;
}

struct ActionElem {
    enum class Kind { Single, Set };

    Kind kind = Kind::Single;
    ActionPattern single;
    std::vector<ActionPattern> set;  // label-set members: words or indexed words
};

inline bool action_elem_equal(const ActionElem& a, const ActionElem& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ActionElem::Kind::Single) return action_pattern_equal(a.single, b.single);
    if (a.set.size() != b.set.size()) return false;
    for (std::size_t i = 0; i < a.set.size(); ++i) {
        if (!action_pattern_equal(a.set[i], b.set[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Process expressions.
// ---------------------------------------------------------------------------

struct ProcExpr;
using ProcExprPtr = std::shared_ptr<const ProcExpr>;

struct Branch {
    ExprPtr guard;                    // null when unguarded
    std::vector<ActionElem> actions;  // non-empty
    ProcExprPtr next;
};

struct ProcExpr {
    enum class Kind { Stop, End, Error, Reference, Choice };

    Kind kind = Kind::Stop;
    // Reference
    std::string ref_name;
    std::vector<ExprPtr> ref_args;
    // Choice
    std::vector<Branch> branches;
    bool accepts_end = false;  // choice carried a bare END alternative
    SourcePos pos;
};

bool proc_expr_equal(const ProcExprPtr& a, const ProcExprPtr& b);

inline bool branch_equal(const Branch& a, const Branch& b) {
    if (!expr_equal(a.guard, b.guard)) return false;
    if (a.actions.size() != b.actions.size()) return false;
    for (std::size_t i = 0; i < a.actions.size(); ++i) {
        if (!action_elem_equal(a.actions[i], b.actions[i])) return false;
    }
    return proc_expr_equal(a.next, b.next);
}

inline bool proc_expr_equal(const ProcExprPtr& a, const ProcExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ProcExpr::Kind::Stop:
        case ProcExpr::Kind::End:
        case ProcExpr::Kind::Error:
            return true;
        case ProcExpr::Kind::Reference: {
            if (a->ref_name != b->ref_name) return false;
            if (a->ref_args.size() != b->ref_args.size()) return false;
            for (std::size_t i = 0; i < a->ref_args.size(); ++i) {
                if (!expr_equal(a->ref_args[i], b->ref_args[i])) return false;
            }
            return true;
        }
        case ProcExpr::Kind::Choice: {
            if (a->accepts_end != b->accepts_end) return false;
            if (a->branches.size() != b->branches.size()) return false;
            for (std::size_t i = 0; i < a->branches.size(); ++i) {
                if (!branch_equal(a->branches[i], b->branches[i])) return false;
            }
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Definitions.
// ---------------------------------------------------------------------------

struct Param {
    std::string var;
    RangeRef range;

    friend bool operator==(const Param&, const Param&) = default;
};

struct LocalDef {
    std::string name;
    std::vector<Param> params;
    ProcExprPtr body;
    SourcePos pos;
};

inline bool local_def_equal(const LocalDef& a, const LocalDef& b) {
    return a.name == b.name && a.params == b.params && proc_expr_equal(a.body, b.body);
}

/// A process definition: the first local is the entry point.
struct ProcessDef {
    std::vector<LocalDef> locals;
    SourcePos pos;

    const std::string& name() const { return locals.front().name; }
    const LocalDef* find_local(const std::string& n) const {
        for (const auto& l : locals) {
            if (l.name == n) return &l;
        }
        return nullptr;
    }
};

inline bool process_def_equal(const ProcessDef& a, const ProcessDef& b) {
    if (a.locals.size() != b.locals.size()) return false;
    for (std::size_t i = 0; i < a.locals.size(); ++i) {
        if (!local_def_equal(a.locals[i], b.locals[i])) return false;
    }
    return true;
}

struct Labeling {
    enum class Kind { Plain, Single, Range };  // c:P, c[2]:P, c[1..3]:P

    Kind kind = Kind::Plain;
    std::string word;
    long lo = 0;
    long hi = 0;

    friend bool operator==(const Labeling&, const Labeling&) = default;
};

struct Component {
    std::optional<Labeling> labeling;
    std::string target;
    SourcePos pos;
};

inline bool component_equal(const Component& a, const Component& b) {
    return a.labeling == b.labeling && a.target == b.target;
}

struct RelabelPair {
    std::string new_label;  // canonical label text
    std::string old_label;
    SourcePos pos;

    friend bool operator==(const RelabelPair& a, const RelabelPair& b) {
        return a.new_label == b.new_label && a.old_label == b.old_label;
    }
};

struct CompositeDef {
    std::string name;
    std::vector<Component> components;
    std::vector<RelabelPair> relabels;
    SourcePos pos;
};

inline bool composite_def_equal(const CompositeDef& a, const CompositeDef& b) {
    if (a.name != b.name || a.relabels != b.relabels) return false;
    if (a.components.size() != b.components.size()) return false;
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        if (!component_equal(a.components[i], b.components[i])) return false;
    }
    return true;
}

struct RangeDef {
    std::string name;
    long lo = 0;
    long hi = 0;
    SourcePos pos;

    friend bool operator==(const RangeDef& a, const RangeDef& b) {
        return a.name == b.name && a.lo == b.lo && a.hi == b.hi;
    }
};

struct ProgressDef {
    std::string name;
    std::vector<std::string> labels;  // canonical label text, non-empty
    SourcePos pos;

    friend bool operator==(const ProgressDef& a, const ProgressDef& b) {
        return a.name == b.name && a.labels == b.labels;
    }
};

// ---------------------------------------------------------------------------
// A parsed compilation unit.
// ---------------------------------------------------------------------------

struct Spec {
    std::vector<std::pair<std::string, long>> constants;  // declaration order
    std::vector<RangeDef> ranges;
    std::vector<ProcessDef> process_defs;
    std::vector<CompositeDef> composite_defs;
    std::set<std::string> property_names;
    std::vector<ProgressDef> progress_defs;

    const long* find_constant(const std::string& n) const {
        for (const auto& [name, value] : constants) {
            if (name == n) return &value;
        }
        return nullptr;
    }
    const RangeDef* find_range(const std::string& n) const {
        for (const auto& r : ranges) {
            if (r.name == n) return &r;
        }
        return nullptr;
    }
    const ProcessDef* find_process(const std::string& n) const {
        for (const auto& d : process_defs) {
            if (d.name() == n) return &d;
        }
        return nullptr;
    }
    const CompositeDef* find_composite(const std::string& n) const {
        for (const auto& d : composite_defs) {
            if (d.name == n) return &d;
        }
        return nullptr;
    }
    bool is_property(const std::string& n) const { return property_names.count(n) != 0; }
};

inline bool spec_equal(const Spec& a, const Spec& b) {
    if (a.constants != b.constants) return false;
    if (a.ranges != b.ranges) return false;
    if (a.property_names != b.property_names) return false;
    if (a.progress_defs != b.progress_defs) return false;
    if (a.process_defs.size() != b.process_defs.size()) return false;
    for (std::size_t i = 0; i < a.process_defs.size(); ++i) {
        if (!process_def_equal(a.process_defs[i], b.process_defs[i])) return false;
    }
    if (a.composite_defs.size() != b.composite_defs.size()) return false;
    for (std::size_t i = 0; i < a.composite_defs.size(); ++i) {
        if (!composite_def_equal(a.composite_defs[i], b.composite_defs[i])) return false;
    }
    return true;
}

}  // namespace fspv
