#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "fspv/ast.hpp"

namespace fspv {

/// Variable environment: a small sorted (name, value) vector. Kept sorted so
/// it doubles as a memoization key during compilation.
class Env {
public:
    Env() = default;

    void bind(const std::string& name, long value) {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                                   [](const auto& e, const std::string& n) { return e.first < n; });
        if (it != entries_.end() && it->first == name) {
            it->second = value;
        } else {
            entries_.insert(it, {name, value});
        }
    }

    const long* lookup(const std::string& name) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                                   [](const auto& e, const std::string& n) { return e.first < n; });
        if (it != entries_.end() && it->first == name) return &it->second;
        return nullptr;
    }

    /// Environment restricted to the given variable set.
    template <typename Set>
    Env restricted_to(const Set& vars) const {
        Env out;
        for (const auto& e : entries_) {
            if (vars.count(e.first)) out.entries_.push_back(e);
        }
        return out;
    }

    const std::vector<std::pair<std::string, long>>& entries() const { return entries_; }

    friend bool operator==(const Env&, const Env&) = default;
    friend auto operator<=>(const Env&, const Env&) = default;

private:
    std::vector<std::pair<std::string, long>> entries_;
};

struct Value {
    bool is_bool = false;
    long num = 0;
    bool truth = false;

    static Value of_int(long v) { return Value{false, v, false}; }
    static Value of_bool(bool b) { return Value{true, 0, b}; }
};

inline Value eval_value(const Expr& e, const Env& env, const Spec& spec);

inline long eval_int(const Expr& e, const Env& env, const Spec& spec) {
    Value v = eval_value(e, env, spec);
    if (v.is_bool) {
        fail(ErrorCode::TypeMismatch, "expected an integer expression", e.pos);
    }
    return v.num;
}

inline bool eval_bool(const Expr& e, const Env& env, const Spec& spec) {
    Value v = eval_value(e, env, spec);
    if (!v.is_bool) {
        fail(ErrorCode::TypeMismatch, "expected a boolean expression", e.pos);
    }
    return v.truth;
}

inline Value eval_value(const Expr& e, const Env& env, const Spec& spec) {
    switch (e.kind) {
        case Expr::Kind::Literal:
            return Value::of_int(e.literal);
        case Expr::Kind::Name: {
            if (const long* v = env.lookup(e.name)) return Value::of_int(*v);
            if (const long* c = spec.find_constant(e.name)) return Value::of_int(*c);
            fail(ErrorCode::UnboundVariable, "unbound variable '" + e.name + "'", e.pos);
        }
        case Expr::Kind::Unary: {
            if (e.un_op == UnOp::Neg) return Value::of_int(-eval_int(*e.lhs, env, spec));
            return Value::of_bool(!eval_bool(*e.lhs, env, spec));
        }
        case Expr::Kind::Binary: {
            switch (e.bin_op) {
                case BinOp::And:  // short-circuit
                    if (!eval_bool(*e.lhs, env, spec)) return Value::of_bool(false);
                    return Value::of_bool(eval_bool(*e.rhs, env, spec));
                case BinOp::Or:
                    if (eval_bool(*e.lhs, env, spec)) return Value::of_bool(true);
                    return Value::of_bool(eval_bool(*e.rhs, env, spec));
                default:
                    break;
            }
            const long a = eval_int(*e.lhs, env, spec);
            const long b = eval_int(*e.rhs, env, spec);
            switch (e.bin_op) {
                case BinOp::Add: return Value::of_int(a + b);
                case BinOp::Sub: return Value::of_int(a - b);
                case BinOp::Mul: return Value::of_int(a * b);
                case BinOp::Div:
                    if (b == 0) fail(ErrorCode::DivisionByZero, "division by zero", e.pos);
                    return Value::of_int(a / b);
                case BinOp::Mod:
                    if (b == 0) fail(ErrorCode::DivisionByZero, "modulo by zero", e.pos);
                    return Value::of_int(a % b);
                case BinOp::Eq: return Value::of_bool(a == b);
                case BinOp::Ne: return Value::of_bool(a != b);
                case BinOp::Lt: return Value::of_bool(a < b);
                case BinOp::Le: return Value::of_bool(a <= b);
                case BinOp::Gt: return Value::of_bool(a > b);
                case BinOp::Ge: return Value::of_bool(a >= b);
                case BinOp::And:
                case BinOp::Or:
                    break;
            }
            break;
        }
    }
    fail(ErrorCode::TypeMismatch, "malformed expression", e.pos);
}

/// Bounds of a range reference, resolving named ranges via the spec.
inline std::pair<long, long> range_bounds(const RangeRef& r, const Spec& spec, SourcePos pos) {
    if (r.is_named()) {
        const RangeDef* def = spec.find_range(r.name);
        if (!def) {
            fail(ErrorCode::UnresolvedReference, "unknown range '" + r.name + "'", pos);
        }
        return {def->lo, def->hi};
    }
    return {r.lo, r.hi};
}

}  // namespace fspv
