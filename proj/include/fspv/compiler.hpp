#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fspv/ast.hpp"
#include "fspv/eval.hpp"
#include "fspv/lts.hpp"

namespace fspv {

// ---------------------------------------------------------------------------
// Expands a process definition into an LTS by breadth-first exploration.
//
// State identity is (syntactic point, environment restricted to the free
// variables of the remaining behavior). A point is either a whole process
// expression or a mid-sequence position inside a branch; anonymous
// mid-sequence states are keyed by (choice node, branch, action position),
// which is the positional analogue of giving them synthetic local names.
// The restriction is what merges e.g. the nine readSign[s:R] branches of a
// carrier onto one continuation state when the remainder never mentions s.
//
// State numbering is the BFS discovery order, with each state's moves sorted
// by label before targets are interned, so compilation is fully
// deterministic. The alphabet is exactly the labels on reachable transitions.
// ---------------------------------------------------------------------------

namespace detail {

class ProcessCompiler {
public:
    ProcessCompiler(const Spec& spec, std::string name, std::size_t limit)
        : spec_(spec), name_(std::move(name)), limit_(limit) {}

    Lts run() {
        const ProcessDef* def = spec_.find_process(name_);
        if (!def) {
            fail(ErrorCode::UnresolvedReference, "no process definition named '" + name_ + "'");
        }
        const LocalDef& entry = def->locals.front();
        if (!entry.params.empty()) {
            fail(ErrorCode::UnresolvedReference,
                 "entry process '" + entry.name + "' takes parameters and cannot be compiled directly",
                 entry.pos);
        }

        Point start = resolve_local(*def, entry, Env{}, entry.pos);
        intern(start);

        std::vector<std::vector<std::pair<Label, int>>> raw;
        raw.reserve(64);
        for (std::size_t s = 0; s < points_.size(); ++s) {
            raw.push_back(expand(points_[s]));
        }

        return finish(std::move(raw));
    }

private:
    struct Point {
        const ProcessDef* ctx = nullptr;
        const ProcExpr* node = nullptr;
        int branch = -1;  // >= 0: mid-sequence inside node->branches[branch]
        int pos = -1;     //        index of the next action element
        Env env;          // restricted to the free variables of the remainder
        bool is_error = false;

        auto key() const {
            return std::tuple(reinterpret_cast<std::uintptr_t>(node), branch, pos, env);
        }
    };

    struct Move {
        Label label;
        Point target;
        std::size_t order;  // enumeration order, the tie-break for equal labels
    };

    // --- free variables ---

    static void expr_vars(const ExprPtr& e, std::set<std::string>& out) {
        if (!e) return;
        switch (e->kind) {
            case Expr::Kind::Literal: return;
            case Expr::Kind::Name: out.insert(e->name); return;
            case Expr::Kind::Unary: expr_vars(e->lhs, out); return;
            case Expr::Kind::Binary:
                expr_vars(e->lhs, out);
                expr_vars(e->rhs, out);
                return;
        }
    }

    void pattern_vars(const ActionPattern& p, std::set<std::string>& bound,
                      std::set<std::string>& out) const {
        for (const ActionPart& part : p.parts) {
            switch (part.kind) {
                case ActionPart::Kind::Word:
                    break;
                case ActionPart::Kind::Index: {
                    std::set<std::string> vars;
                    expr_vars(part.index, vars);
                    for (const auto& v : vars) {
                        if (!bound.count(v)) out.insert(v);
                    }
                    break;
                }
                case ActionPart::Kind::Binding:
                    bound.insert(part.var);
                    break;
            }
        }
    }

    std::set<std::string> suffix_vars(const Branch& branch, std::size_t from,
                                      bool include_guard) const {
        std::set<std::string> out;
        std::set<std::string> bound;
        if (include_guard) expr_vars(branch.guard, out);
        for (std::size_t i = from; i < branch.actions.size(); ++i) {
            const ActionElem& elem = branch.actions[i];
            if (elem.kind == ActionElem::Kind::Single) {
                pattern_vars(elem.single, bound, out);
            } else {
                for (const ActionPattern& member : elem.set) pattern_vars(member, bound, out);
            }
        }
        std::set<std::string> cont = free_vars(branch.next.get());
        for (const auto& v : cont) {
            if (!bound.count(v)) out.insert(v);
        }
        return out;
    }

    const std::set<std::string>& free_vars(const ProcExpr* node) const {
        auto it = fv_cache_.find(node);
        if (it != fv_cache_.end()) return it->second;
        std::set<std::string> out;
        switch (node->kind) {
            case ProcExpr::Kind::Stop:
            case ProcExpr::Kind::End:
            case ProcExpr::Kind::Error:
                break;
            case ProcExpr::Kind::Reference:
                for (const ExprPtr& arg : node->ref_args) expr_vars(arg, out);
                break;
            case ProcExpr::Kind::Choice:
                for (const Branch& b : node->branches) {
                    std::set<std::string> bs = suffix_vars(b, 0, /*include_guard=*/true);
                    out.insert(bs.begin(), bs.end());
                }
                break;
        }
        return fv_cache_.emplace(node, std::move(out)).first->second;
    }

    // --- reference resolution ---

    Point resolve(const ProcessDef& ctx, const ProcExpr* node, const Env& env) {
        std::set<std::pair<const LocalDef*, Env>> seen;
        const ProcessDef* cur_def = &ctx;
        const ProcExpr* cur = node;
        Env cur_env = env;
        for (;;) {
            switch (cur->kind) {
                case ProcExpr::Kind::Stop:
                case ProcExpr::Kind::End:
                    return Point{cur_def, cur, -1, -1, Env{}, false};
                case ProcExpr::Kind::Error: {
                    Point p{cur_def, cur, -1, -1, Env{}, true};
                    return p;
                }
                case ProcExpr::Kind::Choice: {
                    Env restricted = cur_env.restricted_to(free_vars(cur));
                    return Point{cur_def, cur, -1, -1, std::move(restricted), false};
                }
                case ProcExpr::Kind::Reference: {
                    const LocalDef* local = cur_def->find_local(cur->ref_name);
                    const ProcessDef* next_def = cur_def;
                    if (!local) {
                        next_def = spec_.find_process(cur->ref_name);
                        if (!next_def) {
                            fail(ErrorCode::UnresolvedReference,
                                 "unresolved process reference '" + cur->ref_name + "'",
                                 cur->pos);
                        }
                        local = &next_def->locals.front();
                    }
                    Env bound = bind_params(*local, cur->ref_args, cur_env, cur->pos);
                    if (!seen.insert({local, bound}).second) {
                        fail(ErrorCode::CyclicRef,
                             "unguarded reference cycle through '" + local->name + "'",
                             cur->pos);
                    }
                    cur_def = next_def;
                    cur = local->body.get();
                    cur_env = std::move(bound);
                    break;
                }
            }
        }
    }

    Point resolve_local(const ProcessDef& ctx, const LocalDef& local, const Env& env,
                        SourcePos at) {
        if (!local.params.empty()) {
            fail(ErrorCode::UnresolvedReference,
                 "'" + local.name + "' expects " + std::to_string(local.params.size()) +
                     " argument(s)",
                 at);
        }
        (void)env;
        return resolve(ctx, local.body.get(), Env{});
    }

    Env bind_params(const LocalDef& local, const std::vector<ExprPtr>& args, const Env& env,
                    SourcePos at) {
        if (args.size() != local.params.size()) {
            fail(ErrorCode::UnresolvedReference,
                 "'" + local.name + "' expects " + std::to_string(local.params.size()) +
                     " argument(s), got " + std::to_string(args.size()),
                 at);
        }
        Env bound;
        for (std::size_t i = 0; i < args.size(); ++i) {
            const long value = eval_int(*args[i], env, spec_);
            const auto [lo, hi] = range_bounds(local.params[i].range, spec_, at);
            if (value < lo || value > hi) {
                fail(ErrorCode::RangeIndexOutOfBounds,
                     "'" + local.name + "[" + std::to_string(value) + "]' is outside " +
                         std::to_string(lo) + ".." + std::to_string(hi),
                     at);
            }
            bound.bind(local.params[i].var, value);
        }
        return bound;
    }

    // --- state interning ---

    int intern(const Point& p) {
        auto key = p.key();
        auto it = state_ids_.find(key);
        if (it != state_ids_.end()) return it->second;
        if (points_.size() >= limit_) {
            fail(ErrorCode::StateLimitExceeded,
                 "state limit of " + std::to_string(limit_) + " exceeded while compiling '" +
                     name_ + "'");
        }
        const int id = static_cast<int>(points_.size());
        state_ids_.emplace(std::move(key), id);
        points_.push_back(p);
        // A bare END alternative marks the whole choice state as accepting;
        // mid-sequence points within that choice are not.
        bool is_end = p.node->kind == ProcExpr::Kind::End ||
                      (p.node->kind == ProcExpr::Kind::Choice && p.node->accepts_end &&
                       p.branch < 0);
        end_flags_.push_back(is_end);
        return id;
    }

    // --- expansion ---

    std::vector<std::pair<Label, int>> expand(Point point) {
        std::vector<Move> moves;
        if (point.node->kind == ProcExpr::Kind::Choice) {
            if (point.branch < 0) {
                const auto& branches = point.node->branches;
                for (std::size_t bi = 0; bi < branches.size(); ++bi) {
                    const Branch& b = branches[bi];
                    if (b.guard && !eval_bool(*b.guard, point.env, spec_)) continue;
                    expand_action(point, static_cast<int>(bi), 0, moves);
                }
            } else {
                expand_action(point, point.branch, point.pos, moves);
            }
        }
        std::stable_sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
            if (a.label != b.label) return a.label < b.label;
            return a.order < b.order;
        });
        std::vector<std::pair<Label, int>> out;
        out.reserve(moves.size());
        for (Move& m : moves) {
            const int target = m.target.is_error ? kErrorState : intern(m.target);
            out.emplace_back(std::move(m.label), target);
        }
        return out;
    }

    void expand_action(const Point& point, int branch_index, int pos,
                       std::vector<Move>& moves) {
        const Branch& branch = point.node->branches[static_cast<std::size_t>(branch_index)];
        const ActionElem& elem = branch.actions[static_cast<std::size_t>(pos)];

        std::vector<std::pair<Label, Env>> instances;
        if (elem.kind == ActionElem::Kind::Single) {
            instantiate_pattern(elem.single, point.env, instances);
        } else {
            for (const ActionPattern& member : elem.set) {
                instantiate_pattern(member, point.env, instances);
            }
        }

        const bool more_actions = pos + 1 < static_cast<int>(branch.actions.size());
        for (auto& [label, env] : instances) {
            Point target;
            if (more_actions) {
                target.ctx = point.ctx;
                target.node = point.node;
                target.branch = branch_index;
                target.pos = pos + 1;
                target.env = env.restricted_to(
                    suffix_vars(branch, static_cast<std::size_t>(pos) + 1, false));
            } else {
                target = resolve(*point.ctx, branch.next.get(), env);
            }
            moves.push_back(Move{std::move(label), std::move(target), moves.size()});
        }
    }

    void instantiate_pattern(const ActionPattern& pattern, const Env& env,
                             std::vector<std::pair<Label, Env>>& out) const {
        std::vector<std::pair<Label, Env>> partial{{Label{}, env}};
        for (const ActionPart& part : pattern.parts) {
            switch (part.kind) {
                case ActionPart::Kind::Word:
                    for (auto& [label, e] : partial) {
                        label.parts.push_back(LabelPart::of_word(part.word));
                    }
                    break;
                case ActionPart::Kind::Index:
                    for (auto& [label, e] : partial) {
                        label.parts.push_back(
                            LabelPart::of_int(eval_int(*part.index, e, spec_)));
                    }
                    break;
                case ActionPart::Kind::Binding: {
                    const auto [lo, hi] = range_bounds(part.range, spec_, pattern.pos);
                    std::vector<std::pair<Label, Env>> next;
                    next.reserve(partial.size() * static_cast<std::size_t>(hi - lo + 1));
                    for (const auto& [label, e] : partial) {
                        for (long v = lo; v <= hi; ++v) {
                            Label extended = label;
                            extended.parts.push_back(LabelPart::of_int(v));
                            Env bound = e;
                            bound.bind(part.var, v);
                            next.emplace_back(std::move(extended), std::move(bound));
                        }
                    }
                    partial = std::move(next);
                    break;
                }
            }
        }
        for (auto& p : partial) out.push_back(std::move(p));
    }

    // --- assembly ---

    Lts finish(std::vector<std::vector<std::pair<Label, int>>> raw) {
        Lts lts;
        lts.name = name_;
        lts.num_states = static_cast<int>(points_.size());
        lts.end_states = std::move(end_flags_);

        std::set<Label> labels;
        for (const auto& list : raw) {
            for (const auto& [label, target] : list) labels.insert(label);
        }
        lts.alphabet.assign(labels.begin(), labels.end());

        lts.transitions.resize(points_.size());
        for (std::size_t s = 0; s < raw.size(); ++s) {
            auto& list = lts.transitions[s];
            list.reserve(raw[s].size());
            for (const auto& [label, target] : raw[s]) {
                list.push_back(Transition{lts.label_index(label), target});
            }
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }

        lts.all_parts_stuck.assign(points_.size(), false);
        for (std::size_t s = 0; s < points_.size(); ++s) {
            lts.all_parts_stuck[s] = lts.transitions[s].empty() && !lts.end_states[s];
        }
        return lts;
    }

    const Spec& spec_;
    std::string name_;
    std::size_t limit_;

    mutable std::map<const ProcExpr*, std::set<std::string>> fv_cache_;
    std::map<std::tuple<std::uintptr_t, int, int, Env>, int> state_ids_;
    std::vector<Point> points_;
    std::vector<bool> end_flags_;
};

}  // namespace detail

inline Lts compile_process(const Spec& spec, const std::string& name,
                           std::size_t limit = kDefaultStateLimit) {
    return detail::ProcessCompiler(spec, name, limit).run();
}

}  // namespace fspv
