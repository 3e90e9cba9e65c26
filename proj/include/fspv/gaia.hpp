#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fspv/ast.hpp"
#include "fspv/diagnostics.hpp"

namespace fspv {

// ---------------------------------------------------------------------------
// Gaia role-model liveness expressions: regular-expression-like lifecycles
// over activity/protocol names. `.gaia` input holds one role schema as
// `Name = expression` lines; operators are `.` (sequence), `|` (choice),
// postfix `*` / `+`, `[x]` (option) and parentheses. Uppercase names refer to
// sibling definitions. `!` is not part of the standard operator set and is
// rejected unless explicitly mapped to choice.
// ---------------------------------------------------------------------------

struct LivenessExpr;
using LivenessPtr = std::shared_ptr<const LivenessExpr>;

struct LivenessExpr {
    enum class Kind { Atom, Seq, Choice, Star, Plus, Optional, Ref };

    Kind kind = Kind::Atom;
    std::string name;  // Atom (original spelling) / Ref
    std::vector<LivenessPtr> children;
    SourcePos pos;

    static LivenessPtr make(Kind kind, std::vector<LivenessPtr> children, SourcePos pos = {}) {
        auto e = std::make_shared<LivenessExpr>();
        e->kind = kind;
        e->children = std::move(children);
        e->pos = pos;
        return e;
    }
    static LivenessPtr make_name(Kind kind, std::string name, SourcePos pos = {}) {
        auto e = std::make_shared<LivenessExpr>();
        e->kind = kind;
        e->name = std::move(name);
        e->pos = pos;
        return e;
    }
};

struct RoleLiveness {
    std::string role_name;  // first definition is the entry
    std::vector<std::pair<std::string, LivenessPtr>> definitions;

    const LivenessPtr* find(const std::string& name) const {
        for (const auto& [n, e] : definitions) {
            if (n == name) return &e;
        }
        return nullptr;
    }
};

struct GaiaOptions {
    bool bang_as_choice = false;  // opt-in mapping of `!` to `|`
};

namespace gaia_detail {

struct GaiaToken {
    enum class Kind { Name, Upper, Dot, Pipe, Bang, Star, Plus, LParen, RParen,
                      LBracket, RBracket, Assign, End };
    Kind kind;
    std::string text;
    SourcePos pos;
};

inline std::vector<GaiaToken> lex(std::string_view text) {
    std::vector<GaiaToken> out;
    int line = 1, column = 1;
    std::size_t i = 0;
    auto push = [&](GaiaToken::Kind kind, std::size_t len) {
        out.push_back({kind, std::string(text.substr(i, len)), {line, column}});
        column += static_cast<int>(len);
        i += len;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++column;
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (i + len < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i + len])) ||
                    text[i + len] == '_')) {
                ++len;
            }
            push(std::isupper(static_cast<unsigned char>(c)) ? GaiaToken::Kind::Upper
                                                             : GaiaToken::Kind::Name,
                 len);
            continue;
        }
        switch (c) {
            case '.': push(GaiaToken::Kind::Dot, 1); continue;
            case '|': push(GaiaToken::Kind::Pipe, 1); continue;
            case '!': push(GaiaToken::Kind::Bang, 1); continue;
            case '*': push(GaiaToken::Kind::Star, 1); continue;
            case '+': push(GaiaToken::Kind::Plus, 1); continue;
            case '(': push(GaiaToken::Kind::LParen, 1); continue;
            case ')': push(GaiaToken::Kind::RParen, 1); continue;
            case '[': push(GaiaToken::Kind::LBracket, 1); continue;
            case ']': push(GaiaToken::Kind::RBracket, 1); continue;
            case '=': push(GaiaToken::Kind::Assign, 1); continue;
            default:
                fail(ErrorCode::UnknownCharacter,
                     std::string("unexpected character '") + c + "' in liveness expression",
                     {line, column});
        }
    }
    out.push_back({GaiaToken::Kind::End, "", {line, column}});
    return out;
}

class LivenessParser {
public:
    LivenessParser(std::vector<GaiaToken> tokens, GaiaOptions options)
        : tokens_(std::move(tokens)), options_(options) {}

    RoleLiveness parse() {
        RoleLiveness role;
        while (peek().kind != GaiaToken::Kind::End) {
            const GaiaToken& name = expect(GaiaToken::Kind::Upper, "role or definition name");
            expect(GaiaToken::Kind::Assign, "'='");
            LivenessPtr expr = parse_choice();
            for (const auto& [existing, unused] : role.definitions) {
                if (existing == name.text) {
                    fail(ErrorCode::DuplicateDefinition,
                         "duplicate liveness definition '" + name.text + "'", name.pos);
                }
            }
            role.definitions.emplace_back(name.text, std::move(expr));
        }
        if (role.definitions.empty()) {
            fail(ErrorCode::SyntaxError, "no liveness definitions found");
        }
        role.role_name = role.definitions.front().first;
        validate(role);
        return role;
    }

private:
    const GaiaToken& peek() const { return tokens_[pos_]; }
    const GaiaToken& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    const GaiaToken& expect(GaiaToken::Kind kind, const char* what) {
        if (peek().kind != kind) {
            fail(ErrorCode::SyntaxError,
                 std::string("expected ") + what + " in liveness expression", peek().pos);
        }
        return advance();
    }

    LivenessPtr parse_choice() {
        std::vector<LivenessPtr> alternatives{parse_seq()};
        for (;;) {
            if (peek().kind == GaiaToken::Kind::Pipe) {
                advance();
            } else if (peek().kind == GaiaToken::Kind::Bang) {
                if (!options_.bang_as_choice) {
                    fail(ErrorCode::SyntaxError,
                         "unsupported operator '!' (enable the bang-as-choice option to read "
                         "it as '|')",
                         peek().pos);
                }
                advance();
            } else {
                break;
            }
            alternatives.push_back(parse_seq());
        }
        if (alternatives.size() == 1) return alternatives.front();
        return LivenessExpr::make(LivenessExpr::Kind::Choice, std::move(alternatives));
    }

    LivenessPtr parse_seq() {
        std::vector<LivenessPtr> items{parse_postfix()};
        while (peek().kind == GaiaToken::Kind::Dot) {
            advance();
            items.push_back(parse_postfix());
        }
        if (items.size() == 1) return items.front();
        return LivenessExpr::make(LivenessExpr::Kind::Seq, std::move(items));
    }

    LivenessPtr parse_postfix() {
        LivenessPtr expr = parse_primary();
        for (;;) {
            if (peek().kind == GaiaToken::Kind::Star) {
                const SourcePos at = advance().pos;
                expr = LivenessExpr::make(LivenessExpr::Kind::Star, {std::move(expr)}, at);
            } else if (peek().kind == GaiaToken::Kind::Plus) {
                const SourcePos at = advance().pos;
                expr = LivenessExpr::make(LivenessExpr::Kind::Plus, {std::move(expr)}, at);
            } else {
                return expr;
            }
        }
    }

    LivenessPtr parse_primary() {
        switch (peek().kind) {
            case GaiaToken::Kind::Name: {
                const GaiaToken& t = advance();
                return LivenessExpr::make_name(LivenessExpr::Kind::Atom, t.text, t.pos);
            }
            case GaiaToken::Kind::Upper: {
                const GaiaToken& t = advance();
                return LivenessExpr::make_name(LivenessExpr::Kind::Ref, t.text, t.pos);
            }
            case GaiaToken::Kind::LParen: {
                advance();
                LivenessPtr e = parse_choice();
                expect(GaiaToken::Kind::RParen, "')'");
                return e;
            }
            case GaiaToken::Kind::LBracket: {
                const SourcePos at = advance().pos;
                LivenessPtr e = parse_choice();
                expect(GaiaToken::Kind::RBracket, "']'");
                return LivenessExpr::make(LivenessExpr::Kind::Optional, {std::move(e)}, at);
            }
            default:
                fail(ErrorCode::SyntaxError,
                     "expected an activity name, reference, '(' or '['", peek().pos);
        }
    }

    void validate(const RoleLiveness& role) {
        for (const auto& [name, expr] : role.definitions) {
            std::set<std::string> visiting{name};
            check_refs(role, expr, visiting);
        }
    }
    void check_refs(const RoleLiveness& role, const LivenessPtr& expr,
                    std::set<std::string>& visiting) {
        if (expr->kind == LivenessExpr::Kind::Ref) {
            const LivenessPtr* target = role.find(expr->name);
            if (!target) {
                fail(ErrorCode::UnresolvedReference,
                     "unresolved liveness reference '" + expr->name + "'", expr->pos);
            }
            if (!visiting.insert(expr->name).second) {
                fail(ErrorCode::CyclicRef,
                     "cyclic liveness reference through '" + expr->name + "'", expr->pos);
            }
            check_refs(role, *target, visiting);
            visiting.erase(expr->name);
            return;
        }
        for (const LivenessPtr& child : expr->children) check_refs(role, child, visiting);
    }

    std::vector<GaiaToken> tokens_;
    GaiaOptions options_;
    std::size_t pos_ = 0;
};

inline LivenessPtr substitute(const RoleLiveness& role, const LivenessPtr& expr) {
    if (expr->kind == LivenessExpr::Kind::Ref) {
        return substitute(role, *role.find(expr->name));
    }
    if (expr->children.empty()) return expr;
    std::vector<LivenessPtr> children;
    children.reserve(expr->children.size());
    for (const LivenessPtr& child : expr->children) children.push_back(substitute(role, child));
    auto out = LivenessExpr::make(expr->kind, std::move(children), expr->pos);
    return out;
}

inline std::string canonical_activity(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

// --- Glushkov position automaton, then subset construction ---

struct PositionSets {
    bool nullable = false;
    std::set<int> first, last;
};

struct Glushkov {
    std::vector<std::string> symbol_of_position;       // canonical activity names
    std::map<int, std::set<int>> follow;
    PositionSets root;
};

inline PositionSets glushkov_walk(const LivenessPtr& expr, Glushkov& g) {
    switch (expr->kind) {
        case LivenessExpr::Kind::Atom: {
            const int p = static_cast<int>(g.symbol_of_position.size());
            g.symbol_of_position.push_back(canonical_activity(expr->name));
            PositionSets s;
            s.nullable = false;
            s.first = {p};
            s.last = {p};
            return s;
        }
        case LivenessExpr::Kind::Seq: {
            PositionSets acc = glushkov_walk(expr->children.front(), g);
            for (std::size_t i = 1; i < expr->children.size(); ++i) {
                PositionSets next = glushkov_walk(expr->children[i], g);
                for (int a : acc.last) {
                    g.follow[a].insert(next.first.begin(), next.first.end());
                }
                PositionSets merged;
                merged.nullable = acc.nullable && next.nullable;
                merged.first = acc.first;
                if (acc.nullable) merged.first.insert(next.first.begin(), next.first.end());
                merged.last = next.last;
                if (next.nullable) merged.last.insert(acc.last.begin(), acc.last.end());
                acc = std::move(merged);
            }
            return acc;
        }
        case LivenessExpr::Kind::Choice: {
            PositionSets acc;
            acc.nullable = false;
            for (const LivenessPtr& child : expr->children) {
                PositionSets s = glushkov_walk(child, g);
                acc.nullable = acc.nullable || s.nullable;
                acc.first.insert(s.first.begin(), s.first.end());
                acc.last.insert(s.last.begin(), s.last.end());
            }
            return acc;
        }
        case LivenessExpr::Kind::Star:
        case LivenessExpr::Kind::Plus: {
            PositionSets s = glushkov_walk(expr->children.front(), g);
            for (int a : s.last) {
                g.follow[a].insert(s.first.begin(), s.first.end());
            }
            if (expr->kind == LivenessExpr::Kind::Star) s.nullable = true;
            return s;
        }
        case LivenessExpr::Kind::Optional: {
            PositionSets s = glushkov_walk(expr->children.front(), g);
            s.nullable = true;
            return s;
        }
        case LivenessExpr::Kind::Ref:
            fail(ErrorCode::CyclicRef, "unsubstituted reference in liveness expression",
                 expr->pos);
    }
    return {};
}

}  // namespace gaia_detail

inline RoleLiveness parse_liveness(std::string_view text, GaiaOptions options = {}) {
    return gaia_detail::LivenessParser(gaia_detail::lex(text), options).parse();
}

struct GaiaTranslation {
    Spec spec;  // one process definition named after the role
    std::vector<std::pair<std::string, std::string>> name_map;  // original -> canonical
};

/// Translates a role's liveness expression into a deterministic FSP-lite
/// process whose complete traces (paths from the initial state to END) are
/// exactly the expression's language. Glushkov position automaton followed by
/// subset construction; accepting states carry an END alternative so they can
/// both terminate and continue.
inline GaiaTranslation to_fsp(const RoleLiveness& role) {
    using namespace gaia_detail;

    GaiaTranslation out;
    LivenessPtr expr = substitute(role, role.definitions.front().second);

    // Record the activity-name canonicalization for traceability.
    {
        std::set<std::string> seen;
        std::vector<const LivenessExpr*> stack{expr.get()};
        while (!stack.empty()) {
            const LivenessExpr* e = stack.back();
            stack.pop_back();
            if (e->kind == LivenessExpr::Kind::Atom && seen.insert(e->name).second) {
                out.name_map.emplace_back(e->name, canonical_activity(e->name));
            }
            for (const LivenessPtr& c : e->children) stack.push_back(c.get());
        }
        std::sort(out.name_map.begin(), out.name_map.end());
    }

    Glushkov g;
    PositionSets root = glushkov_walk(expr, g);

    // Subset construction over canonical symbols, BFS order. The NFA start is
    // the synthetic position -1 (its successors are the first positions), so
    // it stays distinct from any position subset reached later.
    constexpr int kStart = -1;
    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> subsets;
    std::vector<bool> accepting;
    auto is_accepting = [&](const std::set<int>& subset) {
        for (int p : subset) {
            if (p == kStart) {
                if (root.nullable) return true;
            } else if (root.last.count(p)) {
                return true;
            }
        }
        return false;
    };
    const std::set<int> start{kStart};
    ids.emplace(start, 0);
    subsets.push_back(start);
    accepting.push_back(is_accepting(start));

    struct DfaEdge {
        std::string symbol;
        int target;
    };
    std::vector<std::vector<DfaEdge>> edges;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        const std::set<int> subset = subsets[s];
        std::map<std::string, std::set<int>> moves;  // symbol-sorted
        for (int p : subset) {
            const std::set<int>* succ = nullptr;
            if (p == kStart) {
                succ = &root.first;
            } else {
                auto it = g.follow.find(p);
                if (it == g.follow.end()) continue;
                succ = &it->second;
            }
            for (int q : *succ) {
                moves[g.symbol_of_position[static_cast<std::size_t>(q)]].insert(q);
            }
        }
        std::vector<DfaEdge> list;
        for (const auto& [symbol, target_set] : moves) {
            auto [it, inserted] = ids.emplace(target_set, static_cast<int>(subsets.size()));
            if (inserted) {
                subsets.push_back(target_set);
                accepting.push_back(is_accepting(target_set));
            }
            list.push_back(DfaEdge{symbol, it->second});
        }
        edges.push_back(std::move(list));
    }

    // Render as an FSP-lite process definition.
    ProcessDef def;
    auto local_name = [&](int state) {
        return state == 0 ? role.role_name : role.role_name + "_" + std::to_string(state);
    };
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        LocalDef local;
        local.name = local_name(static_cast<int>(s));
        auto body = std::make_shared<ProcExpr>();
        if (edges[s].empty()) {
            body->kind = accepting[s] ? ProcExpr::Kind::End : ProcExpr::Kind::Stop;
        } else {
            body->kind = ProcExpr::Kind::Choice;
            body->accepts_end = accepting[s];
            for (const DfaEdge& e : edges[s]) {
                Branch branch;
                ActionElem elem;
                elem.kind = ActionElem::Kind::Single;
                elem.single.parts.push_back(
                    ActionPart{ActionPart::Kind::Word, e.symbol, nullptr, "", {}});
                branch.actions.push_back(std::move(elem));
                auto next = std::make_shared<ProcExpr>();
                next->kind = ProcExpr::Kind::Reference;
                next->ref_name = local_name(e.target);
                branch.next = next;
                body->branches.push_back(std::move(branch));
            }
        }
        local.body = body;
        def.locals.push_back(std::move(local));
    }
    out.spec.process_defs.push_back(std::move(def));
    return out;
}

}  // namespace fspv
