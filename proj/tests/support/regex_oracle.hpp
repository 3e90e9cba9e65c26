#pragma once

// Brute-force language oracle for liveness expressions, built on Brzozowski
// derivatives — a construction route deliberately different from the
// Glushkov/subset pipeline it checks. Words are sequences of canonical
// activity names.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fspv/gaia.hpp"

namespace regex_oracle {

struct Re;
using RePtr = std::shared_ptr<const Re>;

struct Re {
    enum class Kind { Empty, Eps, Sym, Seq, Alt, Star };
    Kind kind;
    std::string sym;
    RePtr a, b;
};

inline RePtr make(Re::Kind kind, RePtr a = nullptr, RePtr b = nullptr, std::string sym = "") {
    auto r = std::make_shared<Re>();
    r->kind = kind;
    r->a = std::move(a);
    r->b = std::move(b);
    r->sym = std::move(sym);
    return r;
}

inline RePtr empty() { static RePtr r = make(Re::Kind::Empty); return r; }
inline RePtr eps() { static RePtr r = make(Re::Kind::Eps); return r; }
inline RePtr sym(std::string s) { return make(Re::Kind::Sym, nullptr, nullptr, std::move(s)); }

// smart constructors keep emptiness detectable structurally
inline RePtr seq(RePtr a, RePtr b) {
    if (a->kind == Re::Kind::Empty || b->kind == Re::Kind::Empty) return empty();
    if (a->kind == Re::Kind::Eps) return b;
    if (b->kind == Re::Kind::Eps) return a;
    return make(Re::Kind::Seq, std::move(a), std::move(b));
}
inline RePtr alt(RePtr a, RePtr b) {
    if (a->kind == Re::Kind::Empty) return b;
    if (b->kind == Re::Kind::Empty) return a;
    return make(Re::Kind::Alt, std::move(a), std::move(b));
}
inline RePtr star(RePtr a) {
    if (a->kind == Re::Kind::Empty || a->kind == Re::Kind::Eps) return eps();
    if (a->kind == Re::Kind::Star) return a;
    return make(Re::Kind::Star, std::move(a));
}

inline bool nullable(const RePtr& r) {
    switch (r->kind) {
        case Re::Kind::Empty: return false;
        case Re::Kind::Eps: return true;
        case Re::Kind::Sym: return false;
        case Re::Kind::Seq: return nullable(r->a) && nullable(r->b);
        case Re::Kind::Alt: return nullable(r->a) || nullable(r->b);
        case Re::Kind::Star: return true;
    }
    return false;
}

inline RePtr derivative(const RePtr& r, const std::string& s) {
    switch (r->kind) {
        case Re::Kind::Empty:
        case Re::Kind::Eps:
            return empty();
        case Re::Kind::Sym:
            return r->sym == s ? eps() : empty();
        case Re::Kind::Seq: {
            RePtr left = seq(derivative(r->a, s), r->b);
            if (nullable(r->a)) return alt(std::move(left), derivative(r->b, s));
            return left;
        }
        case Re::Kind::Alt:
            return alt(derivative(r->a, s), derivative(r->b, s));
        case Re::Kind::Star:
            return seq(derivative(r->a, s), star(r->a));
    }
    return empty();
}

/// Lowers a (substituted, Ref-free) liveness expression; Plus and Optional
/// reduce to the Kleene primitives.
inline RePtr from_liveness(const fspv::LivenessPtr& e) {
    using K = fspv::LivenessExpr::Kind;
    switch (e->kind) {
        case K::Atom:
            return sym(fspv::gaia_detail::canonical_activity(e->name));
        case K::Seq: {
            RePtr acc = eps();
            for (const auto& child : e->children) acc = seq(acc, from_liveness(child));
            return acc;
        }
        case K::Choice: {
            RePtr acc = empty();
            for (const auto& child : e->children) acc = alt(acc, from_liveness(child));
            return acc;
        }
        case K::Star:
            return star(from_liveness(e->children.front()));
        case K::Plus: {
            RePtr inner = from_liveness(e->children.front());
            return seq(inner, star(inner));
        }
        case K::Optional:
            return alt(eps(), from_liveness(e->children.front()));
        case K::Ref:
            break;
    }
    throw std::logic_error("liveness expression still contains references");
}

inline void collect_symbols(const RePtr& r, std::set<std::string>& out) {
    switch (r->kind) {
        case Re::Kind::Sym: out.insert(r->sym); return;
        case Re::Kind::Seq:
        case Re::Kind::Alt:
            collect_symbols(r->a, out);
            collect_symbols(r->b, out);
            return;
        case Re::Kind::Star: collect_symbols(r->a, out); return;
        default: return;
    }
}

/// Every word of the language with length <= max_len, by derivative descent
/// over viable prefixes only.
inline std::set<std::vector<std::string>> language_upto(const RePtr& r, int max_len) {
    std::set<std::string> symbols;
    collect_symbols(r, symbols);

    std::set<std::vector<std::string>> words;
    std::vector<std::string> prefix;
    auto walk = [&](auto&& self, const RePtr& cur) -> void {
        if (nullable(cur)) words.insert(prefix);
        if (static_cast<int>(prefix.size()) == max_len) return;
        for (const std::string& s : symbols) {
            RePtr d = derivative(cur, s);
            if (d->kind == Re::Kind::Empty) continue;
            prefix.push_back(s);
            self(self, d);
            prefix.pop_back();
        }
    };
    walk(walk, r);
    return words;
}

}  // namespace regex_oracle
