#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fspv/ast.hpp"
#include "fspv/compiler.hpp"
#include "fspv/label.hpp"
#include "fspv/lts.hpp"
#include "fspv/property.hpp"

namespace fspv {

/// Every label of the process gains the given prefix (c[1]:P turns l into
/// c.1.l); structure is otherwise unchanged.
inline Lts apply_prefix(const Lts& lts, const Label& prefix) {
    Lts out = lts;
    std::vector<Label> prefixed;
    prefixed.reserve(lts.alphabet.size());
    for (const Label& l : lts.alphabet) prefixed.push_back(l.with_prefix(prefix));

    // A shared prefix preserves relative order, but rebuild the index map
    // rather than rely on it.
    std::vector<Label> sorted = prefixed;
    std::sort(sorted.begin(), sorted.end());
    out.alphabet = sorted;
    std::vector<int> remap(prefixed.size());
    for (std::size_t i = 0; i < prefixed.size(); ++i) {
        remap[i] = out.label_index(prefixed[i]);
    }
    for (auto& list : out.transitions) {
        for (Transition& t : list) t.label = remap[static_cast<std::size_t>(t.label)];
        std::sort(list.begin(), list.end());
    }
    return out;
}

/// Renames labels by (new, old) pairs, applied simultaneously; transitions on
/// a renamed label merge with any existing `new` label. An `old` missing from
/// the alphabet is reported into `warnings` when given.
inline Lts apply_relabel(const Lts& lts, const std::vector<RelabelPair>& pairs,
                         std::vector<std::string>* warnings = nullptr) {
    std::map<Label, Label> rename;
    for (const RelabelPair& p : pairs) {
        rename[Label::from_text(p.old_label)] = Label::from_text(p.new_label);
    }
    if (warnings) {
        for (const RelabelPair& p : pairs) {
            Label old = Label::from_text(p.old_label);
            if (lts.label_index(old) < 0) {
                warnings->push_back("UnknownOldLabel: relabel '" + p.new_label + "/" +
                                    p.old_label + "' does not match any label of '" +
                                    lts.name + "'");
            }
        }
    }

    std::vector<Label> renamed;
    renamed.reserve(lts.alphabet.size());
    for (const Label& l : lts.alphabet) {
        auto it = rename.find(l);
        renamed.push_back(it == rename.end() ? l : it->second);
    }
    std::set<Label> unique(renamed.begin(), renamed.end());

    Lts out = lts;
    out.alphabet.assign(unique.begin(), unique.end());
    std::vector<int> remap(renamed.size());
    for (std::size_t i = 0; i < renamed.size(); ++i) {
        remap[i] = out.label_index(renamed[i]);
    }
    for (auto& list : out.transitions) {
        for (Transition& t : list) t.label = remap[static_cast<std::size_t>(t.label)];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parallel composition: synchronization on shared labels, interleaving on
// private ones. On-the-fly BFS — only reachable composed states materialize.
// Any synchronizing component entering ERROR collapses the composed target to
// ERROR. Tuple numbering is BFS discovery order with per-state moves
// enumerated in alphabet order, so the output is deterministic.
// ---------------------------------------------------------------------------

namespace detail {

struct TupleHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace detail

inline Lts compose(const std::vector<Lts>& parts, const std::string& name,
                   std::size_t limit = kDefaultStateLimit) {
    if (parts.empty()) {
        fail(ErrorCode::UnresolvedReference, "cannot compose an empty component list");
    }
    const std::size_t k = parts.size();

    std::set<Label> labels;
    for (const Lts& p : parts) labels.insert(p.alphabet.begin(), p.alphabet.end());
    std::vector<Label> alphabet(labels.begin(), labels.end());

    // part_label[i][a]: index of alphabet[a] within part i, or -1.
    std::vector<std::vector<int>> part_label(k, std::vector<int>(alphabet.size(), -1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            part_label[i][a] = parts[i].label_index(alphabet[a]);
        }
    }

    // A part counts toward composed END only if it has any behavior at all;
    // a bare STOP process constrains nothing and cannot terminate.
    std::vector<bool> behavioral(k, false);
    bool any_behavioral = false;
    for (std::size_t i = 0; i < k; ++i) {
        bool has_end = std::find(parts[i].end_states.begin(), parts[i].end_states.end(), true) !=
                       parts[i].end_states.end();
        behavioral[i] = has_end || parts[i].num_transitions() > 0;
        any_behavioral = any_behavioral || behavioral[i];
    }

    auto part_stuck = [&](std::size_t i, int state) {
        return parts[i].transitions[static_cast<std::size_t>(state)].empty() &&
               !parts[i].is_end(state);
    };

    std::unordered_map<std::vector<int>, int, detail::TupleHash> ids;
    std::vector<std::vector<int>> tuples;
    Lts out;
    out.name = name;
    out.alphabet = alphabet;

    auto intern = [&](const std::vector<int>& tuple) {
        auto it = ids.find(tuple);
        if (it != ids.end()) return it->second;
        if (tuples.size() >= limit) {
            fail(ErrorCode::StateLimitExceeded,
                 "state limit of " + std::to_string(limit) + " exceeded while composing '" +
                     name + "'");
        }
        const int id = static_cast<int>(tuples.size());
        ids.emplace(tuple, id);
        tuples.push_back(tuple);
        bool all_end = any_behavioral;
        bool all_stuck = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (behavioral[i] && !parts[i].is_end(tuple[i])) all_end = false;
            if (!part_stuck(i, tuple[i])) all_stuck = false;
        }
        out.end_states.push_back(all_end);
        out.all_parts_stuck.push_back(all_stuck);
        return id;
    };

    std::vector<int> initial(k, 0);
    intern(initial);

    // Per-part target lists for the current state and label.
    std::vector<std::vector<int>> choices(k);
    for (std::size_t s = 0; s < tuples.size(); ++s) {
        const std::vector<int> tuple = tuples[s];  // copy: tuples grows below
        std::vector<Transition> list;
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            bool enabled = true;
            std::vector<std::size_t> participants;
            for (std::size_t i = 0; i < k && enabled; ++i) {
                const int pl = part_label[i][a];
                if (pl < 0) continue;
                participants.push_back(i);
                choices[i].clear();
                for (const Transition& t :
                     parts[i].transitions[static_cast<std::size_t>(tuple[i])]) {
                    if (t.label == pl) choices[i].push_back(t.target);
                }
                if (choices[i].empty()) enabled = false;
            }
            if (!enabled || participants.empty()) continue;

            // Cartesian product over participant choices, in stored order.
            std::vector<std::size_t> pick(participants.size(), 0);
            for (;;) {
                std::vector<int> next = tuple;
                bool to_error = false;
                for (std::size_t pi = 0; pi < participants.size(); ++pi) {
                    const int target = choices[participants[pi]][pick[pi]];
                    if (target == kErrorState) {
                        to_error = true;
                        break;
                    }
                    next[participants[pi]] = target;
                }
                list.push_back(Transition{static_cast<int>(a),
                                          to_error ? kErrorState : intern(next)});
                std::size_t d = participants.size();
                while (d > 0) {
                    if (++pick[d - 1] < choices[participants[d - 1]].size()) break;
                    pick[d - 1] = 0;
                    --d;
                }
                if (d == 0) break;
            }
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        out.transitions.push_back(std::move(list));
    }

    out.num_states = static_cast<int>(tuples.size());
    for (const Lts& p : parts) {
        for (const std::string& pn : p.property_names) {
            if (std::find(out.property_names.begin(), out.property_names.end(), pn) ==
                out.property_names.end()) {
                out.property_names.push_back(pn);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composite definitions: compile each component (completing property
// processes), apply prefix labeling and replication, distribute relabels over
// the assembled components, then compose. Components may reference other
// composites.
// ---------------------------------------------------------------------------

using CompiledCache = std::map<std::string, Lts>;

inline Lts build_composite(const Spec& spec, const std::string& name, CompiledCache& cache,
                           std::size_t limit = kDefaultStateLimit,
                           std::vector<std::string>* warnings = nullptr);

namespace detail {

inline const Lts& resolve_unit(const Spec& spec, const std::string& name, CompiledCache& cache,
                               std::size_t limit, std::vector<std::string>* warnings) {
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    Lts built;
    if (spec.find_process(name)) {
        built = compile_process(spec, name, limit);
        if (spec.is_property(name)) built = make_property(built);
    } else if (spec.find_composite(name)) {
        built = build_composite(spec, name, cache, limit, warnings);
    } else {
        fail(ErrorCode::UnresolvedReference, "unknown component '" + name + "'");
    }
    return cache.emplace(name, std::move(built)).first->second;
}

}  // namespace detail

inline Lts build_composite(const Spec& spec, const std::string& name, CompiledCache& cache,
                           std::size_t limit, std::vector<std::string>* warnings) {
    const CompositeDef* def = spec.find_composite(name);
    if (!def) {
        fail(ErrorCode::UnresolvedReference, "no composite definition named '" + name + "'");
    }

    std::vector<Lts> assembled;
    for (const Component& comp : def->components) {
        const Lts& base = detail::resolve_unit(spec, comp.target, cache, limit, warnings);
        if (!comp.labeling) {
            assembled.push_back(base);
            continue;
        }
        const Labeling& labeling = *comp.labeling;
        switch (labeling.kind) {
            case Labeling::Kind::Plain:
                assembled.push_back(apply_prefix(base, Label(labeling.word)));
                break;
            case Labeling::Kind::Single:
                assembled.push_back(apply_prefix(base, Label(labeling.word, labeling.lo)));
                break;
            case Labeling::Kind::Range:
                for (long v = labeling.lo; v <= labeling.hi; ++v) {
                    assembled.push_back(apply_prefix(base, Label(labeling.word, v)));
                }
                break;
        }
    }

    if (!def->relabels.empty()) {
        if (warnings) {
            // The warning is judged against the union of component alphabets:
            // each pair usually matches exactly one component.
            for (const RelabelPair& p : def->relabels) {
                Label old = Label::from_text(p.old_label);
                bool found = false;
                for (const Lts& part : assembled) {
                    if (part.label_index(old) >= 0) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    warnings->push_back("UnknownOldLabel: relabel '" + p.new_label + "/" +
                                        p.old_label + "' matches no component of '" + name +
                                        "'");
                }
            }
        }
        for (Lts& part : assembled) {
            part = apply_relabel(part, def->relabels, nullptr);
        }
    }

    return compose(assembled, name, limit);
}

}  // namespace fspv
