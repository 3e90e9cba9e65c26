#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "fspv/label.hpp"

namespace fspv {

/// Absorbing ERROR sentinel. Never a transition source and not counted in
/// num_states; serialized as the last state index in `.aut` output.
inline constexpr int kErrorState = -1;

inline constexpr std::size_t kDefaultStateLimit = 1u << 20;  // 1,048,576 states

struct Transition {
    int label = 0;   // index into alphabet
    int target = 0;  // state index or kErrorState

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Lts {
    std::string name;
    std::vector<Label> alphabet;  // sorted, unique
    int num_states = 1;
    std::vector<std::vector<Transition>> transitions;  // per state, sorted, deduplicated
    std::vector<bool> end_states;                      // successful termination markers

    // Composition metadata. all_parts_stuck[s] is true when every underlying
    // component is stuck (no moves, not ended) at s; compiled processes mark
    // their own dead states. property_names records completed safety
    // automata folded into this LTS, for violation attribution.
    std::vector<bool> all_parts_stuck;
    std::vector<std::string> property_names;

    bool is_end(int state) const {
        return state >= 0 && state < static_cast<int>(end_states.size()) && end_states[state];
    }
    bool is_stuck_everywhere(int state) const {
        return state >= 0 && state < static_cast<int>(all_parts_stuck.size()) &&
               all_parts_stuck[state];
    }
    std::size_t num_transitions() const {
        std::size_t total = 0;
        for (const auto& list : transitions) total += list.size();
        return total;
    }
    bool has_error_transition() const {
        for (const auto& list : transitions) {
            for (const auto& t : list) {
                if (t.target == kErrorState) return true;
            }
        }
        return false;
    }
    int label_index(const Label& l) const {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), l);
        if (it != alphabet.end() && *it == l) return static_cast<int>(it - alphabet.begin());
        return -1;
    }
};

inline std::vector<Label> alphabet_of(const Lts& lts) { return lts.alphabet; }

// ---------------------------------------------------------------------------
// Aldebaran `.aut` export. Header `des (0, T, S)`; S counts a trailing ERROR
// row when any transition targets it (ERROR becomes index S-1). Lines are
// `(from, "label", to)` sorted by (from, label), which is the stored order.
// ---------------------------------------------------------------------------

inline void write_aut(const Lts& lts, std::ostream& out) {
    const bool has_error = lts.has_error_transition();
    const int total_states = lts.num_states + (has_error ? 1 : 0);
    const int error_index = lts.num_states;
    out << "des (0, " << lts.num_transitions() << ", " << total_states << ")\n";
    for (int s = 0; s < lts.num_states; ++s) {
        for (const Transition& t : lts.transitions[s]) {
            const int target = t.target == kErrorState ? error_index : t.target;
            out << "(" << s << ", \"" << lts.alphabet[t.label].text() << "\", " << target
                << ")\n";
        }
    }
}

// ---------------------------------------------------------------------------
// Graphviz export: initial state double-circled, ERROR square, END states
// marked with a peripheral ring.
// ---------------------------------------------------------------------------

inline void write_dot(const Lts& lts, std::ostream& out) {
    out << "digraph \"" << lts.name << "\" {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  0 [shape=doublecircle];\n";
    for (int s = 0; s < lts.num_states; ++s) {
        if (lts.is_end(s) && s != 0) out << "  " << s << " [peripheries=2];\n";
    }
    if (lts.has_error_transition()) {
        out << "  error [label=\"ERROR\", shape=square];\n";
    }
    for (int s = 0; s < lts.num_states; ++s) {
        for (const Transition& t : lts.transitions[s]) {
            out << "  " << s << " -> ";
            if (t.target == kErrorState) {
                out << "error";
            } else {
                out << t.target;
            }
            out << " [label=\"" << lts.alphabet[t.label].text() << "\"];\n";
        }
    }
    out << "}\n";
}

}  // namespace fspv
