#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fspv/ast.hpp"
#include "fspv/lts.hpp"

namespace fspv {

struct Violation {
    enum class Kind { Safety, Deadlock, Progress };

    Kind kind = Kind::Safety;
    std::string subject;  // property/progress name, or "DEADLOCK"
    std::vector<Label> trace;
    std::optional<std::vector<Label>> cycle;  // progress only
    bool terminal_stop = false;  // deadlock where every component is STOPped
};

inline const char* violation_kind_name(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::Safety: return "safety";
        case Violation::Kind::Deadlock: return "deadlock";
        case Violation::Kind::Progress: return "progress";
    }
    return "?";
}

struct ReportStats {
    int states = 0;
    long transitions = 0;
    int alphabet = 0;
    long elapsed_ms = 0;

    friend bool operator==(const ReportStats&, const ReportStats&) = default;
};

struct Report {
    std::string target;
    ReportStats stats;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    int terminal_set_count = 0;

    bool pass() const { return violations.empty(); }
};

struct TerminalSet {
    std::vector<int> states;      // sorted
    std::vector<Label> labels;    // labels on internal transitions, sorted
};

namespace detail {

/// Shortest-path tree from state 0. Transition lists are sorted by label, so
/// first discovery yields the lexicographically least shortest path and the
/// BFS dequeue order enumerates states in that same path order.
struct BfsTree {
    std::vector<int> order;        // states in discovery order
    std::vector<int> level;        // -1 = unreachable
    std::vector<int> parent;       // discovery parent
    std::vector<int> parent_label;

    explicit BfsTree(const Lts& lts)
        : level(static_cast<std::size_t>(lts.num_states), -1),
          parent(static_cast<std::size_t>(lts.num_states), -1),
          parent_label(static_cast<std::size_t>(lts.num_states), -1) {
        order.reserve(static_cast<std::size_t>(lts.num_states));
        level[0] = 0;
        order.push_back(0);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int s = order[head];
            for (const Transition& t : lts.transitions[static_cast<std::size_t>(s)]) {
                if (t.target == kErrorState) continue;
                if (level[static_cast<std::size_t>(t.target)] != -1) continue;
                level[static_cast<std::size_t>(t.target)] = level[static_cast<std::size_t>(s)] + 1;
                parent[static_cast<std::size_t>(t.target)] = s;
                parent_label[static_cast<std::size_t>(t.target)] = t.label;
                order.push_back(t.target);
            }
        }
    }

    std::vector<Label> path_to(const Lts& lts, int state) const {
        std::vector<Label> trace;
        for (int s = state; s != 0; s = parent[static_cast<std::size_t>(s)]) {
            trace.push_back(lts.alphabet[parent_label[static_cast<std::size_t>(s)]]);
        }
        std::reverse(trace.begin(), trace.end());
        return trace;
    }
};

inline std::string safety_subject(const Lts& lts) {
    if (lts.property_names.empty()) return "ERROR";
    std::string subject;
    for (const std::string& name : lts.property_names) {
        if (!subject.empty()) subject += ",";
        subject += name;
    }
    return subject;
}

}  // namespace detail

/// Shortest trace to ERROR (BFS level, lexicographic label tie-break), or
/// absent when the sentinel is unreachable.
inline std::optional<Violation> check_safety(const Lts& lts) {
    detail::BfsTree tree(lts);
    for (int s : tree.order) {
        for (const Transition& t : lts.transitions[static_cast<std::size_t>(s)]) {
            if (t.target != kErrorState) continue;
            Violation v;
            v.kind = Violation::Kind::Safety;
            v.subject = detail::safety_subject(lts);
            v.trace = tree.path_to(lts, s);
            v.trace.push_back(lts.alphabet[t.label]);
            return v;
        }
    }
    return std::nullopt;
}

/// Shortest trace to a reachable state with no outgoing transitions that is
/// not a successful-termination state.
inline std::optional<Violation> check_deadlock(const Lts& lts) {
    detail::BfsTree tree(lts);
    for (int s : tree.order) {
        if (!lts.transitions[static_cast<std::size_t>(s)].empty()) continue;
        if (lts.is_end(s)) continue;
        Violation v;
        v.kind = Violation::Kind::Deadlock;
        v.subject = "DEADLOCK";
        v.trace = tree.path_to(lts, s);
        v.terminal_stop = lts.is_stuck_everywhere(s);
        return v;
    }
    return std::nullopt;
}

/// Bottom strongly connected components of the reachable graph (transitions
/// to ERROR are not graph edges; safety owns the sentinel). A stuck non-end
/// state is a terminal set with an empty label set; a lone END state is
/// successful termination, not a terminal set. Sets are returned ordered by
/// their smallest state index.
inline std::vector<TerminalSet> terminal_sets(const Lts& lts) {
    const std::size_t n = static_cast<std::size_t>(lts.num_states);
    detail::BfsTree tree(lts);

    // Iterative Tarjan over the reachable states.
    std::vector<int> index(n, -1), lowlink(n, 0), component(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    int component_count = 0;

    struct Frame {
        int state;
        std::size_t edge;
    };
    for (int root : tree.order) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] =
            next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& edges = lts.transitions[static_cast<std::size_t>(f.state)];
            if (f.edge < edges.size()) {
                const int target = edges[f.edge++].target;
                if (target == kErrorState) continue;
                if (index[static_cast<std::size_t>(target)] == -1) {
                    index[static_cast<std::size_t>(target)] =
                        lowlink[static_cast<std::size_t>(target)] = next_index++;
                    stack.push_back(target);
                    on_stack[static_cast<std::size_t>(target)] = true;
                    frames.push_back(Frame{target, 0});
                } else if (on_stack[static_cast<std::size_t>(target)]) {
                    lowlink[static_cast<std::size_t>(f.state)] =
                        std::min(lowlink[static_cast<std::size_t>(f.state)],
                                 index[static_cast<std::size_t>(target)]);
                }
            } else {
                if (lowlink[static_cast<std::size_t>(f.state)] ==
                    index[static_cast<std::size_t>(f.state)]) {
                    int member;
                    do {
                        member = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(member)] = false;
                        component[static_cast<std::size_t>(member)] = component_count;
                    } while (member != f.state);
                    ++component_count;
                }
                const int done = f.state;
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent_state = frames.back().state;
                    lowlink[static_cast<std::size_t>(parent_state)] =
                        std::min(lowlink[static_cast<std::size_t>(parent_state)],
                                 lowlink[static_cast<std::size_t>(done)]);
                }
            }
        }
    }

    std::vector<bool> bottom(static_cast<std::size_t>(component_count), true);
    for (int s : tree.order) {
        for (const Transition& t : lts.transitions[static_cast<std::size_t>(s)]) {
            if (t.target == kErrorState) continue;
            if (component[static_cast<std::size_t>(s)] !=
                component[static_cast<std::size_t>(t.target)]) {
                bottom[static_cast<std::size_t>(component[static_cast<std::size_t>(s)])] = false;
            }
        }
    }

    std::vector<std::vector<int>> members(static_cast<std::size_t>(component_count));
    for (int s : tree.order) {
        members[static_cast<std::size_t>(component[static_cast<std::size_t>(s)])].push_back(s);
    }

    std::vector<TerminalSet> sets;
    for (int c = 0; c < component_count; ++c) {
        if (!bottom[static_cast<std::size_t>(c)]) continue;
        auto& states = members[static_cast<std::size_t>(c)];
        std::sort(states.begin(), states.end());
        std::set<Label> internal;
        bool has_internal = false;
        for (int s : states) {
            for (const Transition& t : lts.transitions[static_cast<std::size_t>(s)]) {
                if (t.target == kErrorState) continue;
                if (component[static_cast<std::size_t>(t.target)] == c) {
                    internal.insert(lts.alphabet[t.label]);
                    has_internal = true;
                }
            }
        }
        if (states.size() == 1 && !has_internal && lts.is_end(states.front())) {
            continue;  // successful termination
        }
        TerminalSet set;
        set.states = std::move(states);
        set.labels.assign(internal.begin(), internal.end());
        sets.push_back(std::move(set));
    }
    std::sort(sets.begin(), sets.end(), [](const TerminalSet& a, const TerminalSet& b) {
        return a.states.front() < b.states.front();
    });
    return sets;
}

namespace detail {

/// Shortest cycle through `entry` inside the given state set (by edge count,
/// labels taken in stored order → lexicographic tie-break). Empty when the
/// entry has no cycle, i.e. a dead terminal state.
inline std::vector<Label> cycle_within(const Lts& lts, const std::vector<int>& states,
                                       int entry) {
    std::set<int> in_set(states.begin(), states.end());
    std::vector<int> level(static_cast<std::size_t>(lts.num_states), -1);
    std::vector<int> parent(static_cast<std::size_t>(lts.num_states), -1);
    std::vector<int> parent_label(static_cast<std::size_t>(lts.num_states), -1);
    std::vector<int> order;

    // BFS from entry; the first edge closing back on entry ends the search.
    order.push_back(entry);
    level[static_cast<std::size_t>(entry)] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int s = order[head];
        for (const Transition& t : lts.transitions[static_cast<std::size_t>(s)]) {
            if (t.target == kErrorState || !in_set.count(t.target)) continue;
            if (t.target == entry) {
                std::vector<Label> cycle;
                cycle.push_back(lts.alphabet[t.label]);
                for (int cur = s; cur != entry; cur = parent[static_cast<std::size_t>(cur)]) {
                    cycle.push_back(lts.alphabet[parent_label[static_cast<std::size_t>(cur)]]);
                }
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (level[static_cast<std::size_t>(t.target)] != -1) continue;
            level[static_cast<std::size_t>(t.target)] = level[static_cast<std::size_t>(s)] + 1;
            parent[static_cast<std::size_t>(t.target)] = s;
            parent_label[static_cast<std::size_t>(t.target)] = t.label;
            order.push_back(t.target);
        }
    }
    return {};
}

}  // namespace detail

/// A progress property {a1..an} is violated when some terminal set has no ai
/// on its internal transitions: a fair infinite execution can stay there and
/// never perform any of them. One violation per progress definition, against
/// the closest violating terminal set.
inline std::vector<Violation> check_progress(const Lts& lts,
                                             const std::vector<ProgressDef>& defs,
                                             std::vector<std::string>* warnings = nullptr) {
    if (defs.empty()) return {};
    const std::vector<TerminalSet> sets = terminal_sets(lts);
    detail::BfsTree tree(lts);

    std::vector<Violation> out;
    for (const ProgressDef& def : defs) {
        std::set<Label> wanted;
        for (const std::string& text : def.labels) {
            Label l = Label::from_text(text);
            if (warnings && lts.label_index(l) < 0) {
                warnings->push_back("UnknownProgressLabel: progress '" + def.name +
                                    "' names '" + text + "' which is not in the alphabet of '" +
                                    lts.name + "'");
            }
            wanted.insert(std::move(l));
        }

        const TerminalSet* worst = nullptr;
        int worst_entry = -1;
        for (const TerminalSet& set : sets) {
            bool satisfied = false;
            for (const Label& l : set.labels) {
                if (wanted.count(l)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            // entry state: closest by BFS level, then earliest discovered
            int entry = -1;
            for (int s : tree.order) {
                if (std::binary_search(set.states.begin(), set.states.end(), s)) {
                    entry = s;
                    break;
                }
            }
            if (!worst ||
                tree.level[static_cast<std::size_t>(entry)] <
                    tree.level[static_cast<std::size_t>(worst_entry)]) {
                worst = &set;
                worst_entry = entry;
            }
        }
        if (!worst) continue;

        Violation v;
        v.kind = Violation::Kind::Progress;
        v.subject = def.name;
        v.trace = tree.path_to(lts, worst_entry);
        v.cycle = detail::cycle_within(lts, worst->states, worst_entry);
        out.push_back(std::move(v));
    }
    return out;
}

/// Aggregates safety, deadlock and progress checks into one report.
inline Report run_all(const Lts& lts, const Spec& spec,
                      std::vector<std::string> warnings = {}) {
    const auto started = std::chrono::steady_clock::now();
    Report report;
    report.target = lts.name;
    report.warnings = std::move(warnings);

    if (auto v = check_safety(lts)) report.violations.push_back(std::move(*v));
    if (auto v = check_deadlock(lts)) report.violations.push_back(std::move(*v));
    report.terminal_set_count = static_cast<int>(terminal_sets(lts).size());
    for (auto& v : check_progress(lts, spec.progress_defs, &report.warnings)) {
        report.violations.push_back(std::move(v));
    }

    report.stats.states = lts.num_states;
    report.stats.transitions = static_cast<long>(lts.num_transitions());
    report.stats.alphabet = static_cast<int>(lts.alphabet.size());
    report.stats.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
    return report;
}

}  // namespace fspv
