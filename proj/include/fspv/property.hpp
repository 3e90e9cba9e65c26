#pragma once

#include <string>

#include "fspv/lts.hpp"

namespace fspv {

/// Completes a deterministic safety property automaton: every alphabet label
/// with no transition from a non-end state gets a transition to ERROR, so a
/// trace violates the property exactly when it drives the automaton into the
/// sentinel. Properties must be deterministic.
inline Lts make_property(const Lts& lts) {
    for (int s = 0; s < lts.num_states; ++s) {
        const auto& list = lts.transitions[s];
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (list[i].label == list[i - 1].label) {
                fail(ErrorCode::NondeterministicProperty,
                     "property '" + lts.name + "' is nondeterministic at state " +
                         std::to_string(s) + " on '" +
                         lts.alphabet[list[i].label].text() + "'");
            }
        }
    }

    Lts out = lts;
    const int alphabet_size = static_cast<int>(out.alphabet.size());
    for (int s = 0; s < out.num_states; ++s) {
        if (out.is_end(s)) continue;
        auto& list = out.transitions[s];
        std::vector<Transition> completed;
        completed.reserve(static_cast<std::size_t>(alphabet_size));
        std::size_t i = 0;
        for (int label = 0; label < alphabet_size; ++label) {
            if (i < list.size() && list[i].label == label) {
                completed.push_back(list[i++]);
            } else {
                completed.push_back(Transition{label, kErrorState});
            }
        }
        list = std::move(completed);
    }
    out.all_parts_stuck.assign(static_cast<std::size_t>(out.num_states), false);
    for (int s = 0; s < out.num_states; ++s) {
        out.all_parts_stuck[static_cast<std::size_t>(s)] =
            out.transitions[s].empty() && !out.is_end(s);
    }
    out.property_names.push_back(lts.name);
    return out;
}

}  // namespace fspv
