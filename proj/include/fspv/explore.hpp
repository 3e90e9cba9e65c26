#pragma once

#include <cctype>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fspv/lts.hpp"

namespace fspv {

/// Interactive state-space walker: a numbered menu of enabled transitions,
/// `back` undo, `trace`, seeded `random N`, `quit`. Drives any LTS, including
/// compositions; entering ERROR or a terminal state prints a banner and only
/// allows back/quit.
class ExploreSession {
public:
    explicit ExploreSession(const Lts& lts, unsigned seed = 0)
        : lts_(lts), rng_(seed) {}

    int current_state() const { return history_.empty() ? 0 : history_.back().state; }
    bool at_error() const { return current_state() == kErrorState; }
    const std::vector<Label>& trace() const { return trace_; }

    bool at_terminal() const {
        if (at_error()) return false;
        return lts_.transitions[static_cast<std::size_t>(current_state())].empty();
    }

    const std::vector<Transition>& enabled() const {
        static const std::vector<Transition> none;
        if (at_error()) return none;
        return lts_.transitions[static_cast<std::size_t>(current_state())];
    }

    /// Applies one command line; returns false when the session should end.
    bool handle_command(const std::string& line, std::ostream& out) {
        std::istringstream in(line);
        std::string word;
        if (!(in >> word)) return true;  // blank line: re-prompt

        if (word == "quit" || word == "q") return false;
        if (word == "back" || word == "b") {
            if (history_.empty()) {
                out << "already at the initial state\n";
            } else {
                history_.pop_back();
                trace_.pop_back();
            }
            return true;
        }
        if (word == "trace" || word == "t") {
            print_trace(out);
            return true;
        }
        if (word == "random" || word == "r") {
            long steps = 0;
            if (!(in >> steps) || steps < 0) {
                out << "usage: random N\n";
                return true;
            }
            run_random(steps, out);
            return true;
        }
        if (!word.empty() && std::isdigit(static_cast<unsigned char>(word[0]))) {
            if (at_error() || at_terminal()) {
                out << "no transitions here; 'back' or 'quit'\n";
                return true;
            }
            const std::size_t pick = static_cast<std::size_t>(std::stol(word));
            const auto& options = enabled();
            if (pick < 1 || pick > options.size()) {
                out << "choose 1.." << options.size() << "\n";
                return true;
            }
            step(options[pick - 1]);
            return true;
        }
        out << "commands: <number>, back, trace, random N, quit\n";
        return true;
    }

    void print_state(std::ostream& out) const {
        if (at_error()) {
            out << "-- ERROR state reached --\n";
            out << "only 'back' or 'quit' from here\n";
            return;
        }
        out << "state " << current_state();
        if (lts_.is_end(current_state())) out << " (END)";
        out << "\n";
        if (at_terminal()) {
            out << (lts_.is_end(current_state()) ? "-- successful termination --\n"
                                                 : "-- terminal state (deadlock) --\n");
            out << "only 'back' or 'quit' from here\n";
            return;
        }
        const auto& options = enabled();
        for (std::size_t i = 0; i < options.size(); ++i) {
            out << "  " << (i + 1) << ") " << lts_.alphabet[options[i].label].text() << "\n";
        }
    }

    void run(std::istream& in, std::ostream& out) {
        out << "exploring " << lts_.name << " (" << lts_.num_states << " states)\n";
        print_state(out);
        std::string line;
        while (true) {
            out << "> " << std::flush;
            if (!std::getline(in, line)) break;
            if (!handle_command(line, out)) break;
            print_state(out);
        }
    }

private:
    struct Step {
        int state;
    };

    void step(const Transition& t) {
        history_.push_back(Step{t.target});
        trace_.push_back(lts_.alphabet[t.label]);
    }

    void run_random(long steps, std::ostream& out) {
        for (long i = 0; i < steps; ++i) {
            if (at_error() || at_terminal()) {
                out << "halted after " << i << " step(s): "
                    << (at_error() ? "ERROR state" : "terminal state") << "\n";
                return;
            }
            const auto& options = enabled();
            std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
            step(options[dist(rng_)]);
        }
        out << "took " << steps << " random step(s)\n";
    }

    void print_trace(std::ostream& out) const {
        if (trace_.empty()) {
            out << "(empty trace)\n";
            return;
        }
        for (std::size_t i = 0; i < trace_.size(); ++i) {
            out << "  " << (i + 1) << ". " << trace_[i].text() << "\n";
        }
    }

    const Lts& lts_;
    std::mt19937 rng_;
    std::vector<Step> history_;
    std::vector<Label> trace_;
};

}  // namespace fspv
