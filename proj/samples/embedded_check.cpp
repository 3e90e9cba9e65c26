// Minimal embedding of the header-only library: define a model inline,
// compose it, run the checks, and print the verdict.

#include <iostream>

#include "fspv/fspv.hpp"

int main() {
    const char* model = R"(
        const MaxS = 2
        range S = 0..MaxS
        PRODUCER = FULL[MaxS],
        FULL[st:S] = ( when (st>0) hand -> FULL[st-1]
          | when (st==0) done -> STOP).
        CONSUMER = TAKE[0],
        TAKE[st:S] = ( when (st<MaxS) hand -> TAKE[st+1]
          | when (st==MaxS) full -> STOP).
        ||LINE = (PRODUCER || CONSUMER).
        progress HAND = {hand}.
    )";

    try {
        fspv::Spec spec = fspv::parse_text(model);
        fspv::CompiledCache cache;
        fspv::Lts line = fspv::build_composite(spec, "LINE", cache);
        fspv::Report report = fspv::run_all(line, spec);

        std::cout << "states: " << report.stats.states
                  << ", transitions: " << report.stats.transitions << "\n";
        for (const fspv::Violation& v : report.violations) {
            std::cout << fspv::violation_kind_name(v.kind) << " (" << v.subject << "), trace:";
            for (const fspv::Label& l : v.trace) std::cout << " " << l.text();
            std::cout << "\n";
        }
        std::cout << (report.pass() ? "PASS" : "FAIL") << "\n";
        return report.pass() ? 0 : 1;
    } catch (const fspv::FspError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
