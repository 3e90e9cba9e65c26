#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "fspv/analysis.hpp"
#include "fspv/compose.hpp"
#include "fspv/corpus.hpp"
#include "fspv/parser.hpp"
#include "support/oracles.hpp"

using namespace fspv;

namespace {
const std::filesystem::path kCorpus{FSPV_CORPUS_DIR};

Spec load(const char* name) { return parse_text(read_file(kCorpus / name)); }

Lts build(const Spec& spec, const std::string& name,
          std::vector<std::string>* warnings = nullptr) {
    CompiledCache cache;
    return build_composite(spec, name, cache, kDefaultStateLimit, warnings);
}

std::vector<std::string> texts(const std::vector<Label>& labels) {
    std::vector<std::string> out;
    for (const Label& l : labels) out.push_back(l.text());
    return out;
}
}  // namespace

TEST_CASE("bad driver: safety violation after exactly one step") {
    Spec spec = load("baddriver.fsp");
    Lts bad = build(spec, "BADCHECK");
    auto violation = check_safety(bad);
    REQUIRE(violation.has_value());
    CHECK(violation->kind == Violation::Kind::Safety);
    CHECK(violation->subject == "NOLOSS_Stock");
    CHECK(texts(violation->trace) == std::vector<std::string>{"c.1.full.moveto.1"});
}

TEST_CASE("good driver: no safety violation, no deadlock") {
    Spec spec = load("gooddriver.fsp");
    Lts good = build(spec, "GOODCHECK");
    CHECK(good.num_states == 4);
    CHECK_FALSE(check_safety(good).has_value());
    CHECK_FALSE(check_deadlock(good).has_value());
}

TEST_CASE("safety is absent when no transition targets ERROR") {
    Lts route = compile_process(load("route.fsp"), "ROUTE");
    CHECK_FALSE(check_safety(route).has_value());
}

TEST_CASE("carrier || route is deadlock-free; STOP deadlocks with an empty trace") {
    Lts carrier = compile_process(load("carrier.fsp"), "CARRIER");
    Lts route = compile_process(load("route.fsp"), "ROUTE");
    Lts system = compose({carrier, route}, "SYSTEM");
    CHECK(system.num_states == 28);
    CHECK_FALSE(check_deadlock(system).has_value());
    for (int s = 0; s < system.num_states; ++s) {
        CHECK_FALSE(system.transitions[static_cast<std::size_t>(s)].empty());
    }

    auto violation = check_deadlock(compile_process(parse_text("P = STOP."), "P"));
    REQUIRE(violation.has_value());
    CHECK(violation->trace.empty());
    CHECK(violation->terminal_stop);
}

TEST_CASE("stock system deadlock: both transfers complete, then both sides stop") {
    Spec spec = load("stock.fsp");
    Lts sys = build(spec, "STOCKSYSTEM");
    auto violation = check_deadlock(sys);
    REQUIRE(violation.has_value());
    CHECK(violation->subject == "DEADLOCK");
    CHECK(violation->terminal_stop);
    CHECK(texts(violation->trace) ==
          std::vector<std::string>{"decrementStockA", "incrementStockB", "decrementStockA",
                                   "incrementStockB", "stockEmptyA", "stockFullB"});

    // trace prefixes conserve stock: count(dec) - count(inc) stays in {0, 1}
    int balance = 0;
    for (const Label& l : violation->trace) {
        if (l.text() == "decrementStockA") ++balance;
        if (l.text() == "incrementStockB") --balance;
        CHECK((balance == 0 || balance == 1));
    }
    CHECK(balance == 0);
}

TEST_CASE("end states do not count as deadlocks") {
    Lts lts = compile_process(parse_text("P = (a -> END)."), "P");
    CHECK_FALSE(check_deadlock(lts).has_value());
}

TEST_CASE("terminal sets: the transport system is one strongly connected set") {
    Lts carrier = compile_process(load("carrier.fsp"), "CARRIER");
    Lts route = compile_process(load("route.fsp"), "ROUTE");
    Lts system = compose({carrier, route}, "SYSTEM");
    auto sets = terminal_sets(system);
    REQUIRE(sets.size() == 1);
    CHECK(sets.front().states.size() == 28);
    bool has_unload = false;
    for (const Label& l : sets.front().labels) {
        if (l.text() == "waitforunloading") has_unload = true;
    }
    CHECK(has_unload);
}

TEST_CASE("terminal sets: STOP is one dead set, a two-process chain has one bottom") {
    auto stop_sets = terminal_sets(compile_process(parse_text("P = STOP."), "P"));
    REQUIRE(stop_sets.size() == 1);
    CHECK(stop_sets.front().states == std::vector<int>{0});
    CHECK(stop_sets.front().labels.empty());

    Spec spec = parse_text("P = (a -> P | b -> Q), Q = (c -> Q).");
    auto sets = terminal_sets(compile_process(spec, "P"));
    REQUIRE(sets.size() == 1);
    CHECK(texts(sets.front().labels) == std::vector<std::string>{"c"});
    CHECK(sets.front().states.size() == 1);
}

TEST_CASE("terminal sets are disjoint and closed; every state reaches one") {
    Spec spec = load("stock.fsp");
    Lts sys = build(spec, "STOCKSYSTEM");
    auto sets = terminal_sets(sys);
    std::set<int> seen;
    for (const auto& set : sets) {
        for (int s : set.states) {
            CHECK(seen.insert(s).second);
            for (const Transition& t : sys.transitions[static_cast<std::size_t>(s)]) {
                if (t.target == kErrorState) continue;
                CHECK(std::binary_search(set.states.begin(), set.states.end(), t.target));
            }
        }
    }
    // reachability of a terminal set from every state, by backward closure
    std::set<int> reaching = seen;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < sys.num_states; ++s) {
            if (reaching.count(s)) continue;
            for (const Transition& t : sys.transitions[static_cast<std::size_t>(s)]) {
                if (t.target != kErrorState && reaching.count(t.target)) {
                    reaching.insert(s);
                    changed = true;
                    break;
                }
            }
        }
    }
    CHECK(static_cast<int>(reaching.size()) == sys.num_states);
}

TEST_CASE("a lone END state is successful termination, not a terminal set") {
    Lts lts = compile_process(parse_text("P = (a -> END)."), "P");
    CHECK(terminal_sets(lts).empty());
}

TEST_CASE("progress UNLOAD holds on the transport system") {
    Spec spec = load("transport.fsp");
    Lts sys = build(spec, "TRANSPORT");
    CHECK(sys.num_states == 28);
    auto violations = check_progress(sys, spec.progress_defs);
    CHECK(violations.empty());
}

TEST_CASE("progress on a dead process is violated with an empty cycle and a warning") {
    Spec spec = load("stop.fsp");
    Lts lts = compile_process(spec, "P");
    std::vector<std::string> warnings;
    auto violations = check_progress(lts, spec.progress_defs, &warnings);
    REQUIRE(violations.size() == 1);
    CHECK(violations.front().subject == "ANY");
    CHECK(violations.front().trace.empty());
    REQUIRE(violations.front().cycle.has_value());
    CHECK(violations.front().cycle->empty());
    REQUIRE(warnings.size() == 1);
    CHECK(warnings.front().find("UnknownProgressLabel") != std::string::npos);
}

TEST_CASE("progress SEND is violated on the stock system after relabelling") {
    Spec spec = parse_text(read_file(kCorpus / "stock.fsp") + "\nprogress SEND = {send}.");
    std::vector<std::string> warnings;
    Lts sys = build(spec, "STOCKSYSTEM", &warnings);
    auto violations = check_progress(sys, spec.progress_defs, &warnings);
    REQUIRE(violations.size() == 1);
    CHECK(violations.front().subject == "SEND");
    REQUIRE(violations.front().cycle.has_value());
    CHECK(violations.front().cycle->empty());  // dead STOP/STOP terminal set
    bool warned = false;
    for (const std::string& w : warnings) {
        if (w.find("UnknownProgressLabel") != std::string::npos &&
            w.find("send") != std::string::npos) {
            warned = true;
        }
    }
    CHECK(warned);
}

TEST_CASE("progress violations carry a cycle avoiding the progress set") {
    // terminal set {Q} cycles on c; progress asks for a
    Spec spec = parse_text("P = (a -> P | b -> Q), Q = (c -> Q).\nprogress A = {a}.");
    Lts lts = compile_process(spec, "P");
    auto violations = check_progress(lts, spec.progress_defs);
    REQUIRE(violations.size() == 1);
    CHECK(texts(violations.front().trace) == std::vector<std::string>{"b"});
    REQUIRE(violations.front().cycle.has_value());
    CHECK(texts(*violations.front().cycle) == std::vector<std::string>{"c"});
}

TEST_CASE("reported traces replay from the initial state") {
    Spec stock = load("stock.fsp");
    Lts sys = build(stock, "STOCKSYSTEM");
    auto deadlock = check_deadlock(sys);
    REQUIRE(deadlock.has_value());
    auto states = oracle::replay(sys, deadlock->trace);
    REQUIRE(states.size() == 1);
    CHECK(sys.transitions[static_cast<std::size_t>(*states.begin())].empty());

    Spec bad = load("baddriver.fsp");
    Lts badlts = build(bad, "BADCHECK");
    auto safety = check_safety(badlts);
    REQUIRE(safety.has_value());
    auto end_states = oracle::replay(badlts, safety->trace);
    CHECK(end_states.count(kErrorState) == 1);
}

TEST_CASE("trace minimality matches an independent BFS distance") {
    Spec bad = load("baddriver.fsp");
    Lts badlts = build(bad, "BADCHECK");
    auto safety = check_safety(badlts);
    REQUIRE(safety.has_value());
    CHECK(static_cast<int>(safety->trace.size()) == oracle::shortest_distance(badlts).to_error);

    Spec stock = load("stock.fsp");
    Lts sys = build(stock, "STOCKSYSTEM");
    auto deadlock = check_deadlock(sys);
    REQUIRE(deadlock.has_value());
    auto distances = oracle::shortest_distance(sys);
    int best = -1;
    for (int s = 0; s < sys.num_states; ++s) {
        if (!sys.transitions[static_cast<std::size_t>(s)].empty() || sys.is_end(s)) continue;
        if (best == -1 || distances.to_state[static_cast<std::size_t>(s)] < best) {
            best = distances.to_state[static_cast<std::size_t>(s)];
        }
    }
    CHECK(static_cast<int>(deadlock->trace.size()) == best);
}

TEST_CASE("run_all aggregates and fills statistics") {
    Spec spec = load("transport.fsp");
    std::vector<std::string> warnings;
    Lts sys = build(spec, "TRANSPORT", &warnings);
    Report report = run_all(sys, spec, warnings);
    CHECK(report.pass());
    CHECK(report.stats.states == 28);
    CHECK(report.stats.alphabet == 15);
    CHECK(report.terminal_set_count == 1);

    Spec stock = load("stock.fsp");
    Report stock_report = run_all(build(stock, "STOCKSYSTEM"), stock);
    CHECK_FALSE(stock_report.pass());
    REQUIRE(stock_report.violations.size() == 1);
    CHECK(stock_report.violations.front().kind == Violation::Kind::Deadlock);

    Spec stop = load("stop.fsp");
    Report stop_report = run_all(compile_process(stop, "P"), stop);
    CHECK_FALSE(stop_report.pass());
    CHECK(stop_report.stats.states == 1);
    REQUIRE(stop_report.violations.size() == 2);  // deadlock + progress ANY
    CHECK(stop_report.violations[0].kind == Violation::Kind::Deadlock);
    CHECK(stop_report.violations[1].kind == Violation::Kind::Progress);

    // without progress definitions only the deadlock remains
    Spec bare = parse_text("P = STOP.");
    Report bare_report = run_all(compile_process(bare, "P"), bare);
    CHECK_FALSE(bare_report.pass());
    CHECK(bare_report.stats.states == 1);
    REQUIRE(bare_report.violations.size() == 1);
    CHECK(bare_report.violations.front().kind == Violation::Kind::Deadlock);
}
