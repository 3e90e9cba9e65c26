#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "fspv/compose.hpp"
#include "fspv/corpus.hpp"
#include "fspv/parser.hpp"
#include "fspv/printer.hpp"

using namespace fspv;

namespace {
const std::filesystem::path kCorpus{FSPV_CORPUS_DIR};

Report fresh_report(const Fixture& fixture, Lts* lts_out = nullptr) {
    Spec spec = parse_text(read_file(fixture.fsp_path));
    std::vector<std::string> warnings;
    Lts lts;
    if (spec.find_composite(fixture.target)) {
        CompiledCache cache;
        lts = build_composite(spec, fixture.target, cache, kDefaultStateLimit, &warnings);
    } else {
        lts = compile_process(spec, fixture.target);
        if (spec.is_property(fixture.target)) lts = make_property(lts);
    }
    Report report = run_all(lts, spec, warnings);
    if (lts_out) *lts_out = std::move(lts);
    return report;
}
}  // namespace

TEST_CASE("every fixture loads and parses cleanly") {
    auto fixtures = load_corpus(kCorpus);
    REQUIRE(fixtures.size() >= 12);
    for (const Fixture& fixture : fixtures) {
        INFO(fixture.id);
        CHECK_NOTHROW(parse_text(read_file(fixture.fsp_path)));
        CHECK((fixture.source == "verbatim" || fixture.source == "adapted" ||
               fixture.source == "derived"));
        CHECK_FALSE(fixture.notes.empty());
    }
}

TEST_CASE("roundtrip holds corpus-wide: parse(format(parse(f))) equals parse(f)") {
    for (const Fixture& fixture : load_corpus(kCorpus)) {
        INFO(fixture.id);
        Spec original = parse_text(read_file(fixture.fsp_path));
        CHECK(spec_equal(original, parse_text(format(original))));
    }
}

TEST_CASE("golden reports match field by field") {
    for (const Fixture& fixture : load_corpus(kCorpus)) {
        if (!fixture.gating) continue;
        INFO(fixture.id);
        Report golden = report_from_json(json::parse(read_file(*fixture.expect_path)));
        Report fresh = fresh_report(fixture);
        GoldenDiff diff = golden_compare(golden, fresh);
        for (const std::string& d : diff.diffs) INFO(d);
        CHECK(diff.pass);
    }
}

TEST_CASE("golden .aut exports match byte for byte") {
    for (const Fixture& fixture : load_corpus(kCorpus)) {
        if (!fixture.aut_path) continue;
        INFO(fixture.id);
        Lts lts;
        fresh_report(fixture, &lts);
        std::ostringstream out;
        write_aut(lts, out);
        CHECK(out.str() == read_file(*fixture.aut_path));
    }
}

TEST_CASE("a tampered golden fails with a diff naming the field") {
    auto fixtures = load_corpus(kCorpus);
    const Fixture* route = nullptr;
    for (const Fixture& f : fixtures) {
        if (f.id == "route") route = &f;
    }
    REQUIRE(route != nullptr);
    Report golden = report_from_json(json::parse(read_file(*route->expect_path)));
    golden.stats.states = 13;
    GoldenDiff diff = golden_compare(golden, fresh_report(*route));
    CHECK_FALSE(diff.pass);
    REQUIRE_FALSE(diff.diffs.empty());
    CHECK(diff.diffs.front().find("stats.states") != std::string::npos);
}

TEST_CASE("stock system golden trace carries the documented transfer structure") {
    for (const Fixture& fixture : load_corpus(kCorpus)) {
        if (fixture.id != "stock") continue;
        Report golden = report_from_json(json::parse(read_file(*fixture.expect_path)));
        REQUIRE(golden.violations.size() == 1);
        const std::vector<Label>& trace = golden.violations.front().trace;
        int dec = 0, inc = 0, balance = 0;
        bool empty_a = false, full_b = false;
        for (const Label& l : trace) {
            const std::string text = l.text();
            if (text == "decrementStockA") { ++dec; ++balance; }
            if (text == "incrementStockB") { ++inc; --balance; }
            if (text == "stockEmptyA") empty_a = true;
            if (text == "stockFullB") full_b = true;
            CHECK((balance == 0 || balance == 1));
        }
        CHECK(dec == 2);
        CHECK(inc == 2);
        CHECK(empty_a);
        CHECK(full_b);
    }
}

TEST_CASE("derived loader/unloader keep the transport system deadlock-free") {
    Spec spec = parse_text(read_file(kCorpus / "transport.fsp"));
    CompiledCache cache;
    Lts sys = build_composite(spec, "TRANSPORT", cache);
    CHECK(sys.num_states == 28);
    CHECK_FALSE(check_deadlock(sys).has_value());
}

TEST_CASE("exploratory fixtures are excluded from gating but still compile") {
    auto fixtures = load_corpus(kCorpus);
    bool found = false;
    for (const Fixture& fixture : fixtures) {
        if (fixture.id != "stocked_transport") continue;
        found = true;
        CHECK_FALSE(fixture.gating);
        CHECK_FALSE(fixture.expect_path.has_value());
        Spec spec = parse_text(read_file(fixture.fsp_path));
        CompiledCache cache;
        CHECK_NOTHROW(build_composite(spec, fixture.target, cache));
    }
    CHECK(found);
}

TEST_CASE("stock conservation holds along every path of the state graph") {
    // assign each reachable state the running count(dec) - count(inc);
    // the assignment must be single-valued with every value in {0, 1}
    Spec spec = parse_text(read_file(kCorpus / "stock.fsp"));
    CompiledCache cache;
    Lts sys = build_composite(spec, "STOCKSYSTEM", cache);
    const int dec = sys.label_index(Label::from_text("decrementStockA"));
    const int inc = sys.label_index(Label::from_text("incrementStockB"));
    std::vector<int> balance(static_cast<std::size_t>(sys.num_states), -100);
    balance[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int s = queue[head];
        for (const Transition& t : sys.transitions[static_cast<std::size_t>(s)]) {
            if (t.target == kErrorState) continue;
            int next = balance[static_cast<std::size_t>(s)];
            if (t.label == dec) ++next;
            if (t.label == inc) --next;
            CHECK((next == 0 || next == 1));
            if (balance[static_cast<std::size_t>(t.target)] == -100) {
                balance[static_cast<std::size_t>(t.target)] = next;
                queue.push_back(t.target);
            } else {
                CHECK(balance[static_cast<std::size_t>(t.target)] == next);
            }
        }
    }
    CHECK(queue.size() == static_cast<std::size_t>(sys.num_states));
}
