#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "fspv/corpus.hpp"
#include "fspv/parser.hpp"
#include "fspv/printer.hpp"

using namespace fspv;

namespace {
const std::filesystem::path kCorpus{FSPV_CORPUS_DIR};

void check_roundtrip(const std::string& text) {
    Spec once = parse_text(text);
    Spec twice = parse_text(format(once));
    CHECK(spec_equal(once, twice));
}
}  // namespace

TEST_CASE("smallest program formats canonically") {
    Spec spec = parse_text("P = STOP.");
    CHECK(format(spec) == "P = STOP.\n\n");
    check_roundtrip("P = STOP.");
}

TEST_CASE("format of every corpus fixture re-parses to an equal tree") {
    for (const Fixture& fixture : load_corpus(kCorpus)) {
        INFO(fixture.id);
        check_roundtrip(read_file(fixture.fsp_path));
    }
}

TEST_CASE("format is a fixpoint on the corpus") {
    for (const Fixture& fixture : load_corpus(kCorpus)) {
        INFO(fixture.id);
        const std::string once = format(parse_text(read_file(fixture.fsp_path)));
        CHECK(format(parse_text(once)) == once);
    }
}

TEST_CASE("single-ampersand guards print with canonical &&") {
    Spec spec = parse_text("range R = 1..9\nP[v:R] = (when (v>=1&v<=6) a -> P[v]).\nQ = P.");
    const std::string printed = format(spec);
    CHECK(printed.find("v>=1&&v<=6") != std::string::npos);
    check_roundtrip("range R = 1..9\nP[v:R] = (when (v>=1&v<=6) a -> P[v]).\nQ = P.");
}

TEST_CASE("expression printing preserves structure with minimal parentheses") {
    check_roundtrip("P = (a[1-(2-3)] -> b[(1+2)*3] -> c[-4+5] -> STOP).");
    check_roundtrip("P = (when ((v==1||v==2)&&v!=3) a -> P).\nQ = P.");
    Spec spec = parse_text("P = (a[1-(2-3)] -> STOP).");
    CHECK(format(spec).find("1-(2-3)") != std::string::npos);
}

TEST_CASE("composites and relabels print canonically") {
    const std::string text = read_file(kCorpus / "stock.fsp");
    const std::string printed = format(parse_text(text));
    CHECK(printed.find("||STOCKSYSTEM = (STOCKFULL_MANAGEMENT || STOCKEMPTY_MANAGEMENT)"
                       "/{decrementStockA/receive, incrementStockB/send}.") !=
          std::string::npos);
}

TEST_CASE("end alternatives and label sets survive the roundtrip") {
    check_roundtrip("A = (a -> A | END).");
    check_roundtrip("A = (a -> {x, y.1, z[2]} -> A | END), B = (b -> A).");
    check_roundtrip("P = END.");
}
