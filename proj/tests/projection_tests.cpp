#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fspv/compose.hpp"
#include "support/oracles.hpp"
#include "support/random_lts.hpp"

using namespace fspv;

// Trace projection and the product bound, over randomly generated component
// pairs (small state counts, small alphabets, shared and disjoint labels).

TEST_CASE("composed traces project onto valid component traces (1000+ pairs)") {
    std::mt19937 rng(20240811);
    const std::vector<std::string> shared_pool{"a", "b", "c", "d"};
    const std::vector<std::string> left_pool{"a", "b", "l1", "l2"};
    const std::vector<std::string> right_pool{"a", "b", "r1", "r2"};

    int checked_traces = 0;
    for (int round = 0; round < 1000; ++round) {
        const bool overlap = round % 2 == 0;
        Lts left = testgen::random_lts(rng, 6, 4, overlap ? shared_pool : left_pool, "L");
        Lts right = testgen::random_lts(rng, 6, 4, overlap ? shared_pool : right_pool, "R");
        Lts composed = compose({left, right}, "LR");

        CHECK(composed.num_states <= left.num_states * right.num_states);

        for (int t = 0; t < 5; ++t) {
            std::vector<Label> trace = testgen::random_trace(rng, composed, 12);
            INFO("round " << round << " trace length " << trace.size());
            REQUIRE(oracle::accepts_projection(left, trace));
            REQUIRE(oracle::accepts_projection(right, trace));
            ++checked_traces;
        }
    }
    CHECK(checked_traces == 5000);
}

TEST_CASE("disjoint strongly connected pairs reach the product bound exactly") {
    std::mt19937 rng(987654);
    for (int round = 0; round < 200; ++round) {
        Lts left = testgen::random_strongly_connected(rng, 6, 2, {"a", "b"}, "L");
        Lts right = testgen::random_strongly_connected(rng, 6, 2, {"x", "y"}, "R");
        Lts composed = compose({left, right}, "LR");
        INFO("round " << round);
        REQUIRE(composed.num_states == left.num_states * right.num_states);
    }
}

TEST_CASE("random pairs agree with the naive full-product oracle") {
    std::mt19937 rng(44217);
    const std::vector<std::string> pool{"a", "b", "c", "d"};
    for (int round = 0; round < 300; ++round) {
        Lts left = testgen::random_lts(rng, 5, 3, pool, "L");
        Lts right = testgen::random_lts(rng, 5, 3, pool, "R");
        Lts composed = compose({left, right}, "LR");
        Lts naive = oracle::naive_compose({left, right}, "LR");
        INFO("round " << round);
        REQUIRE(oracle::lts_equal(composed, naive));
    }
}
