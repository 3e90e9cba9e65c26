#include <catch2/catch_amalgamated.hpp>

#include "fspv/eval.hpp"
#include "fspv/lexer.hpp"
#include "fspv/parser.hpp"

using namespace fspv;

namespace {

// Guards and indices are parsed through the same grammar as full models;
// easiest way to get an Expr is through a tiny throwaway definition.
ExprPtr parse_guard(const std::string& text) {
    Spec spec = parse_text("P = (when (" + text + ") a -> STOP).");
    return spec.process_defs.front().locals.front().body->branches.front().guard;
}

ExprPtr parse_index(const std::string& text) {
    Spec spec = parse_text("P = (a[" + text + "] -> STOP).");
    return spec.process_defs.front()
        .locals.front()
        .body->branches.front()
        .actions.front()
        .single.parts[1]
        .index;
}

Env env_of(std::initializer_list<std::pair<std::string, long>> entries) {
    Env env;
    for (const auto& [name, value] : entries) env.bind(name, value);
    return env;
}

}  // namespace

TEST_CASE("guard conjunction from the route model") {
    Spec spec;
    ExprPtr guard = parse_guard("v>=1&v<=6");
    CHECK(eval_bool(*guard, env_of({{"v", 6}}), spec));
    CHECK(eval_bool(*guard, env_of({{"v", 1}}), spec));
    CHECK_FALSE(eval_bool(*guard, env_of({{"v", 7}}), spec));
    CHECK_FALSE(eval_bool(*guard, env_of({{"v", 0}}), spec));
}

TEST_CASE("equality guard") {
    Spec spec;
    ExprPtr guard = parse_guard("v==7");
    CHECK(eval_bool(*guard, env_of({{"v", 7}}), spec));
    CHECK_FALSE(eval_bool(*guard, env_of({{"v", 8}}), spec));
}

TEST_CASE("arithmetic index from the stock model") {
    Spec spec;
    ExprPtr index = parse_index("st-1");
    CHECK(eval_int(*index, env_of({{"st", 2}}), spec) == 1);
    CHECK(eval_int(*index, env_of({{"st", 1}}), spec) == 0);
}

TEST_CASE("constants resolve when no variable shadows them") {
    Spec spec = parse_text("const MaxS = 2\nP = (when (st<MaxS) a -> STOP).");
    ExprPtr guard = spec.process_defs.front().locals.front().body->branches.front().guard;
    CHECK(eval_bool(*guard, env_of({{"st", 1}}), spec));
    CHECK_FALSE(eval_bool(*guard, env_of({{"st", 2}}), spec));
}

TEST_CASE("unbound variables and division by zero are reported") {
    Spec spec;
    CHECK_THROWS_MATCHES(eval_int(*parse_index("nosuch+1"), Env{}, spec), FspError,
                         Catch::Matchers::Predicate<FspError>([](const FspError& e) {
                             return e.code() == ErrorCode::UnboundVariable;
                         }));
    CHECK_THROWS_MATCHES(eval_int(*parse_index("1/0"), Env{}, spec), FspError,
                         Catch::Matchers::Predicate<FspError>([](const FspError& e) {
                             return e.code() == ErrorCode::DivisionByZero;
                         }));
    CHECK_THROWS_MATCHES(eval_int(*parse_index("5%0"), Env{}, spec), FspError,
                         Catch::Matchers::Predicate<FspError>([](const FspError& e) {
                             return e.code() == ErrorCode::DivisionByZero;
                         }));
}

TEST_CASE("conjunction and disjunction short-circuit") {
    Spec spec;
    // right operand would divide by zero; short-circuit must avoid it
    CHECK_FALSE(eval_bool(*parse_guard("v>0 && 1/0==1"), env_of({{"v", 0}}), spec));
    CHECK(eval_bool(*parse_guard("v==0 || 1/0==1"), env_of({{"v", 0}}), spec));
    CHECK_THROWS_AS(eval_bool(*parse_guard("v==0 && 1/0==1"), env_of({{"v", 0}}), spec),
                    FspError);
}

TEST_CASE("precedence: arithmetic binds tighter than comparison, AND tighter than OR") {
    Spec spec;
    CHECK(eval_bool(*parse_guard("1+2*3==7"), Env{}, spec));
    CHECK(eval_bool(*parse_guard("v==1 || v==2 && v==3"), env_of({{"v", 1}}), spec));
    CHECK_FALSE(eval_bool(*parse_guard("(v==1 || v==2) && v==3"), env_of({{"v", 1}}), spec));
    CHECK(eval_bool(*parse_guard("!(v==2)"), env_of({{"v", 1}}), spec));
}

TEST_CASE("type mismatches are rejected") {
    Spec spec;
    // a bare comparison is not index syntax; parenthesized it parses and the
    // evaluator rejects the boolean where an integer is required
    CHECK_THROWS_MATCHES(eval_int(*parse_index("(1==1)"), Env{}, spec), FspError,
                         Catch::Matchers::Predicate<FspError>([](const FspError& e) {
                             return e.code() == ErrorCode::TypeMismatch;
                         }));
    CHECK_THROWS_AS(eval_bool(*parse_guard("v+1"), env_of({{"v", 1}}), spec), FspError);
}
