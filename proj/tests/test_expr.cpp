#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "cesaro/expr.hpp"

using namespace cesaro;
namespace ex = cesaro::expr;

TEST_CASE("basic parses") {
    const ex::ast v = ex::parse("x");
    CHECK(v.root().kind == ex::node_kind::variable);
    CHECK(ex::evaluate(v, 0.5) == 0.5);

    const ex::ast f = ex::parse("arctan(x)/(x*(1+x))");
    CHECK(f.root().kind == ex::node_kind::binary_op);
    CHECK(f.root().op == '/');
    CHECK(f.root().lhs->name == "arctan");

    const ex::ast g = ex::parse("1/(1+a*x^2)");
    CHECK(g.parameters() == std::set<std::string>{"a"});
}

TEST_CASE("precedence and associativity") {
    CHECK(ex::evaluate(ex::parse("2+3*4"), 0.0) == 14.0);
    CHECK(ex::evaluate(ex::parse("2^3^2"), 0.0) == 512.0);
    // unary minus binds looser than ^
    CHECK(ex::evaluate(ex::parse("-x^2"), 2.0) == -4.0);
    CHECK(ex::evaluate(ex::parse("(-x)^2"), 2.0) == 4.0);
    CHECK(ex::evaluate(ex::parse("10-4-3"), 0.0) == 3.0);
    CHECK(ex::evaluate(ex::parse("24/4/2"), 0.0) == 3.0);
}

TEST_CASE("evaluation of the arctan test function") {
    const ex::ast f = ex::parse("arctan(x)/(x*(1+x))");
    CHECK(ex::evaluate(f, 1.0) == doctest::Approx(M_PI / 8).epsilon(1e-12));
    // removable singularity is reported, not patched
    CHECK_THROWS_AS(ex::evaluate(f, 0.0), eval_error);
}

TEST_CASE("evaluation errors") {
    CHECK_THROWS_AS(ex::evaluate(ex::parse("log(x)"), 0.0), eval_error);
    CHECK_THROWS_AS(ex::evaluate(ex::parse("log(x-1)"), 0.5), eval_error);
    CHECK_THROWS_AS(ex::evaluate(ex::parse("sqrt(x-1)"), 0.5), eval_error);
    CHECK_THROWS_AS(ex::evaluate(ex::parse("1/(1+a*x)"), 0.5), eval_error); // unbound a
    CHECK(ex::evaluate(ex::parse("1/(1+a*x)"), 0.5, {{"a", 2.0}}) ==
          doctest::Approx(0.5));
    try {
        ex::evaluate(ex::parse("1/x"), 0.0);
        FAIL("expected eval_error");
    } catch (const eval_error& e) {
        CHECK(e.at() == 0.0);
    }
}

TEST_CASE("parse errors carry offsets") {
    CHECK_THROWS_AS(ex::parse(""), parse_error);
    CHECK_THROWS_AS(ex::parse("  "), parse_error);
    CHECK_THROWS_AS(ex::parse("(1+x"), parse_error);
    CHECK_THROWS_AS(ex::parse("1+*2"), parse_error);
    CHECK_THROWS_AS(ex::parse("foo(x)"), parse_error);   // unknown function
    CHECK_THROWS_AS(ex::parse("sin(x,1)"), parse_error); // arity
    CHECK_THROWS_AS(ex::parse("sin"), parse_error);      // missing arguments
    CHECK_THROWS_AS(ex::parse("1.e3"), parse_error);
    try {
        ex::parse("1+$");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 2);
    }
}

TEST_CASE("pi and log are the usual constants") {
    CHECK(ex::evaluate(ex::parse("pi"), 0.0) == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(ex::evaluate(ex::parse("log(2)"), 0.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("print round-trips hand-written expressions") {
    for (const char* src : {"x", "1+2*x", "arctan(x)/(x*(1+x))", "2^3^2", "-x^2",
                            "(-x)^2", "(1+x)*(2-x)", "x^-2", "a*x+pi", "--x",
                            "1/(1+a*x^2)", "sqrt(abs(x-0.5))", "1e-05+x"}) {
        const ex::ast e = ex::parse(src);
        const std::string printed = ex::print(e);
        CAPTURE(src);
        CAPTURE(printed);
        CHECK(ex::parse(printed) == e);
    }
}

namespace {

ex::ast random_ast(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
    switch (pick(rng)) {
    case 0:
        return ex::number(std::uniform_int_distribution<int>(0, 99)(rng) / 8.0);
    case 1:
        return ex::variable();
    case 2:
        return ex::constant_pi();
    case 3:
        return ex::parameter(std::uniform_int_distribution<int>(0, 1)(rng) ? "a" : "b");
    case 4:
        return ex::negate(random_ast(rng, depth - 1));
    case 5: {
        static const char* fns[] = {"arctan", "log", "exp", "sin", "cos", "sqrt", "abs"};
        return ex::unary(fns[std::uniform_int_distribution<int>(0, 6)(rng)],
                         random_ast(rng, depth - 1));
    }
    default: {
        static const char ops[] = {'+', '-', '*', '/', '^'};
        return ex::binary(ops[std::uniform_int_distribution<int>(0, 4)(rng)],
                          random_ast(rng, depth - 1), random_ast(rng, depth - 1));
    }
    }
}

} // namespace

TEST_CASE("parse(print(e)) is a fixed point on random trees") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 1000; ++i) {
        const ex::ast e = random_ast(rng, 5);
        const std::string printed = ex::print(e);
        CAPTURE(printed);
        REQUIRE(ex::parse(printed) == e);
        REQUIRE(ex::print(ex::parse(printed)) == printed);
    }
}

TEST_CASE("evaluation is deterministic") {
    const ex::ast f = ex::parse("arctan(x)/(x*(1+x))+sin(pi*x)^2");
    for (double x : {0.125, 0.5, 0.999}) {
        const double a = ex::evaluate(f, x);
        const double b = ex::evaluate(f, x);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}
