#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "maxsurf/expr.hpp"

using namespace maxsurf;
using namespace maxsurf::expr;

TEST_CASE("parse structure") {
    const NodeRef t = parse("i/2*(1/z - z)");
    REQUIRE(t->kind == Kind::Mul);
    REQUIRE(t->a->kind == Kind::Div);
    CHECK(t->a->a->literal == Complex(0.0, 1.0));
    CHECK(t->a->b->literal == Complex(2.0, 0.0));
    CHECK(t->b->kind == Kind::Sub);

    const NodeRef s = parse("z^2 + 1");
    REQUIRE(s->kind == Kind::Add);
    CHECK(s->a->kind == Kind::Pow);
    CHECK(s->a->exponent == 2);
    CHECK(s->b->kind == Kind::Literal);
}

TEST_CASE("parse errors carry byte offsets") {
    try {
        parse("z^^2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
        CHECK(!e.expected.empty());
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("z^65"), ParseError);
    CHECK_THROWS_AS(parse("z^-65"), ParseError);
    CHECK_NOTHROW(parse("z^64"));
    CHECK_NOTHROW(parse("z^-64"));
}

TEST_CASE("evaluate") {
    CHECK(std::abs(evaluate(parse("i/2*(1/z - z)"), {2, 0}) - Complex(0, -0.75)) < 1e-15);
    CHECK(std::abs(evaluate(parse("z^2"), {1, 1}) - Complex(0, 2)) < 1e-15);
    CHECK_THROWS_AS(evaluate(parse("1/z"), Complex{}), PoleError);
    CHECK_THROWS_AS(evaluate(parse("log(z)"), Complex{}), EvalError);
    // principal branch
    CHECK(std::abs(evaluate(parse("log(z)"), {-1, 0}).imag() - M_PI) < 1e-15);
    CHECK(std::abs(evaluate(parse("exp(z)"), {0, M_PI}) - Complex(-1, 0)) < 1e-14);
}

namespace {

void check_derivative(const std::string& text, Complex z) {
    const AnalyticFn fn = AnalyticFn::from_text(text);
    const double h = 1e-5;
    const Complex fd = (fn(z + h) - fn(z - h)) / (2.0 * h);
    const Complex sym = fn.deriv(z);
    CHECK(std::abs(sym - fd) <= 1e-6 * (1.0 + std::abs(sym)));
}

}  // namespace

TEST_CASE("symbolic differentiation against central differences") {
    check_derivative("z^2", {0.7, 0.2});
    check_derivative("1/z", {0.5, 0.5});
    check_derivative("exp(2*z)", {0.1, 0.3});
    check_derivative("i/2*(1/z - z)", {0.4, -0.2});
    check_derivative("log(z)", {1.5, 0.5});
    check_derivative("(z^3 - i*z)/(z + 2)", {0.3, 0.1});
    CHECK(std::abs(evaluate(differentiate(parse("z^2")), {3, 0}) - Complex(6, 0)) < 1e-15);
    // -1/z^2 up to simplification
    CHECK(std::abs(evaluate(differentiate(parse("1/z")), {2, 0}) - Complex(-0.25, 0)) < 1e-15);
}

TEST_CASE("differentiation is linear") {
    const NodeRef combined = parse("3*(z^3) + exp(z)");
    const NodeRef d = differentiate(combined);
    const NodeRef d1 = differentiate(parse("z^3"));
    const NodeRef d2 = differentiate(parse("exp(z)"));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 10; ++k) {
        const Complex z(u(rng), u(rng));
        const Complex lhs = evaluate(d, z);
        const Complex rhs = 3.0 * evaluate(d1, z) + evaluate(d2, z);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("print / parse round trip") {
    const char* corpus[] = {
        "z",           "i",           "1.5",        "z^2 + 1",      "i/2*(1/z - z)",
        "-(z + i)",    "exp(2*z)",    "log(z + 1)", "z^-3",         "(z - 1)/(z + 1)",
        "0.5*z^4 - i", "exp(log(z))", "1/z - z",    "-z^2*exp(z)",  "z*(z*(z*(z + 1) + 1) + 1)",
        "2 - 3*i",     "z/2/3",       "z - 1 - 2",  "(1 + i)*z^2",  "log(exp(z)) + i*z",
    };
    for (const char* text : corpus) {
        const NodeRef first = parse(text);
        const NodeRef second = parse(print(first));
        CHECK(structurally_equal(first, second));
    }
}

TEST_CASE("analytic function caches its derivative") {
    const AnalyticFn fn = AnalyticFn::from_text("z^2 - i*z");
    CHECK(std::abs(fn({1, 0}) - Complex(1, -1)) < 1e-15);
    CHECK(std::abs(fn.deriv({1, 0}) - Complex(2, -1)) < 1e-15);
    CHECK(!fn.text().empty());
}
