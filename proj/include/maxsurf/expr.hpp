#pragma once

#include <memory>
#include <string>
#include <vector>

#include "maxsurf/lorentz.hpp"

namespace maxsurf::expr {

enum class Kind { Literal, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log };

struct Node;
using NodeRef = std::shared_ptr<const Node>;

/// One node of a complex-analytic expression in the variable z.
/// Immutable after construction; subtrees are shared freely.
struct Node {
    Kind kind;
    Complex literal{};  // Kind::Literal
    int exponent = 0;   // Kind::Pow, in [-64, 64]
    NodeRef a, b;
    int pos = -1;  // byte offset in the source text, -1 for synthesized nodes
};

NodeRef make_literal(Complex v);
NodeRef make_var();
NodeRef make_neg(NodeRef e);
NodeRef make_add(NodeRef a, NodeRef b);
NodeRef make_sub(NodeRef a, NodeRef b);
NodeRef make_mul(NodeRef a, NodeRef b);
NodeRef make_div(NodeRef a, NodeRef b);
NodeRef make_pow(NodeRef base, int exponent);
NodeRef make_exp(NodeRef e);
NodeRef make_log(NodeRef e);

struct ParseError : std::runtime_error {
    int offset;
    std::string expected;
    ParseError(int off, const std::string& expected_tokens, const std::string& what);
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Division by an exact complex zero.
struct PoleError : EvalError {
    using EvalError::EvalError;
};

NodeRef parse(const std::string& text);

/// Parseable text form; parse(print(t)) is structurally equal to t for
/// parser-produced trees.
std::string print(const NodeRef& e);

bool structurally_equal(const NodeRef& a, const NodeRef& b);

/// Principal branches throughout; IEEE semantics for overflow.
Complex evaluate(const NodeRef& e, Complex z);

/// Symbolic derivative with constant folding of literal subtrees.
NodeRef differentiate(const NodeRef& e);

/// Expression together with its cached symbolic derivative.
class AnalyticFn {
  public:
    AnalyticFn() = default;
    explicit AnalyticFn(NodeRef value) : value_(std::move(value)), deriv_(differentiate(value_)) {}
    static AnalyticFn from_text(const std::string& text) { return AnalyticFn(parse(text)); }

    const NodeRef& value_ast() const { return value_; }
    const NodeRef& deriv_ast() const { return deriv_; }
    Complex operator()(Complex z) const { return evaluate(value_, z); }
    Complex deriv(Complex z) const { return evaluate(deriv_, z); }
    std::string text() const { return print(value_); }
    bool empty() const { return value_ == nullptr; }

  private:
    NodeRef value_;
    NodeRef deriv_;
};

}  // namespace maxsurf::expr
