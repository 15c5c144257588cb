#include "maxsurf/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace maxsurf::expr {

namespace {

NodeRef node(Kind k, NodeRef a = nullptr, NodeRef b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

bool is_literal(const NodeRef& e, Complex v) {
    return e->kind == Kind::Literal && e->literal == v;
}

}  // namespace

NodeRef make_literal(Complex v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Literal;
    n->literal = v;
    return n;
}

NodeRef make_var() { return node(Kind::Var); }
NodeRef make_neg(NodeRef e) { return node(Kind::Neg, std::move(e)); }
NodeRef make_add(NodeRef a, NodeRef b) { return node(Kind::Add, std::move(a), std::move(b)); }
NodeRef make_sub(NodeRef a, NodeRef b) { return node(Kind::Sub, std::move(a), std::move(b)); }
NodeRef make_mul(NodeRef a, NodeRef b) { return node(Kind::Mul, std::move(a), std::move(b)); }
NodeRef make_div(NodeRef a, NodeRef b) { return node(Kind::Div, std::move(a), std::move(b)); }

NodeRef make_pow(NodeRef base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->a = std::move(base);
    n->exponent = exponent;
    return n;
}

NodeRef make_exp(NodeRef e) { return node(Kind::Exp, std::move(e)); }
NodeRef make_log(NodeRef e) { return node(Kind::Log, std::move(e)); }

ParseError::ParseError(int off, const std::string& expected_tokens, const std::string& what)
    : std::runtime_error(what), offset(off), expected(expected_tokens) {}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)*
//         term := unary (('*'|'/') unary)*
//         unary := '-' unary | power
//         power := atom ('^' ['-'] integer)?
//         atom := number | 'i' | 'z' | '(' expr ')' | ('exp'|'log') '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Type { Number, ImagUnit, Var, Plus, Minus, Star, Slash, Caret, LParen, RParen, FuncExp, FuncLog, End } type;
    double number = 0.0;
    int pos = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& cur() const { return cur_; }

    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        cur_.pos = static_cast<int>(i_);
        if (i_ >= s_.size()) {
            cur_.type = Token::End;
            return;
        }
        const char c = s_[i_];
        switch (c) {
            case '+': cur_.type = Token::Plus; ++i_; return;
            case '-': cur_.type = Token::Minus; ++i_; return;
            case '*': cur_.type = Token::Star; ++i_; return;
            case '/': cur_.type = Token::Slash; ++i_; return;
            case '^': cur_.type = Token::Caret; ++i_; return;
            case '(': cur_.type = Token::LParen; ++i_; return;
            case ')': cur_.type = Token::RParen; ++i_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + i_;
            char* end = nullptr;
            cur_.number = std::strtod(begin, &end);
            if (end == begin)
                throw ParseError(cur_.pos, "number", "malformed number at offset " + std::to_string(cur_.pos));
            i_ += static_cast<std::size_t>(end - begin);
            cur_.type = Token::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
            const std::string word = s_.substr(i_, j - i_);
            i_ = j;
            if (word == "i") { cur_.type = Token::ImagUnit; return; }
            if (word == "z") { cur_.type = Token::Var; return; }
            if (word == "exp") { cur_.type = Token::FuncExp; return; }
            if (word == "log") { cur_.type = Token::FuncLog; return; }
            throw ParseError(cur_.pos, "'i', 'z', 'exp', 'log'",
                             "unknown identifier '" + word + "' at offset " + std::to_string(cur_.pos));
        }
        throw ParseError(cur_.pos, "operator, number, 'i', 'z', '(' ",
                         std::string("unexpected character '") + c + "' at offset " + std::to_string(cur_.pos));
    }

  private:
    const std::string& s_;
    std::size_t i_ = 0;
    Token cur_{};
};

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) {}

    NodeRef run() {
        NodeRef e = expression();
        if (lex_.cur().type != Token::End)
            fail("end of input or binary operator");
        return e;
    }

  private:
    Lexer lex_;

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(lex_.cur().pos, expected,
                         "syntax error at offset " + std::to_string(lex_.cur().pos) + ": expected " + expected);
    }

    NodeRef expression() {
        NodeRef e = term();
        while (true) {
            const auto t = lex_.cur().type;
            if (t == Token::Plus) {
                lex_.advance();
                e = make_add(e, term());
            } else if (t == Token::Minus) {
                lex_.advance();
                e = make_sub(e, term());
            } else {
                return e;
            }
        }
    }

    NodeRef term() {
        NodeRef e = unary();
        while (true) {
            const auto t = lex_.cur().type;
            if (t == Token::Star) {
                lex_.advance();
                e = make_mul(e, unary());
            } else if (t == Token::Slash) {
                lex_.advance();
                e = make_div(e, unary());
            } else {
                return e;
            }
        }
    }

    NodeRef unary() {
        if (lex_.cur().type == Token::Minus) {
            const int pos = lex_.cur().pos;
            lex_.advance();
            auto n = std::make_shared<Node>(*make_neg(unary()));
            n->pos = pos;
            return n;
        }
        return power();
    }

    NodeRef power() {
        NodeRef base = atom();
        if (lex_.cur().type != Token::Caret) return base;
        lex_.advance();
        bool negate = false;
        if (lex_.cur().type == Token::Minus) {
            negate = true;
            lex_.advance();
        }
        if (lex_.cur().type != Token::Number) fail("integer exponent");
        const double v = lex_.cur().number;
        const int pos = lex_.cur().pos;
        long e = std::lround(v);
        if (static_cast<double>(e) != v)
            throw ParseError(pos, "integer exponent",
                             "exponent must be an integer at offset " + std::to_string(pos));
        if (negate) e = -e;
        if (e < -64 || e > 64)
            throw ParseError(pos, "integer exponent in [-64, 64]",
                             "exponent out of range at offset " + std::to_string(pos));
        lex_.advance();
        return make_pow(base, static_cast<int>(e));
    }

    NodeRef atom() {
        const Token t = lex_.cur();
        switch (t.type) {
            case Token::Number: {
                lex_.advance();
                auto n = std::make_shared<Node>(*make_literal(Complex(t.number, 0.0)));
                n->pos = t.pos;
                return n;
            }
            case Token::ImagUnit: {
                lex_.advance();
                auto n = std::make_shared<Node>(*make_literal(Complex(0.0, 1.0)));
                n->pos = t.pos;
                return n;
            }
            case Token::Var: {
                lex_.advance();
                auto n = std::make_shared<Node>(*make_var());
                n->pos = t.pos;
                return n;
            }
            case Token::LParen: {
                lex_.advance();
                NodeRef e = expression();
                if (lex_.cur().type != Token::RParen) fail("')'");
                lex_.advance();
                return e;
            }
            case Token::FuncExp:
            case Token::FuncLog: {
                lex_.advance();
                if (lex_.cur().type != Token::LParen) fail("'('");
                lex_.advance();
                NodeRef arg = expression();
                if (lex_.cur().type != Token::RParen) fail("')'");
                lex_.advance();
                auto n = std::make_shared<Node>(
                    *(t.type == Token::FuncExp ? make_exp(arg) : make_log(arg)));
                n->pos = t.pos;
                return n;
            }
            default:
                fail("number, 'i', 'z', '(', 'exp', 'log'");
        }
    }
};

}  // namespace

NodeRef parse(const std::string& text) {
    if (text.empty()) throw ParseError(0, "expression", "empty expression");
    return Parser(text).run();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Positive reals and 'i' print as atoms; everything else needs parens where
// an atom is expected.
std::string fmt_literal(Complex v) {
    if (v.imag() == 0.0) {
        if (v.real() >= 0.0) return fmt_double(v.real());
        return "(-" + fmt_double(-v.real()) + ")";
    }
    if (v.real() == 0.0) {
        if (v.imag() == 1.0) return "i";
        if (v.imag() == -1.0) return "(-i)";
        if (v.imag() > 0.0) return "(" + fmt_double(v.imag()) + "*i)";
        return "(-" + fmt_double(-v.imag()) + "*i)";
    }
    const std::string re = (v.real() < 0.0 ? "-" : "") + fmt_double(std::abs(v.real()));
    const std::string im = (v.imag() < 0.0 ? "-" : "+") + fmt_double(std::abs(v.imag()));
    return "(" + re + im + "*i)";
}

int precedence(const NodeRef& e) {
    switch (e->kind) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

std::string print_prec(const NodeRef& e, int parent_prec) {
    std::string s;
    switch (e->kind) {
        case Kind::Literal: s = fmt_literal(e->literal); break;
        case Kind::Var: s = "z"; break;
        case Kind::Neg: s = "-" + print_prec(e->a, 3); break;
        case Kind::Add: s = print_prec(e->a, 0) + " + " + print_prec(e->b, 1); break;
        case Kind::Sub: s = print_prec(e->a, 0) + " - " + print_prec(e->b, 1); break;
        case Kind::Mul: s = print_prec(e->a, 1) + "*" + print_prec(e->b, 2); break;
        case Kind::Div: s = print_prec(e->a, 1) + "/" + print_prec(e->b, 2); break;
        case Kind::Pow: s = print_prec(e->a, 4) + "^" + std::to_string(e->exponent); break;
        case Kind::Exp: s = "exp(" + print_prec(e->a, 0) + ")"; break;
        case Kind::Log: s = "log(" + print_prec(e->a, 0) + ")"; break;
    }
    if (precedence(e) <= parent_prec && e->kind != Kind::Literal && e->kind != Kind::Var &&
        e->kind != Kind::Exp && e->kind != Kind::Log)
        return "(" + s + ")";
    return s;
}

}  // namespace

std::string print(const NodeRef& e) { return print_prec(e, 0); }

bool structurally_equal(const NodeRef& a, const NodeRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Literal: return a->literal == b->literal;
        case Kind::Var: return true;
        case Kind::Pow: return a->exponent == b->exponent && structurally_equal(a->a, b->a);
        case Kind::Neg:
        case Kind::Exp:
        case Kind::Log: return structurally_equal(a->a, b->a);
        default: return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

Complex int_pow(Complex base, int e) {
    if (e < 0) {
        if (base == Complex(0.0, 0.0)) throw PoleError("z^negative at z = 0");
        return Complex(1.0, 0.0) / int_pow(base, -e);
    }
    Complex r(1.0, 0.0);
    Complex b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace

Complex evaluate(const NodeRef& e, Complex z) {
    switch (e->kind) {
        case Kind::Literal: return e->literal;
        case Kind::Var: return z;
        case Kind::Neg: return -evaluate(e->a, z);
        case Kind::Add: return evaluate(e->a, z) + evaluate(e->b, z);
        case Kind::Sub: return evaluate(e->a, z) - evaluate(e->b, z);
        case Kind::Mul: return evaluate(e->a, z) * evaluate(e->b, z);
        case Kind::Div: {
            const Complex d = evaluate(e->b, z);
            if (d == Complex(0.0, 0.0)) throw PoleError("division by zero");
            return evaluate(e->a, z) / d;
        }
        case Kind::Pow: return int_pow(evaluate(e->a, z), e->exponent);
        case Kind::Exp: return std::exp(evaluate(e->a, z));
        case Kind::Log: {
            const Complex a = evaluate(e->a, z);
            if (a == Complex(0.0, 0.0)) throw EvalError("log(0)");
            return std::log(a);
        }
    }
    throw EvalError("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Differentiation with constant folding
// ---------------------------------------------------------------------------

namespace {

bool is_const(const NodeRef& e) { return e->kind == Kind::Literal; }

NodeRef fold_neg(const NodeRef& e) {
    if (is_const(e)) return make_literal(-e->literal);
    return make_neg(e);
}

NodeRef fold_add(const NodeRef& a, const NodeRef& b) {
    if (is_literal(a, {0.0, 0.0})) return b;
    if (is_literal(b, {0.0, 0.0})) return a;
    if (is_const(a) && is_const(b)) return make_literal(a->literal + b->literal);
    return make_add(a, b);
}

NodeRef fold_sub(const NodeRef& a, const NodeRef& b) {
    if (is_literal(b, {0.0, 0.0})) return a;
    if (is_literal(a, {0.0, 0.0})) return fold_neg(b);
    if (is_const(a) && is_const(b)) return make_literal(a->literal - b->literal);
    return make_sub(a, b);
}

NodeRef fold_mul(const NodeRef& a, const NodeRef& b) {
    if (is_literal(a, {0.0, 0.0}) || is_literal(b, {0.0, 0.0})) return make_literal({0.0, 0.0});
    if (is_literal(a, {1.0, 0.0})) return b;
    if (is_literal(b, {1.0, 0.0})) return a;
    if (is_const(a) && is_const(b)) return make_literal(a->literal * b->literal);
    return make_mul(a, b);
}

NodeRef fold_div(const NodeRef& a, const NodeRef& b) {
    if (is_literal(a, {0.0, 0.0}) && !is_literal(b, {0.0, 0.0})) return make_literal({0.0, 0.0});
    if (is_literal(b, {1.0, 0.0})) return a;
    if (is_const(a) && is_const(b) && !is_literal(b, {0.0, 0.0}))
        return make_literal(a->literal / b->literal);
    return make_div(a, b);
}

NodeRef fold_pow(const NodeRef& base, int e) {
    if (e == 0) return make_literal({1.0, 0.0});
    if (e == 1) return base;
    return make_pow(base, e);
}

}  // namespace

NodeRef differentiate(const NodeRef& e) {
    switch (e->kind) {
        case Kind::Literal: return make_literal({0.0, 0.0});
        case Kind::Var: return make_literal({1.0, 0.0});
        case Kind::Neg: return fold_neg(differentiate(e->a));
        case Kind::Add: return fold_add(differentiate(e->a), differentiate(e->b));
        case Kind::Sub: return fold_sub(differentiate(e->a), differentiate(e->b));
        case Kind::Mul:
            return fold_add(fold_mul(differentiate(e->a), e->b), fold_mul(e->a, differentiate(e->b)));
        case Kind::Div:
            // (a/b)' = (a'b - ab')/b^2
            return fold_div(fold_sub(fold_mul(differentiate(e->a), e->b),
                                     fold_mul(e->a, differentiate(e->b))),
                            fold_pow(e->b, 2));
        case Kind::Pow: {
            if (e->exponent == 0) return make_literal({0.0, 0.0});
            const NodeRef inner = differentiate(e->a);
            const NodeRef coeff = make_literal({static_cast<double>(e->exponent), 0.0});
            return fold_mul(fold_mul(coeff, fold_pow(e->a, e->exponent - 1)), inner);
        }
        case Kind::Exp: return fold_mul(make_exp(e->a), differentiate(e->a));
        case Kind::Log: return fold_div(differentiate(e->a), e->a);
    }
    throw EvalError("corrupt expression node");
}

}  // namespace maxsurf::expr
