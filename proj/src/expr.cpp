#include "warped/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "warped/errors.hpp"

namespace warped {

ExprPtr Expr::number(double v)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->value = v;
    return e;
}

ExprPtr Expr::var()
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    return e;
}

ExprPtr Expr::neg(ExprPtr child)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(child);
    return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr a, ExprPtr b)
{
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::call(std::string name, ExprPtr arg)
{
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call;
    e->func = std::move(name);
    e->lhs = std::move(arg);
    return e;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

bool is_function_name(const std::string& name)
{
    static const std::array<const char*, 7> names = {"sin", "cos", "sinh", "cosh", "exp", "sqrt", "abs"};
    for (const char* n : names)
        if (name == n)
            return true;
    return false;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c)
    {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr()
    {
        ExprPtr lhs = term();
        for (;;) {
            if (consume('+'))
                lhs = Expr::binary(Expr::Kind::Add, lhs, term());
            else if (consume('-'))
                lhs = Expr::binary(Expr::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    ExprPtr term()
    {
        ExprPtr lhs = factor();
        for (;;) {
            if (consume('*'))
                lhs = Expr::binary(Expr::Kind::Mul, lhs, factor());
            else if (consume('/'))
                lhs = Expr::binary(Expr::Kind::Div, lhs, factor());
            else
                return lhs;
        }
    }

    ExprPtr factor()
    {
        ExprPtr b = base();
        if (consume('^'))
            return Expr::binary(Expr::Kind::Pow, b, factor());
        return b;
    }

    ExprPtr base()
    {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return Expr::neg(base());
        }
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!consume(')'))
                throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        if (c == '\0')
            throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number()
    {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin)
            throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return Expr::number(v);
    }

    ExprPtr identifier()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "t")
            return Expr::var();
        if (is_function_name(name)) {
            if (!consume('('))
                throw ParseError("expected '(' after function '" + name + "'", pos_);
            ExprPtr arg = expr();
            if (!consume(')'))
                throw ParseError("expected ')'", pos_);
            return Expr::call(name, arg);
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

double int_pow(double base, long e)
{
    if (e < 0)
        return 1.0 / int_pow(base, -e);
    double r = 1.0;
    for (long i = 0; i < e; ++i)
        r *= base;
    return r;
}

} // namespace

ExprPtr parse_expression(const std::string& text)
{
    return Parser(text).parse();
}

double eval_expression(const Expr& e, double t)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.value;
    case Expr::Kind::Var:
        return t;
    case Expr::Kind::Neg:
        return -eval_expression(*e.lhs, t);
    case Expr::Kind::Add:
        return eval_expression(*e.lhs, t) + eval_expression(*e.rhs, t);
    case Expr::Kind::Sub:
        return eval_expression(*e.lhs, t) - eval_expression(*e.rhs, t);
    case Expr::Kind::Mul:
        return eval_expression(*e.lhs, t) * eval_expression(*e.rhs, t);
    case Expr::Kind::Div:
        return eval_expression(*e.lhs, t) / eval_expression(*e.rhs, t);
    case Expr::Kind::Pow: {
        double b = eval_expression(*e.lhs, t);
        double x = eval_expression(*e.rhs, t);
        double ipart;
        if (std::modf(x, &ipart) == 0.0 && std::abs(ipart) <= 64.0)
            return int_pow(b, static_cast<long>(ipart));
        return std::pow(b, x);
    }
    case Expr::Kind::Call: {
        double a = eval_expression(*e.lhs, t);
        if (e.func == "sin")
            return std::sin(a);
        if (e.func == "cos")
            return std::cos(a);
        if (e.func == "sinh")
            return std::sinh(a);
        if (e.func == "cosh")
            return std::cosh(a);
        if (e.func == "exp")
            return std::exp(a);
        if (e.func == "sqrt")
            return std::sqrt(a);
        if (e.func == "abs")
            return std::abs(a);
        throw EvalError("unknown function '" + e.func + "'");
    }
    }
    throw EvalError("corrupt expression node");
}

namespace {

// Wraps sub-expressions in parentheses only where the grammar requires
// them for an exact reparse.
std::string print_node(const Expr& e);

bool is_atom(const Expr& e)
{
    return e.kind == Expr::Kind::Var || e.kind == Expr::Kind::Call ||
           (e.kind == Expr::Kind::Number && !std::signbit(e.value));
}

std::string atom_or_paren(const Expr& e)
{
    if (is_atom(e))
        return print_node(e);
    return "(" + print_node(e) + ")";
}

int precedence(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
        return 2;
    case Expr::Kind::Pow:
        return 3;
    default:
        return 4;
    }
}

std::string print_child(const Expr& e, int min_prec)
{
    if (precedence(e) < min_prec)
        return "(" + print_node(e) + ")";
    return print_node(e);
}

std::string print_node(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        if (std::signbit(e.value))
            return "(" + format_double(e.value) + ")";
        return format_double(e.value);
    case Expr::Kind::Var:
        return "t";
    case Expr::Kind::Neg:
        return "-" + atom_or_paren(*e.lhs);
    case Expr::Kind::Add:
        return print_child(*e.lhs, 1) + "+" + print_child(*e.rhs, 2);
    case Expr::Kind::Sub:
        return print_child(*e.lhs, 1) + "-" + print_child(*e.rhs, 2);
    case Expr::Kind::Mul:
        return print_child(*e.lhs, 2) + "*" + print_child(*e.rhs, 3);
    case Expr::Kind::Div:
        return print_child(*e.lhs, 2) + "/" + print_child(*e.rhs, 3);
    case Expr::Kind::Pow:
        return atom_or_paren(*e.lhs) + "^" + print_child(*e.rhs, 3);
    case Expr::Kind::Call:
        return e.func + "(" + print_node(*e.lhs) + ")";
    }
    return {};
}

ExprPtr substitute_var(const ExprPtr& e, const ExprPtr& repl)
{
    switch (e->kind) {
    case Expr::Kind::Number:
        return e;
    case Expr::Kind::Var:
        return repl;
    case Expr::Kind::Neg:
        return Expr::neg(substitute_var(e->lhs, repl));
    case Expr::Kind::Call:
        return Expr::call(e->func, substitute_var(e->lhs, repl));
    default:
        return Expr::binary(e->kind, substitute_var(e->lhs, repl), substitute_var(e->rhs, repl));
    }
}

} // namespace

std::string print_expression(const Expr& e)
{
    return print_node(e);
}

ExprPtr scale_expression(const ExprPtr& e, double s)
{
    ExprPtr st = Expr::binary(Expr::Kind::Mul, Expr::number(s), Expr::var());
    return Expr::binary(Expr::Kind::Mul, Expr::number(s * s), substitute_var(e, st));
}

} // namespace warped
