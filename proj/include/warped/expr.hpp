#pragma once

#include <memory>
#include <string>

namespace warped {

// Arithmetic expression tree over the single variable t.
//
// Grammar accepted by parse_expression:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?            -- '^' is right-associative
//   base   := number | 't' | ident '(' expr ')' | '(' expr ')' | '-' base
//
// Supported functions: sin cos sinh cosh exp sqrt abs.
// Note the grammar places unary minus inside `base`, so "-t^2" parses
// as (-t)^2.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind = Kind::Number;
    double value = 0.0; // Number
    std::string func;   // Call
    ExprPtr lhs, rhs;   // children; rhs unused for Neg, Call

    static ExprPtr number(double v);
    static ExprPtr var();
    static ExprPtr neg(ExprPtr e);
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
    static ExprPtr call(std::string name, ExprPtr arg);
};

// Throws ParseError (with byte offset) on malformed input.
ExprPtr parse_expression(const std::string& text);

// Pure tree walk; may return non-finite values (poles, overflow).
// Integer exponents with |e| <= 64 are evaluated by repeated
// multiplication so that printed Horner forms reparse bit-identically.
double eval_expression(const Expr& e, double t);

// Emits text that reparses to a structurally identical tree.
std::string print_expression(const Expr& e);

// Builds the tree for s^2 * e(s*t).
ExprPtr scale_expression(const ExprPtr& e, double s);

// %.17g formatting used everywhere a double becomes text.
std::string format_double(double v);

} // namespace warped
