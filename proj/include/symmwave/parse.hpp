#pragma once

#include <string>

#include "symmwave/expr.hpp"

namespace symmwave {

// Text grammar: identifiers t, r, u, u_t, u_r, u_tr, u_rr, ..., parameters
// a b c p n (and shorthands k = a+b, m = b*(n-1)*(p+1)/(a+b), nu = 2-n),
// rationals, + - * / ^, ln(...), parentheses. parse(render(e)) == e on
// canonical forms.
Expr parse_expr(const std::string& text);
std::string render(const Expr& e);

// parameter-only expression -> field element; SyntaxError if jets occur
ParamScalar parse_scalar(const std::string& text);
ParamScalar expr_to_scalar(const Expr& e);

}  // namespace symmwave
