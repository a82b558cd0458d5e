#pragma once

// Element expressions over KG, e.g. "(1+a)^2*(1+b)" or "[1,0]*(1+a) + b".
//
//   expr    := term (('+' | '-') term)*
//   term    := power ('*' power)*
//   power   := unary ('^' ['-'] integer)?
//   unary   := '-' unary | primary
//   primary := integer | '[' integer (',' integer)* ']' | generator | '(' expr ')'
//
// Generators are the letters a, b, c, ... in the group's generator order.
// Integers denote n*1; bracketed lists are degree-descending scalar
// coefficients. Negative exponents are allowed on group elements only.

#include <memory>
#include <string_view>

#include "fmbasis/galg.hpp"

namespace fmbasis::expr {

galg::Element parse_element(const std::shared_ptr<const galg::GroupAlgebra>& alg, std::string_view text);

/// "3" or "[1,0]".
ff::Scalar parse_scalar(const ff::Field& field, std::string_view text);

}  // namespace fmbasis::expr
