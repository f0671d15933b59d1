#pragma once

#include "kontakt/expr.hpp"

#include <string>
#include <vector>

namespace kontakt::detail {

// "c*atom" with the coefficient parenthesised unless it is a single term
std::string scaled_atom(const Expr &c, const std::string &atom, const NameFn &name);
// "a + b - c"
std::string join_terms(const std::vector<std::string> &terms);

} // namespace kontakt::detail
