#pragma once

// Evaluators built from parsed expressions.

#include <string>

#include "gaugequad/calculus.hpp"
#include "gaugequad/expr.hpp"

namespace gaugequad {

// Throws expr::UnboundVariable if `e` uses a name other than `var`.
Evaluator bind1(const expr::Expr& e, const std::string& var);
Evaluator2 bind2(const expr::Expr& e, const std::string& x, const std::string& y);

}  // namespace gaugequad
