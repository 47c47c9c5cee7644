#include "gaugequad/bind.hpp"

#include <memory>

namespace gaugequad {

Evaluator bind1(const expr::Expr& e, const std::string& var) {
  auto c = std::make_shared<const expr::Compiled>(e, std::vector<std::string>{var});
  return [c](double x) { return (*c)(x); };
}

Evaluator2 bind2(const expr::Expr& e, const std::string& x, const std::string& y) {
  auto c = std::make_shared<const expr::Compiled>(e, std::vector<std::string>{x, y});
  return [c](double u, double v) { return (*c)(u, v); };
}

}  // namespace gaugequad
