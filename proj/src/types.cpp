#include "hhfrac/types.hpp"

#include <cmath>
#include <sstream>

namespace hhfrac {

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream msg;
    msg << "invalid interval [" << a_ << ", " << b_
        << "]: endpoints must be finite with a < b";
    throw std::domain_error(msg.str());
  }
}

bool operator==(const Interval& lhs, const Interval& rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b;
}

FracOrder::FracOrder(double alpha_) : alpha(alpha_) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) {
    std::ostringstream msg;
    msg << "fractional order must be finite and > 0, got " << alpha_;
    throw std::domain_error(msg.str());
  }
}

EvaluationError::EvaluationError(const std::string& what_arg, double point)
    : std::runtime_error(what_arg), point_(point) {}

}  // namespace hhfrac
