#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace hhfrac {

using RealFn = std::function<double(double)>;

// Closed bounded interval [a, b] with a < b. Construction validates; a
// default-constructed Interval is [0, 1].
struct Interval {
  double a;
  double b;

  Interval() : a(0.0), b(1.0) {}
  Interval(double a_, double b_);

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x >= a && x <= b; }
};

bool operator==(const Interval& lhs, const Interval& rhs);

// Order of a fractional integral operator. Strictly positive and finite;
// construction throws std::domain_error otherwise.
struct FracOrder {
  double alpha;
  explicit FracOrder(double alpha_);
};

// Thrown when a function or integrand produces a non-finite value or is
// evaluated outside its domain. Carries the offending abscissa.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what_arg, double point);
  double point() const noexcept { return point_; }

 private:
  double point_;
};

}  // namespace hhfrac
