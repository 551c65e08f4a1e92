#ifndef GROUPTEST_FUNCTIONS_HPP
#define GROUPTEST_FUNCTIONS_HPP

#include <functional>
#include <vector>

#include "grouptest/group.hpp"
#include "grouptest/types.hpp"

namespace grouptest {

// Tabulated f: G -> C.  bounded means every value lies in the closed unit
// disk (up to rounding slack); the testers require bounded inputs.
struct ScalarFunction {
  GroupPtr group;
  std::vector<Complex> values;
  bool bounded = false;

  static ScalarFunction tabulate(GroupPtr g, const std::function<Complex(int)>& fn);
  static ScalarFunction from_values(GroupPtr g, std::vector<Complex> values);
  static ScalarFunction constant(GroupPtr g, Complex c);

  Complex operator()(int x) const { return values[std::size_t(x)]; }
  bool is_class_function(double tol = 0.0) const;
};

// Tabulated f: G -> M_d(C); bounded means Frobenius norm <= 1 everywhere.
struct MatrixFunction {
  GroupPtr group;
  int dim = 0;
  std::vector<Matrix> values;
  bool bounded = false;

  static MatrixFunction from_values(GroupPtr g, int dim, std::vector<Matrix> values);
  static MatrixFunction constant(GroupPtr g, const Matrix& m);

  const Matrix& operator()(int x) const { return values[std::size_t(x)]; }
};

void require_same_group(const GroupPtr& a, const GroupPtr& b);

}  // namespace grouptest

#endif
