#include "grouptest/functions.hpp"

#include <cmath>

namespace grouptest {

namespace {

bool all_in_disk(const std::vector<Complex>& values) {
  for (const Complex& v : values)
    if (std::abs(v) > 1.0 + 1e-12) return false;
  return true;
}

}  // namespace

ScalarFunction ScalarFunction::tabulate(GroupPtr g, const std::function<Complex(int)>& fn) {
  std::vector<Complex> values(g->order());
  for (int x = 0; x < g->order(); ++x) values[x] = fn(x);
  return from_values(std::move(g), std::move(values));
}

ScalarFunction ScalarFunction::from_values(GroupPtr g, std::vector<Complex> values) {
  if (int(values.size()) != g->order())
    throw ShapeMismatch("function has " + std::to_string(values.size()) +
                        " values for a group of order " + std::to_string(g->order()));
  ScalarFunction f;
  f.group = std::move(g);
  f.values = std::move(values);
  f.bounded = all_in_disk(f.values);
  return f;
}

ScalarFunction ScalarFunction::constant(GroupPtr g, Complex c) {
  const std::size_t order = std::size_t(g->order());
  return from_values(std::move(g), std::vector<Complex>(order, c));
}

bool ScalarFunction::is_class_function(double tol) const {
  for (const auto& cls : group->classes()) {
    const Complex v0 = values[cls.front()];
    for (int x : cls)
      if (std::abs(values[x] - v0) > tol) return false;
  }
  return true;
}

MatrixFunction MatrixFunction::from_values(GroupPtr g, int dim, std::vector<Matrix> values) {
  if (int(values.size()) != g->order())
    throw ShapeMismatch("matrix function has " + std::to_string(values.size()) +
                        " values for a group of order " + std::to_string(g->order()));
  for (const Matrix& m : values)
    if (m.rows() != dim || m.cols() != dim)
      throw DimMismatch("matrix value is not " + std::to_string(dim) + "x" + std::to_string(dim));
  MatrixFunction f;
  f.group = std::move(g);
  f.dim = dim;
  f.values = std::move(values);
  f.bounded = true;
  for (const Matrix& m : f.values)
    if (m.norm() > 1.0 + 1e-12) f.bounded = false;
  return f;
}

MatrixFunction MatrixFunction::constant(GroupPtr g, const Matrix& m) {
  const int order = g->order();
  return from_values(std::move(g), int(m.rows()), std::vector<Matrix>(std::size_t(order), m));
}

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return;
  if (a && b && a->same_table(*b)) return;
  throw GroupMismatch("functions are defined on different groups");
}

}  // namespace grouptest
