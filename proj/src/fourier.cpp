#include "grouptest/fourier.hpp"

#include <cmath>

namespace grouptest {

const Matrix& FourierCoefficients::at(const std::string& label) const {
  const auto it = coeffs.find(label);
  if (it == coeffs.end()) throw ShapeMismatch("no Fourier coefficient for label '" + label + "'");
  return it->second;
}

FourierCoefficients fourier_transform(const ScalarFunction& f, const IrrepBasis& basis) {
  require_same_group(f.group, basis.group);
  const int n = f.group->order();
  FourierCoefficients out;
  for (const UnitaryIrrep& phi : basis.irreps) {
    Matrix c = Matrix::Zero(phi.dim, phi.dim);
    for (int x = 0; x < n; ++x) c += f.values[x] * phi(x).conjugate();
    out.coeffs[phi.label] = c / double(n);
  }
  return out;
}

ScalarFunction inverse_fourier(const FourierCoefficients& f, const IrrepBasis& basis) {
  if (f.coeffs.size() != basis.irreps.size())
    throw ShapeMismatch("coefficient count does not match basis");
  const int n = basis.group->order();
  std::vector<Complex> values(n, Complex(0, 0));
  for (const UnitaryIrrep& phi : basis.irreps) {
    const Matrix& c = f.at(phi.label);
    if (c.rows() != phi.dim || c.cols() != phi.dim)
      throw ShapeMismatch("coefficient for '" + phi.label + "' has wrong shape");
    for (int x = 0; x < n; ++x)
      values[x] += double(phi.dim) * (c.array() * phi(x).array()).sum();
  }
  return ScalarFunction::from_values(basis.group, std::move(values));
}

Complex inner_product(const ScalarFunction& f, const ScalarFunction& g) {
  require_same_group(f.group, g.group);
  Complex s = 0;
  for (int x = 0; x < f.group->order(); ++x) s += f.values[x] * std::conj(g.values[x]);
  return s / double(f.group->order());
}

double l2_norm(const ScalarFunction& f) {
  double s = 0;
  for (const Complex& v : f.values) s += std::norm(v);
  return std::sqrt(s / double(f.group->order()));
}

double distance(const ScalarFunction& f, const ScalarFunction& g) {
  require_same_group(f.group, g.group);
  double s = 0;
  for (int x = 0; x < f.group->order(); ++x) s += std::norm(f.values[x] - g.values[x]);
  return 0.5 * std::sqrt(s / double(f.group->order()));
}

Complex inner_product(const MatrixFunction& f, const MatrixFunction& g) {
  require_same_group(f.group, g.group);
  if (f.dim != g.dim) throw DimMismatch("matrix functions have different dimensions");
  Complex s = 0;
  for (int x = 0; x < f.group->order(); ++x)
    s += (f.values[x].array() * g.values[x].array().conjugate()).sum();
  return s / double(f.group->order());
}

double l2_norm(const MatrixFunction& f) {
  double s = 0;
  for (const Matrix& m : f.values) s += m.squaredNorm();
  return std::sqrt(s / double(f.group->order()));
}

double distance(const MatrixFunction& f, const MatrixFunction& g) {
  require_same_group(f.group, g.group);
  if (f.dim != g.dim) throw DimMismatch("matrix functions have different dimensions");
  double s = 0;
  for (int x = 0; x < f.group->order(); ++x) s += (f.values[x] - g.values[x]).squaredNorm();
  return 0.5 * std::sqrt(s / double(f.group->order()));
}

}  // namespace grouptest
