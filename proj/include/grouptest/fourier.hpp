#ifndef GROUPTEST_FOURIER_HPP
#define GROUPTEST_FOURIER_HPP

#include <map>
#include <string>

#include "grouptest/functions.hpp"
#include "grouptest/irreps.hpp"

namespace grouptest {

// Map irrep label -> d_phi x d_phi coefficient matrix, keyed exactly by the
// labels of the basis it was computed against.
struct FourierCoefficients {
  std::map<std::string, Matrix> coeffs;

  const Matrix& at(const std::string& label) const;
};

// fhat(phi) = E_x[f(x) * conj(phi(x))] (entrywise conjugate).
FourierCoefficients fourier_transform(const ScalarFunction& f, const IrrepBasis& basis);

// x -> sum_phi d_phi sum_ij F(phi)_ij phi_ij(x).
ScalarFunction inverse_fourier(const FourierCoefficients& f, const IrrepBasis& basis);

// <f, g> = E_x[f(x) conj(g(x))]; all values by full enumeration.
Complex inner_product(const ScalarFunction& f, const ScalarFunction& g);
double l2_norm(const ScalarFunction& f);
double distance(const ScalarFunction& f, const ScalarFunction& g);

Complex inner_product(const MatrixFunction& f, const MatrixFunction& g);
double l2_norm(const MatrixFunction& f);
double distance(const MatrixFunction& f, const MatrixFunction& g);

}  // namespace grouptest

#endif
