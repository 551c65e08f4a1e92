#include "grouptest/haar.hpp"

#include <Eigen/QR>
#include <cmath>

namespace grouptest {

Matrix sample_haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DimMismatch("unitary dimension must be >= 1");
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0) ? d / m : Complex(1, 0);
  }
  return q;
}

}  // namespace grouptest
