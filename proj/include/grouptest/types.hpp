#ifndef GROUPTEST_TYPES_HPP
#define GROUPTEST_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace grouptest {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr const char* kToolVersion = "0.1.0";

// Scale-aware slack for accumulated rounding error.  rep invariants use
// tau_rep(d_phi); transform identities use tau_num(|G|).
inline double tau_rep(int dim) { return 1e-8 * std::sqrt(double(dim)); }
inline double tau_num(int order) { return 1e-8 * std::sqrt(double(order)); }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAGroup : Error {
  using Error::Error;
};
struct OrderCapExceeded : Error {
  using Error::Error;
};
struct GroupMismatch : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct DimMismatch : Error {
  using Error::Error;
};
struct GroupTooLarge : Error {
  using Error::Error;
};
struct NumericalFailure : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace grouptest

#endif
