#ifndef GROUPTEST_ORACLE_HPP
#define GROUPTEST_ORACLE_HPP

#include <optional>
#include <string>

#include "grouptest/fourier.hpp"
#include "grouptest/functions.hpp"
#include "grouptest/irreps.hpp"
#include "grouptest/rng.hpp"

namespace grouptest {
namespace oracle {

// Exact brute-force ground truth.  Everything here enumerates; nothing
// samples except the heuristic unitary gap search.

// The three canonical class functions: plurality value per class (ties
// broken to the smallest value by (real, imag) lexicographic order), class
// mean (the nearest class function), and the self-corrector's target
// (plurality where the plurality fraction exceeds 1/2, class mean otherwise).
ScalarFunction plurality_class_function(const ScalarFunction& f);
ScalarFunction mean_class_function(const ScalarFunction& f);
ScalarFunction corrected_class_function(const ScalarFunction& f);

// Pr_{x,y}[f(x) != f(y x y^-1)], exact via per-class value counts.
double exact_conjugation_rejection_probability(const ScalarFunction& f);

// Pr_{x,y}[f(x) f(y) != f(xy)], exact double loop.
double exact_product_rejection_probability(const ScalarFunction& f, double tol = 0.0);

struct FarnessCertificate {
  std::string property;
  double distance = 0.0;
  enum class Method { exhaustive, closed_form, heuristic } method = Method::exhaustive;
  // Unconstrained / trace-invariant lower bound where the property admits one.
  std::optional<double> lower_bound;
  // Optimizer artifact; which fields are set depends on the property.
  std::string argmin_label;          // irrep label, or "zero"
  std::optional<Complex> scalar;     // the c of the nearest character ray
  std::optional<Matrix> unitary;     // best-found U of the gap search
  std::string note;
};

// Exact min distance to {zero} and the one-dimensional characters (the only
// homomorphisms into the unit disk).
FarnessCertificate distance_to_homomorphisms(const ScalarFunction& f, const IrrepBasis& basis);

// Min over irreps of dist(f, c chi_phi) with c constrained so the ray stays
// in the disk; the certificate also carries the unconstrained lower bound.
FarnessCertificate distance_to_character_rays(const ScalarFunction& f, const IrrepBasis& basis);

// Recomputes the certified distance from the optimizer artifact.
double revalidate(const FarnessCertificate& cert, const ScalarFunction& f,
                  const IrrepBasis& basis);
double revalidate(const FarnessCertificate& cert, const MatrixFunction& f,
                  const MatrixFunction& g);

// E_{x,y}[f(x) f(y) conj(f(xy))] along two independent routes.
struct CubicExpectation {
  Complex time_domain{0, 0};
  Complex fourier_domain{0, 0};
};
CubicExpectation cubic_expectation(const ScalarFunction& f, const IrrepBasis& basis);
Complex cubic_expectation_fourier(const ScalarFunction& f, const IrrepBasis& basis);

// E_{x,y} |f(x)f(y) - f(1) E_z[f(y z x z^-1)]|^2, exact (inner expectation by
// class averaging).
double weyl_defect(const ScalarFunction& f);
// Same quantity through the Fourier identity
// sum_phi d_phi ||f - f(1) chi~_phi||^2 sum_ij |fhat(phi)_ij|^2.
double weyl_defect_fourier(const ScalarFunction& f, const IrrepBasis& basis);

// Fraction of (x,y) pairs whose exact Weyl residual |f(x)f(y) - f(1) E_z[..]|
// exceeds the threshold.  Used to certify per-round rejection rates.
double weyl_round_rejection_probability(const ScalarFunction& f, double threshold);

// x -> U0 g(x) U0^*; Frobenius norms are preserved, so boundedness is too.
MatrixFunction plant_unitary_equivalent(const MatrixFunction& g, const Matrix& u0);

// Local minimization of E_x ||f(x) - U g(x) U^*||_F^2 over U(d) from
// `restarts` Haar starts (method=heuristic: the achieved value is an upper
// bound on the true distance), plus the rigorous trace lower bound.
FarnessCertificate unitary_equivalence_gap(const MatrixFunction& f, const MatrixFunction& g,
                                           int restarts, Rng& rng);

// max(0, sqrt(E_x |tr f(x) - tr g(x)|^2 / (4d))): a conjugation-invariant
// lower bound on dist(f, U g U^*) for every U.
double unitary_trace_lower_bound(const MatrixFunction& f, const MatrixFunction& g);

}  // namespace oracle
}  // namespace grouptest

#endif
