#ifndef GROUPTEST_IRREPS_HPP
#define GROUPTEST_IRREPS_HPP

#include <string>
#include <vector>

#include "grouptest/functions.hpp"
#include "grouptest/group.hpp"
#include "grouptest/types.hpp"

namespace grouptest {

// One irreducible unitary representation, tabulated per element.
struct UnitaryIrrep {
  std::string label;
  int dim = 0;
  std::vector<Matrix> mats;  // one d x d unitary per group element

  const Matrix& operator()(int x) const { return mats[std::size_t(x)]; }
};

// Complete system of pairwise-inequivalent unitary irreps of a group.
// Labels are stable across engine seeds: irreps are sorted by (dim,
// lexicographic character values on the canonically ordered classes).
struct IrrepBasis {
  GroupPtr group;
  std::vector<UnitaryIrrep> irreps;

  int size() const { return int(irreps.size()); }
  const UnitaryIrrep& operator[](int i) const { return irreps[std::size_t(i)]; }
  const UnitaryIrrep& by_label(const std::string& label) const;
  int index_of_label(const std::string& label) const;
};

struct IrrepOptions {
  std::uint64_t engine_seed = 0;
  int order_cap = 512;
  int max_retries = 8;
};

// Splits the left regular representation by a random Hermitian element of its
// commutant, groups the resulting invariant subspaces into equivalence
// classes by character, and keeps one unitary copy per class.  Verifies all
// basis invariants and retries with a fresh commutant element on failure.
IrrepBasis compute_irreps(GroupPtr g, const IrrepOptions& options = {});

// chi(x) = tr(phi(x)), tabulated constant on each conjugacy class so the
// result is a class function under exact value comparison.
ScalarFunction character(const GroupPtr& g, const UnitaryIrrep& phi);
ScalarFunction normalized_character(const GroupPtr& g, const UnitaryIrrep& phi);

// Residual diagnostics used by the invariant checks and tests.
double homomorphism_residual(const FiniteGroup& g, const UnitaryIrrep& phi);
double unitarity_residual(const FiniteGroup& g, const UnitaryIrrep& phi);
double irreducibility_residual(const FiniteGroup& g, const UnitaryIrrep& phi);
double schur_residual(const FiniteGroup& g, const IrrepBasis& basis);

}  // namespace grouptest

#endif
