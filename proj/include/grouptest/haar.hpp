#ifndef GROUPTEST_HAAR_HPP
#define GROUPTEST_HAAR_HPP

#include "grouptest/rng.hpp"
#include "grouptest/types.hpp"

namespace grouptest {

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
// the triangular factor's diagonal normalized.  The phase correction is what
// makes the distribution Haar rather than merely unitary.
Matrix sample_haar_unitary(int dim, Rng& rng);

}  // namespace grouptest

#endif
