#include "grouptest/irreps.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace grouptest {

const UnitaryIrrep& IrrepBasis::by_label(const std::string& label) const {
  const int i = index_of_label(label);
  if (i < 0) throw Error("no irrep labeled '" + label + "'");
  return irreps[std::size_t(i)];
}

int IrrepBasis::index_of_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (irreps[std::size_t(i)].label == label) return i;
  return -1;
}

namespace {

// The left regular representation acts on C^G by R(x) e_y = e_{xy}, so
// (R(x) B)[u, :] = B[x^{-1} u, :].
Matrix regular_apply(const FiniteGroup& g, int x, const Matrix& b) {
  Matrix out(b.rows(), b.cols());
  const int xi = g.inv(x);
  for (int u = 0; u < int(b.rows()); ++u) out.row(u) = b.row(g.mul(xi, u));
  return out;
}

// Average of R(x) H R(x)^* over the group: a random Hermitian element of the
// commutant.  Entry-wise, (R(x) H R(x)^*)[u, v] = H[x^{-1} u, x^{-1} v].
Matrix commutant_element(const FiniteGroup& g, Rng& rng) {
  const int n = g.order();
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Complex(rng.gaussian(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex z = rng.complex_gaussian();
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  Matrix t = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    const int xi = g.inv(x);
    for (int u = 0; u < n; ++u) {
      const int xu = g.mul(xi, u);
      for (int v = 0; v < n; ++v) t(u, v) += h(xu, g.mul(xi, v));
    }
  }
  t /= double(n);
  return ((t + t.adjoint()) / 2.0).eval();
}

struct Block {
  Matrix basis;                  // n x d orthonormal columns spanning an invariant subspace
  std::vector<Complex> charval;  // character on class representatives
};

std::vector<Complex> block_character(const FiniteGroup& g, const Matrix& basis) {
  std::vector<Complex> chi(g.class_count());
  for (int c = 0; c < g.class_count(); ++c) {
    const int x = g.class_members(c).front();
    chi[c] = (basis.adjoint() * regular_apply(g, x, basis)).trace();
  }
  return chi;
}

double char_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  // Compare on a 1e-6 grid so fp noise cannot flip the order.
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long long ar = llround(a[i].real() * 1e6), br = llround(b[i].real() * 1e6);
    if (ar != br) return ar < br;
    const long long ai = llround(a[i].imag() * 1e6), bi = llround(b[i].imag() * 1e6);
    if (ai != bi) return ai < bi;
  }
  return false;
}

IrrepBasis attempt(GroupPtr gp, std::uint64_t seed) {
  const FiniteGroup& g = *gp;
  const int n = g.order();
  Rng rng(seed);
  const Matrix t = commutant_element(g, rng);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
  if (eig.info() != Eigen::Success) throw NumericalFailure("eigendecomposition failed");
  const auto& evals = eig.eigenvalues();
  const Matrix& evecs = eig.eigenvectors();

  // Cluster adjacent eigenvalues; each cluster spans an invariant subspace.
  const double scale = std::max(1.0, std::abs(evals(0)) + std::abs(evals(n - 1)));
  const double gap_tol = 1e-7 * scale;
  std::vector<Block> blocks;
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || evals(i) - evals(i - 1) > gap_tol) {
      Block blk;
      blk.basis = evecs.middleCols(start, i - start);
      blk.charval = block_character(g, blk.basis);
      blocks.push_back(std::move(blk));
      start = i;
    }
  }

  // Group equivalent copies by character; keep one representative per class.
  std::vector<int> rep_block;
  std::vector<int> copies;
  for (int i = 0; i < int(blocks.size()); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < rep_block.size(); ++k) {
      if (char_distance(blocks[i].charval, blocks[rep_block[k]].charval) < 0.5) {
        ++copies[k];
        found = true;
        break;
      }
    }
    if (!found) {
      rep_block.push_back(i);
      copies.push_back(1);
    }
  }

  if (int(rep_block.size()) != g.class_count())
    throw NumericalFailure("irrep count does not match class count");

  long long dim_sq = 0;
  for (std::size_t k = 0; k < rep_block.size(); ++k) {
    const int d = int(blocks[rep_block[k]].basis.cols());
    // The regular representation contains d copies of a dim-d irrep, and the
    // commutant element splits each isotypic component into d blocks of
    // dimension d.
    if (copies[k] != d) throw NumericalFailure("isotypic component split unevenly");
    dim_sq += (long long)d * d;
  }
  if (dim_sq != n) throw NumericalFailure("sum of squared dims does not match order");

  // Sort representatives by (dim, lexicographic character on classes).
  std::sort(rep_block.begin(), rep_block.end(), [&](int a, int b) {
    const int da = int(blocks[a].basis.cols()), db = int(blocks[b].basis.cols());
    if (da != db) return da < db;
    return lex_less(blocks[a].charval, blocks[b].charval);
  });

  IrrepBasis basis;
  basis.group = gp;
  for (std::size_t k = 0; k < rep_block.size(); ++k) {
    const Block& blk = blocks[rep_block[k]];
    UnitaryIrrep phi;
    phi.label = "phi" + std::to_string(k);
    phi.dim = int(blk.basis.cols());
    phi.mats.reserve(n);
    for (int x = 0; x < n; ++x)
      phi.mats.push_back(blk.basis.adjoint() * regular_apply(g, x, blk.basis));
    basis.irreps.push_back(std::move(phi));
  }

  for (const UnitaryIrrep& phi : basis.irreps) {
    const double tol = tau_rep(phi.dim);
    if ((phi.mats[0] - Matrix::Identity(phi.dim, phi.dim)).norm() > tol)
      throw NumericalFailure("identity does not map to I");
    if (unitarity_residual(g, phi) > tol) throw NumericalFailure("unitarity residual too large");
    if (homomorphism_residual(g, phi) > tol)
      throw NumericalFailure("homomorphism residual too large");
    if (irreducibility_residual(g, phi) > tol)
      throw NumericalFailure("block is not irreducible");
  }
  if (schur_residual(g, basis) > tau_rep(n)) throw NumericalFailure("Schur residual too large");
  return basis;
}

}  // namespace

IrrepBasis compute_irreps(GroupPtr g, const IrrepOptions& options) {
  if (g->order() > options.order_cap)
    throw OrderCapExceeded("group order " + std::to_string(g->order()) +
                           " above irrep cap " + std::to_string(options.order_cap));
  std::string last;
  for (int r = 0; r < options.max_retries; ++r) {
    try {
      return attempt(g, splitmix64(options.engine_seed + std::uint64_t(r) * 0x9E3779B9ULL));
    } catch (const NumericalFailure& e) {
      last = e.what();
    }
  }
  throw NumericalFailure("irrep construction failed after " +
                         std::to_string(options.max_retries) + " seeds: " + last);
}

ScalarFunction character(const GroupPtr& g, const UnitaryIrrep& phi) {
  std::vector<Complex> values(g->order());
  for (const auto& cls : g->classes()) {
    const Complex chi = phi(cls.front()).trace();
    for (int x : cls) values[x] = chi;
  }
  return ScalarFunction::from_values(g, std::move(values));
}

ScalarFunction normalized_character(const GroupPtr& g, const UnitaryIrrep& phi) {
  ScalarFunction chi = character(g, phi);
  for (Complex& v : chi.values) v /= double(phi.dim);
  chi.bounded = true;
  return chi;
}

double homomorphism_residual(const FiniteGroup& g, const UnitaryIrrep& phi) {
  double worst = 0;
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      worst = std::max(worst, (phi(g.mul(x, y)) - phi(x) * phi(y)).norm());
  return worst;
}

double unitarity_residual(const FiniteGroup& g, const UnitaryIrrep& phi) {
  const Matrix id = Matrix::Identity(phi.dim, phi.dim);
  double worst = 0;
  for (int x = 0; x < g.order(); ++x)
    worst = std::max(worst, (phi(x) * phi(x).adjoint() - id).norm());
  return worst;
}

double irreducibility_residual(const FiniteGroup& g, const UnitaryIrrep& phi) {
  // E_x |chi(x)|^2 = 1 exactly for an irreducible character.
  double sum = 0;
  for (int x = 0; x < g.order(); ++x) sum += std::norm(phi(x).trace());
  return std::abs(sum / g.order() - 1.0);
}

double schur_residual(const FiniteGroup& g, const IrrepBasis& basis) {
  // <phi_ij, psi_kl> = delta delta delta / d_phi.
  double worst = 0;
  const int n = g.order();
  for (int a = 0; a < basis.size(); ++a) {
    for (int b = a; b < basis.size(); ++b) {
      const UnitaryIrrep& phi = basis[a];
      const UnitaryIrrep& psi = basis[b];
      for (int i = 0; i < phi.dim; ++i)
        for (int j = 0; j < phi.dim; ++j)
          for (int k = 0; k < psi.dim; ++k)
            for (int l = 0; l < psi.dim; ++l) {
              Complex ip = 0;
              for (int x = 0; x < n; ++x) ip += phi(x)(i, j) * std::conj(psi(x)(k, l));
              ip /= double(n);
              const Complex want =
                  (a == b && i == k && j == l) ? Complex(1.0 / phi.dim, 0) : Complex(0, 0);
              worst = std::max(worst, std::abs(ip - want));
            }
    }
  }
  return worst;
}

}  // namespace grouptest
