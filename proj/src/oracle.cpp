#include "grouptest/oracle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

#include "grouptest/haar.hpp"

namespace grouptest {
namespace oracle {

namespace {

constexpr int kQuadraticCap = 512;

void require_quadratic(const FiniteGroup& g) {
  if (g.order() > kQuadraticCap)
    throw GroupTooLarge("group order " + std::to_string(g.order()) +
                        " exceeds the exact-enumeration cap " + std::to_string(kQuadraticCap));
}

using ValueCounts = std::map<std::pair<double, double>, std::int64_t>;

ValueCounts count_values(const ScalarFunction& f, const std::vector<int>& cls) {
  ValueCounts counts;
  for (int x : cls) {
    const Complex v = f.values[x];
    ++counts[{v.real(), v.imag()}];
  }
  return counts;
}

// Largest count; ties go to the smallest (real, imag) pair, which is the
// first map entry with the maximal count.
std::pair<Complex, std::int64_t> plurality_of(const ValueCounts& counts) {
  Complex best{0, 0};
  std::int64_t best_count = -1;
  for (const auto& [key, count] : counts) {
    if (count > best_count) {
      best = Complex(key.first, key.second);
      best_count = count;
    }
  }
  return {best, best_count};
}

Complex class_mean(const ScalarFunction& f, const std::vector<int>& cls) {
  Complex sum{0, 0};
  for (int x : cls) sum += f.values[x];
  return sum / double(cls.size());
}

// E_z[f(y z x z^-1)] depends on x only through its class: z x z^-1 is uniform
// over the class, so the expectation is the average of f over y * class.
// avg[c][y] = E_z[f(y z x z^-1)] for x in class c.
std::vector<std::vector<Complex>> conjugate_averages(const ScalarFunction& f) {
  const FiniteGroup& g = *f.group;
  const int n = g.order();
  std::vector<std::vector<Complex>> avg(g.class_count(), std::vector<Complex>(n));
  for (int c = 0; c < g.class_count(); ++c) {
    const auto& cls = g.class_members(c);
    for (int y = 0; y < n; ++y) {
      Complex sum{0, 0};
      for (int w : cls) sum += f.values[g.mul(y, w)];
      avg[c][y] = sum / double(cls.size());
    }
  }
  return avg;
}

}  // namespace

ScalarFunction plurality_class_function(const ScalarFunction& f) {
  std::vector<Complex> values(f.values.size());
  for (const auto& cls : f.group->classes()) {
    const Complex z = plurality_of(count_values(f, cls)).first;
    for (int x : cls) values[x] = z;
  }
  return ScalarFunction::from_values(f.group, std::move(values));
}

ScalarFunction mean_class_function(const ScalarFunction& f) {
  std::vector<Complex> values(f.values.size());
  for (const auto& cls : f.group->classes()) {
    const Complex z = class_mean(f, cls);
    for (int x : cls) values[x] = z;
  }
  return ScalarFunction::from_values(f.group, std::move(values));
}

ScalarFunction corrected_class_function(const ScalarFunction& f) {
  std::vector<Complex> values(f.values.size());
  for (const auto& cls : f.group->classes()) {
    const auto [plural, count] = plurality_of(count_values(f, cls));
    const bool majority = 2 * count > std::int64_t(cls.size());  // p_C > 1/2
    const Complex z = majority ? plural : class_mean(f, cls);
    for (int x : cls) values[x] = z;
  }
  return ScalarFunction::from_values(f.group, std::move(values));
}

double exact_conjugation_rejection_probability(const ScalarFunction& f) {
  const FiniteGroup& g = *f.group;
  require_quadratic(g);
  const std::int64_t n = g.order();
  // For fixed x, y x y^-1 is uniform over the class of x, so
  // n^2 Pr = sum_C (n/|C|) (|C|^2 - sum_v count_v^2), all integers.
  std::int64_t numerator = 0;
  for (const auto& cls : g.classes()) {
    const std::int64_t size = std::int64_t(cls.size());
    std::int64_t sq = 0;
    for (const auto& [key, count] : count_values(f, cls)) sq += count * count;
    numerator += (n / size) * (size * size - sq);
  }
  return double(numerator) / double(n * n);
}

double exact_product_rejection_probability(const ScalarFunction& f, double tol) {
  const FiniteGroup& g = *f.group;
  require_quadratic(g);
  const int n = g.order();
  std::int64_t bad = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Complex lhs = f.values[x] * f.values[y];
      const Complex rhs = f.values[g.mul(x, y)];
      const bool equal = tol <= 0.0 ? lhs == rhs : std::abs(lhs - rhs) <= tol;
      if (!equal) ++bad;
    }
  return double(bad) / (double(n) * double(n));
}

FarnessCertificate distance_to_homomorphisms(const ScalarFunction& f, const IrrepBasis& basis) {
  require_same_group(f.group, basis.group);
  FarnessCertificate cert;
  cert.property = "homomorphism";
  cert.method = FarnessCertificate::Method::exhaustive;
  cert.argmin_label = "zero";
  cert.distance = 0.5 * l2_norm(f);
  for (const UnitaryIrrep& phi : basis.irreps) {
    if (phi.dim != 1) continue;
    const double d = distance(f, character(f.group, phi));
    if (d < cert.distance) {
      cert.distance = d;
      cert.argmin_label = phi.label;
    }
  }
  return cert;
}

FarnessCertificate distance_to_character_rays(const ScalarFunction& f, const IrrepBasis& basis) {
  require_same_group(f.group, basis.group);
  FarnessCertificate cert;
  cert.property = "character-ray";
  cert.method = FarnessCertificate::Method::closed_form;
  cert.distance = std::numeric_limits<double>::infinity();
  double best_proj = 0.0;
  const double norm_sq = l2_norm(f) * l2_norm(f);
  for (const UnitaryIrrep& phi : basis.irreps) {
    const ScalarFunction chi = character(f.group, phi);
    const Complex c_star = inner_product(f, chi);  // ||chi|| = 1
    best_proj = std::max(best_proj, std::norm(c_star));
    // c chi stays in the disk iff |c| <= 1/d_phi (|chi| peaks at chi(1) = d).
    const double radius = 1.0 / double(phi.dim);
    Complex c = c_star;
    if (std::abs(c_star) > radius) c = c_star * (radius / std::abs(c_star));
    ScalarFunction ray = chi;
    for (Complex& v : ray.values) v *= c;
    const double d = distance(f, ray);
    if (d < cert.distance) {
      cert.distance = d;
      cert.argmin_label = phi.label;
      cert.scalar = c;
    }
  }
  cert.lower_bound = 0.5 * std::sqrt(std::max(0.0, norm_sq - best_proj));
  return cert;
}

double revalidate(const FarnessCertificate& cert, const ScalarFunction& f,
                  const IrrepBasis& basis) {
  if (cert.property == "homomorphism") {
    if (cert.argmin_label == "zero")
      return distance(f, ScalarFunction::constant(f.group, Complex(0, 0)));
    return distance(f, character(f.group, basis.by_label(cert.argmin_label)));
  }
  if (cert.property == "character-ray") {
    ScalarFunction ray = character(f.group, basis.by_label(cert.argmin_label));
    for (Complex& v : ray.values) v *= cert.scalar.value();
    return distance(f, ray);
  }
  throw Error("cannot revalidate certificate for property '" + cert.property + "'");
}

double revalidate(const FarnessCertificate& cert, const MatrixFunction& f,
                  const MatrixFunction& g) {
  if (cert.property != "unitary-equivalence" || !cert.unitary)
    throw Error("certificate lacks a unitary optimizer");
  return distance(f, plant_unitary_equivalent(g, *cert.unitary));
}

CubicExpectation cubic_expectation(const ScalarFunction& f, const IrrepBasis& basis) {
  const FiniteGroup& g = *f.group;
  require_quadratic(g);
  const int n = g.order();
  CubicExpectation out;
  Complex sum{0, 0};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      sum += f.values[x] * f.values[y] * std::conj(f.values[g.mul(x, y)]);
  out.time_domain = sum / double(std::int64_t(n) * n);
  out.fourier_domain = cubic_expectation_fourier(f, basis);
  return out;
}

Complex cubic_expectation_fourier(const ScalarFunction& f, const IrrepBasis& basis) {
  require_same_group(f.group, basis.group);
  const FourierCoefficients fc = fourier_transform(f, basis);
  Complex sum{0, 0};
  for (const UnitaryIrrep& phi : basis.irreps) {
    const Matrix& c = fc.at(phi.label);
    Complex s{0, 0};
    for (int i = 0; i < phi.dim; ++i)
      for (int j = 0; j < phi.dim; ++j)
        for (int k = 0; k < phi.dim; ++k) s += c(i, j) * c(j, k) * std::conj(c(i, k));
    sum += double(phi.dim) * s;
  }
  return sum;
}

double weyl_defect(const ScalarFunction& f) {
  const FiniteGroup& g = *f.group;
  require_quadratic(g);
  const int n = g.order();
  const auto avg = conjugate_averages(f);
  const Complex f1 = f.values[0];
  double sum = 0;
  for (int x = 0; x < n; ++x) {
    const int c = g.class_of(x);
    for (int y = 0; y < n; ++y)
      sum += std::norm(f.values[x] * f.values[y] - f1 * avg[c][y]);
  }
  return sum / (double(n) * double(n));
}

double weyl_defect_fourier(const ScalarFunction& f, const IrrepBasis& basis) {
  require_same_group(f.group, basis.group);
  const FourierCoefficients fc = fourier_transform(f, basis);
  const Complex f1 = f.values[0];
  double sum = 0;
  for (const UnitaryIrrep& phi : basis.irreps) {
    ScalarFunction target = normalized_character(f.group, phi);
    for (Complex& v : target.values) v *= f1;
    const double diff = 2.0 * distance(f, target);  // ||f - f(1) chi~||_2
    sum += double(phi.dim) * diff * diff * fc.at(phi.label).squaredNorm();
  }
  return sum;
}

double weyl_round_rejection_probability(const ScalarFunction& f, double threshold) {
  const FiniteGroup& g = *f.group;
  require_quadratic(g);
  const int n = g.order();
  const auto avg = conjugate_averages(f);
  const Complex f1 = f.values[0];
  std::int64_t over = 0;
  for (int x = 0; x < n; ++x) {
    const int c = g.class_of(x);
    for (int y = 0; y < n; ++y)
      if (std::abs(f.values[x] * f.values[y] - f1 * avg[c][y]) > threshold) ++over;
  }
  return double(over) / (double(n) * double(n));
}

MatrixFunction plant_unitary_equivalent(const MatrixFunction& g, const Matrix& u0) {
  if (u0.rows() != g.dim || u0.cols() != g.dim)
    throw DimMismatch("planting unitary has wrong dimension");
  std::vector<Matrix> values;
  values.reserve(g.values.size());
  const Matrix u0h = u0.adjoint();
  for (const Matrix& m : g.values) values.push_back(u0 * m * u0h);
  return MatrixFunction::from_values(g.group, g.dim, std::move(values));
}

double unitary_trace_lower_bound(const MatrixFunction& f, const MatrixFunction& g) {
  require_same_group(f.group, g.group);
  if (f.dim != g.dim) throw DimMismatch("trace bound needs equal dimensions");
  double sum = 0;
  for (int x = 0; x < f.group->order(); ++x)
    sum += std::norm(f.values[x].trace() - g.values[x].trace());
  sum /= double(f.group->order());
  return std::sqrt(std::max(0.0, sum / (4.0 * f.dim)));
}

namespace {

Matrix polar_unitary(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// E_x ||f - U g U*||^2 = E||f||^2 + E||g||^2 - 2 S(U)/n with
// S(U) = Re sum_x tr(f(x)* U g(x) U*); maximize S by Riemannian ascent with
// polar retraction.
double conjugation_objective(const MatrixFunction& f, const MatrixFunction& g, const Matrix& u) {
  double s = 0;
  const Matrix uh = u.adjoint();
  for (int x = 0; x < f.group->order(); ++x)
    s += (f.values[x].adjoint() * u * g.values[x] * uh).trace().real();
  return s;
}

Matrix conjugation_gradient(const MatrixFunction& f, const MatrixFunction& g, const Matrix& u) {
  Matrix grad = Matrix::Zero(f.dim, f.dim);
  for (int x = 0; x < f.group->order(); ++x)
    grad += 0.5 * (f.values[x].adjoint() * u * g.values[x] + g.values[x].adjoint() * u * f.values[x]);
  return grad;
}

Matrix ascend(const MatrixFunction& f, const MatrixFunction& g, Matrix u) {
  double value = conjugation_objective(f, g, u);
  double step = 1.0;
  for (int iter = 0; iter < 600; ++iter) {
    const Matrix grad = conjugation_gradient(f, g, u);
    bool improved = false;
    while (step > 1e-14) {
      const Matrix candidate = polar_unitary(u + step * grad);
      const double cand_value = conjugation_objective(f, g, candidate);
      if (cand_value > value + 1e-15 * std::abs(value)) {
        u = candidate;
        value = cand_value;
        step *= 1.6;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return u;
}

}  // namespace

FarnessCertificate unitary_equivalence_gap(const MatrixFunction& f, const MatrixFunction& g,
                                           int restarts, Rng& rng) {
  require_same_group(f.group, g.group);
  if (f.dim != g.dim) throw DimMismatch("gap search needs equal dimensions");
  if (restarts < 1) throw ConfigError("restarts must be >= 1");

  FarnessCertificate cert;
  cert.property = "unitary-equivalence";
  cert.method = FarnessCertificate::Method::heuristic;
  cert.lower_bound = unitary_trace_lower_bound(f, g);

  double best = std::numeric_limits<double>::infinity();
  Matrix best_u;
  for (int r = 0; r < restarts; ++r) {
    Matrix u0 = (r == 0) ? Matrix(Matrix::Identity(f.dim, f.dim))
                         : sample_haar_unitary(f.dim, rng);
    const Matrix u = ascend(f, g, u0);
    const double d = distance(f, plant_unitary_equivalent(g, u));
    if (d < best) {
      best = d;
      best_u = u;
    }
  }
  cert.distance = best;
  cert.unitary = best_u;
  cert.note = "achieved value is an upper bound; lower_bound is the trace-invariant bound";
  return cert;
}

}  // namespace oracle
}  // namespace grouptest
