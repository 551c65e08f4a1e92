#include "grouptest/testers.hpp"

#include <cmath>

#include "grouptest/haar.hpp"

namespace grouptest {

namespace {

// ceil with a snap to nearby integers so that values like 2/0.1^2 land on
// the intended 200 rather than 201.
std::int64_t ceil_count(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) < 1e-6) return std::int64_t(r);
  return std::int64_t(std::ceil(v));
}

bool values_equal(Complex a, Complex b, double tol) {
  if (tol <= 0.0) return a == b;
  return std::abs(a - b) <= tol;
}

struct WitnessFound {
  Witness w;
};

struct RawAccess {
  ScalarOracle* f;
  Complex operator()(int x) { return f->query(x); }
};

CorrectedQueryResult corrected_query_run(ScalarOracle& f, int x, std::int64_t samples, double tol,
                                         Rng& rng) {
  const FiniteGroup& g = f.group();
  CorrectedQueryResult out;
  Complex first{0, 0};
  int first_y = -1;
  for (std::int64_t i = 0; i < samples; ++i) {
    const int y = g.uniform_element(rng);
    const Complex v = f.query(g.conjugate(y, x));
    ++out.samples;
    if (i == 0) {
      first = v;
      first_y = y;
      continue;
    }
    if (!values_equal(v, first, tol)) {
      // Two conjugates of x disagree; normalize to the f(u) != f(w u w^-1)
      // form with u = first conjugate and w = y * first_y^-1.
      Witness w;
      w.kind = Witness::Kind::conjugation;
      w.x = g.conjugate(first_y, x);
      w.y = g.mul(y, g.inv(first_y));
      w.lhs = first;
      w.rhs = v;
      out.witness = w;
      return out;
    }
  }
  out.value = first;
  return out;
}

struct CorrectedAccess {
  ScalarOracle* f;
  std::int64_t samples;
  double tol;
  Rng* rng;
  std::int64_t accesses = 0;

  Complex operator()(int x) {
    ++accesses;
    CorrectedQueryResult r = corrected_query_run(*f, x, samples, tol, *rng);
    if (r.witness) throw WitnessFound{*r.witness};
    return r.value;
  }
};

template <typename Access>
MeanEstimate estimate_mean_run(Access&& sample, std::int64_t count, Rng& rng) {
  Complex sum{0, 0};
  for (std::int64_t i = 0; i < count; ++i) sum += sample(rng);
  return MeanEstimate{sum / double(count), count};
}

TesterReport conjinv_run(ScalarOracle& f, const TesterConfig& cfg, Rng& rng, int stage) {
  const FiniteGroup& g = f.group();
  const std::int64_t s = conjinv_rounds(cfg);
  TesterReport report;
  for (std::int64_t i = 0; i < s; ++i) {
    RoundRecord rec;
    rec.stage = stage;
    rec.index = i;
    rec.x = g.uniform_element(rng);
    rec.y = g.uniform_element(rng);
    rec.lhs = f.query(rec.x);
    rec.rhs = f.query(g.conjugate(rec.y, rec.x));
    if (!values_equal(rec.lhs, rec.rhs, cfg.equality_tol)) {
      rec.rejected = true;
      Witness w;
      w.kind = Witness::Kind::conjugation;
      w.x = rec.x;
      w.y = rec.y;
      w.lhs = rec.lhs;
      w.rhs = rec.rhs;
      report.rounds.push_back(rec);
      report.witness = w;
      report.verdict = Verdict::reject;
      return report;
    }
    report.rounds.push_back(rec);
  }
  report.verdict = Verdict::accept;
  return report;
}

template <typename Access>
TesterReport hom_core_run(const FiniteGroup& g, Access&& acc, const TesterConfig& cfg, Rng& rng) {
  const std::int64_t s = hom_core_rounds(cfg);
  TesterReport report;
  for (std::int64_t i = 0; i < s; ++i) {
    RoundRecord rec;
    rec.index = i;
    rec.x = g.uniform_element(rng);
    rec.y = g.uniform_element(rng);
    const Complex fx = acc(rec.x);
    const Complex fy = acc(rec.y);
    const Complex fxy = acc(g.mul(rec.x, rec.y));
    rec.lhs = fx * fy;
    rec.rhs = fxy;
    if (!values_equal(rec.lhs, rec.rhs, cfg.equality_tol)) {
      rec.rejected = true;
      Witness w;
      w.kind = Witness::Kind::product;
      w.x = rec.x;
      w.y = rec.y;
      w.lhs = rec.lhs;
      w.rhs = rec.rhs;
      report.rounds.push_back(rec);
      report.witness = w;
      report.verdict = Verdict::reject;
      return report;
    }
    report.rounds.push_back(rec);
  }
  report.verdict = Verdict::accept;
  return report;
}

template <typename Access>
TesterReport char_core_run(const FiniteGroup& g, Access&& acc, const TesterConfig& cfg, Rng& rng) {
  const double eps = cfg.epsilon;
  TesterReport report;

  const std::int64_t n0 = char_core_norm_samples(cfg);
  const MeanEstimate norm_est = estimate_mean_run(
      [&](Rng& r) -> Complex {
        const int x = g.uniform_element(r);
        return Complex(std::norm(acc(x)), 0.0);
      },
      n0, rng);
  {
    RoundRecord rec;
    rec.index = -1;  // norm gate
    rec.statistic = norm_est.value.real();
    rec.threshold = eps * eps / 2.0;
    report.rounds.push_back(rec);
  }
  if (norm_est.value.real() < eps * eps / 2.0) {
    report.verdict = Verdict::accept;
    return report;
  }

  const Complex f1 = acc(0);  // identity is element 0
  const std::int64_t s = char_core_rounds(cfg);
  const std::int64_t m = char_core_mean_samples(cfg);
  const double gate = std::pow(eps, 4) / 100.0;
  for (std::int64_t i = 0; i < s; ++i) {
    RoundRecord rec;
    rec.index = i;
    rec.x = g.uniform_element(rng);
    rec.y = g.uniform_element(rng);
    const Complex fx = acc(rec.x);
    const Complex fy = acc(rec.y);
    const MeanEstimate est = estimate_mean_run(
        [&](Rng& r) -> Complex {
          const int z = g.uniform_element(r);
          return acc(g.mul(rec.y, g.conjugate(z, rec.x)));
        },
        m, rng);
    rec.lhs = fx * fy;
    rec.rhs = f1 * est.value;
    rec.statistic = std::norm(rec.lhs - rec.rhs);
    rec.threshold = gate;
    if (rec.statistic > gate) {
      rec.rejected = true;
      report.rounds.push_back(rec);
      report.verdict = Verdict::reject;
      return report;
    }
    report.rounds.push_back(rec);
  }
  report.verdict = Verdict::accept;
  return report;
}

template <typename CoreRunner>
TesterReport reduction_run(ScalarOracle& f, const TesterConfig& cfg, std::int64_t core_query_bound,
                           CoreRunner&& run_core) {
  cfg.validate();
  Rng rng(cfg.seed);

  TesterConfig stage1 = cfg;
  stage1.epsilon = cfg.epsilon / 6.0;
  stage1.ov.rounds.reset();
  TesterReport report = conjinv_run(f, stage1, rng, /*stage=*/0);
  if (report.verdict == Verdict::reject) {
    report.queries = f.queries();
    return report;
  }

  TesterConfig core_cfg = cfg;
  core_cfg.epsilon = cfg.epsilon / 2.0;
  const double delta = 1.0 / (6.0 * double(core_query_bound));
  CorrectedAccess acc{&f, corrected_samples_per_query(delta), cfg.equality_tol, &rng};

  TesterReport inner;
  try {
    inner = run_core(acc, core_cfg, rng);
  } catch (const WitnessFound& wf) {
    report.verdict = Verdict::reject;
    report.witness = wf.w;
    report.queries = f.queries();
    return report;
  }
  for (RoundRecord& rec : inner.rounds) report.rounds.push_back(rec);
  report.verdict = inner.verdict;
  report.witness = inner.witness;
  report.queries = f.queries();
  return report;
}

}  // namespace

void TesterConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must be in (0, 1]");
  if (equality_tol < 0.0) throw ConfigError("equality tolerance must be >= 0");
  const auto at_least_one = [](const std::optional<std::int64_t>& v, const char* what) {
    if (v && *v < 1) throw ConfigError(std::string(what) + " override must be >= 1");
  };
  at_least_one(ov.rounds, "rounds");
  at_least_one(ov.mean_samples, "mean_samples");
  at_least_one(ov.norm_samples, "norm_samples");
  at_least_one(ov.net_iterations, "net_iterations");
  if (ov.net_base < 1.0) throw ConfigError("net_base must be >= 1");
  if (ov.net_exponent <= 0.0) throw ConfigError("net_exponent must be > 0");
}

bool witness_violates(const ScalarFunction& f, const Witness& w, double tol) {
  const FiniteGroup& g = *f.group;
  if (w.kind == Witness::Kind::conjugation)
    return !values_equal(f.values[w.x], f.values[g.conjugate(w.y, w.x)], tol);
  return !values_equal(f.values[w.x] * f.values[w.y], f.values[g.mul(w.x, w.y)], tol);
}

std::int64_t hoeffding_sample_count(double accuracy, double confidence) {
  if (!(accuracy > 0.0 && confidence > 0.0 && confidence < 1.0))
    throw ConfigError("estimator needs accuracy > 0 and confidence in (0, 1)");
  return ceil_count(8.0 / (accuracy * accuracy) * std::log(4.0 / confidence));
}

MeanEstimate estimate_mean(const std::function<Complex(Rng&)>& sampler, double accuracy,
                           double confidence, Rng& rng,
                           std::optional<std::int64_t> sample_override) {
  const std::int64_t count =
      sample_override ? *sample_override : hoeffding_sample_count(accuracy, confidence);
  return estimate_mean_run(sampler, count, rng);
}

std::int64_t corrected_samples_per_query(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
  return ceil_count(8.0 * std::log(2.0 / delta));
}

CorrectedQueryResult corrected_query(ScalarOracle& f, int x, double delta, double tol, Rng& rng) {
  return corrected_query_run(f, x, corrected_samples_per_query(delta), tol, rng);
}

TesterReport test_conjugate_invariance(ScalarOracle& f, const TesterConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  TesterReport report = conjinv_run(f, cfg, rng, /*stage=*/1);
  report.queries = f.queries();
  return report;
}

TesterReport with_class_function_reduction(ScalarOracle& f, const TesterConfig& cfg,
                                           std::int64_t core_query_bound, const CoreTester& core) {
  return reduction_run(f, cfg, core_query_bound,
                       [&](CorrectedAccess& acc, const TesterConfig& core_cfg, Rng& rng) {
                         std::function<Complex(int)> fn = [&acc](int x) { return acc(x); };
                         return core(fn, core_cfg, rng);
                       });
}

TesterReport test_homomorphism_core(ScalarOracle& f, const TesterConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  RawAccess acc{&f};
  TesterReport report = hom_core_run(f.group(), acc, cfg, rng);
  report.queries = f.queries();
  return report;
}

TesterReport test_homomorphism(ScalarOracle& f, const TesterConfig& cfg) {
  TesterConfig core_cfg = cfg;
  core_cfg.epsilon = cfg.epsilon / 2.0;
  return reduction_run(f, cfg, hom_core_corrected_queries(core_cfg),
                       [&f](CorrectedAccess& acc, const TesterConfig& cc, Rng& rng) {
                         return hom_core_run(f.group(), acc, cc, rng);
                       });
}

TesterReport test_character_proportional_core(ScalarOracle& f, const TesterConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  RawAccess acc{&f};
  TesterReport report = char_core_run(f.group(), acc, cfg, rng);
  report.queries = f.queries();
  return report;
}

TesterReport test_character_proportional(ScalarOracle& f, const TesterConfig& cfg) {
  TesterConfig core_cfg = cfg;
  core_cfg.epsilon = cfg.epsilon / 2.0;
  return reduction_run(f, cfg, char_core_accept_queries(core_cfg),
                       [&f](CorrectedAccess& acc, const TesterConfig& cc, Rng& rng) {
                         return char_core_run(f.group(), acc, cc, rng);
                       });
}

TesterReport test_unitary_equivalence(MatrixOracle& f, const MatrixFunction& g,
                                      const TesterConfig& cfg) {
  cfg.validate();
  require_same_group(f.function().group, g.group);
  if (f.dim() != g.dim) throw DimMismatch("input and reference dimensions differ");
  const FiniteGroup& grp = f.group();
  const int d = g.dim;
  Rng rng(cfg.seed);

  const std::int64_t s = uniteq_iterations(cfg, d);
  const std::int64_t m = uniteq_mean_samples(cfg, d);
  const double gate = cfg.epsilon * cfg.epsilon / 10.0;

  TesterReport report;
  std::vector<Matrix> conjugated(grp.order());
  for (std::int64_t it = 0; it < s; ++it) {
    const Matrix u = sample_haar_unitary(d, rng);
    for (int x = 0; x < grp.order(); ++x) conjugated[x] = u * g.values[x] * u.adjoint();
    const MeanEstimate est = estimate_mean_run(
        [&](Rng& r) -> Complex {
          const int x = grp.uniform_element(r);
          const double v = 0.25 * (f.query(x) - conjugated[x]).squaredNorm();
          return Complex(v, 0.0);
        },
        m, rng);
    RoundRecord rec;
    rec.index = it;
    rec.statistic = est.value.real();
    rec.threshold = gate;
    report.rounds.push_back(rec);
    if (est.value.real() < gate) {
      report.verdict = Verdict::accept;
      report.queries = f.queries();
      return report;
    }
  }
  report.verdict = Verdict::reject;
  report.queries = f.queries();
  return report;
}

// ---- closed forms ----

std::int64_t conjinv_rounds(const TesterConfig& cfg) {
  if (cfg.ov.rounds) return *cfg.ov.rounds;
  return ceil_count(2.0 / (cfg.epsilon * cfg.epsilon));
}

std::int64_t conjinv_accept_queries(const TesterConfig& cfg) { return 2 * conjinv_rounds(cfg); }

std::int64_t hom_core_rounds(const TesterConfig& cfg) {
  if (cfg.ov.rounds) return *cfg.ov.rounds;
  return ceil_count(2.0 / (cfg.epsilon * cfg.epsilon));
}

std::int64_t hom_core_corrected_queries(const TesterConfig& cfg) {
  return 3 * hom_core_rounds(cfg);
}

namespace {

std::int64_t wrapper_stage1_queries(const TesterConfig& cfg) {
  TesterConfig stage1 = cfg;
  stage1.epsilon = cfg.epsilon / 6.0;
  stage1.ov.rounds.reset();
  return conjinv_accept_queries(stage1);
}

std::int64_t wrapper_corrected_cost(std::int64_t core_query_bound) {
  return corrected_samples_per_query(1.0 / (6.0 * double(core_query_bound)));
}

}  // namespace

std::int64_t hom_accept_queries(const TesterConfig& cfg) {
  TesterConfig core_cfg = cfg;
  core_cfg.epsilon = cfg.epsilon / 2.0;
  const std::int64_t q = hom_core_corrected_queries(core_cfg);
  return wrapper_stage1_queries(cfg) + q * wrapper_corrected_cost(q);
}

std::int64_t char_core_rounds(const TesterConfig& cfg) {
  if (cfg.ov.rounds) return *cfg.ov.rounds;
  return ceil_count(100.0 / std::pow(cfg.epsilon, 4));
}

std::int64_t char_core_norm_samples(const TesterConfig& cfg) {
  if (cfg.ov.norm_samples) return *cfg.ov.norm_samples;
  return hoeffding_sample_count(cfg.epsilon * cfg.epsilon / 100.0, 1.0 / 100.0);
}

std::int64_t char_core_mean_samples(const TesterConfig& cfg) {
  if (cfg.ov.mean_samples) return *cfg.ov.mean_samples;
  return hoeffding_sample_count(cfg.epsilon * cfg.epsilon / 10.0,
                                1.0 / (100.0 * double(char_core_rounds(cfg))));
}

std::int64_t char_core_accept_queries(const TesterConfig& cfg) {
  return char_core_norm_samples(cfg) + 1 +
         char_core_rounds(cfg) * (2 + char_core_mean_samples(cfg));
}

std::int64_t char_core_gate_accept_queries(const TesterConfig& cfg) {
  return char_core_norm_samples(cfg);
}

std::int64_t char_accept_queries(const TesterConfig& cfg) {
  TesterConfig core_cfg = cfg;
  core_cfg.epsilon = cfg.epsilon / 2.0;
  const std::int64_t q = char_core_accept_queries(core_cfg);
  return wrapper_stage1_queries(cfg) + q * wrapper_corrected_cost(q);
}

std::int64_t uniteq_iterations(const TesterConfig& cfg, int dim) {
  if (cfg.ov.net_iterations) return *cfg.ov.net_iterations;
  const double base = cfg.ov.net_base * std::pow(double(dim), 1.5) / cfg.epsilon;
  const double count = std::pow(base, cfg.ov.net_exponent * dim * dim);
  if (count > 4.0e18) return std::int64_t(4.0e18);  // saturate; override for desk runs
  return ceil_count(count);
}

std::int64_t uniteq_mean_samples(const TesterConfig& cfg, int dim) {
  if (cfg.ov.mean_samples) return *cfg.ov.mean_samples;
  return hoeffding_sample_count(cfg.epsilon * cfg.epsilon / 100.0,
                                1.0 / (6.0 * double(uniteq_iterations(cfg, dim))));
}

std::int64_t uniteq_reject_queries(const TesterConfig& cfg, int dim) {
  return uniteq_iterations(cfg, dim) * uniteq_mean_samples(cfg, dim);
}

std::int64_t uniteq_accept_queries(const TesterConfig& cfg, int dim, std::int64_t iterations_run) {
  return iterations_run * uniteq_mean_samples(cfg, dim);
}

}  // namespace grouptest
