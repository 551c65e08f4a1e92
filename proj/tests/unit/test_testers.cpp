#include <doctest.h>

#include "grouptest/haar.hpp"
#include "grouptest/oracle.hpp"
#include "grouptest/report.hpp"
#include "grouptest/testers.hpp"
#include "test_util.hpp"

using namespace grouptest;
using namespace grouptest_tests;

namespace {

ScalarFunction sign_character(const GroupPtr& g, const IrrepBasis& basis) {
  // the 1-dim character orthogonal to the trivial one with values exactly +-1
  for (const UnitaryIrrep& phi : basis.irreps) {
    if (phi.dim != 1) continue;
    ScalarFunction chi = character(g, phi);
    bool pm_one = true, non_trivial = false;
    for (Complex& v : chi.values) {
      if (std::abs(v - Complex(1, 0)) < 1e-9)
        v = Complex(1, 0);
      else if (std::abs(v - Complex(-1, 0)) < 1e-9) {
        v = Complex(-1, 0);
        non_trivial = true;
      } else
        pm_one = false;
    }
    if (pm_one && non_trivial) return ScalarFunction::from_values(g, std::move(chi.values));
  }
  throw std::runtime_error("no +-1 character");
}

}  // namespace

TEST_CASE("conjugate invariance accepts class functions with the exact query count") {
  const GroupPtr g = FiniteGroup::symmetric(4);
  const IrrepBasis basis = compute_irreps(g);
  for (const UnitaryIrrep& phi : basis.irreps) {
    const ScalarFunction f = normalized_character(g, phi);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      ScalarOracle oracle(f);
      TesterConfig cfg;
      cfg.epsilon = 0.1;
      cfg.seed = seed;
      const TesterReport report = test_conjugate_invariance(oracle, cfg);
      REQUIRE(report.verdict == Verdict::accept);
      CHECK(report.queries == 400);  // 2 * ceil(2/0.01)
      CHECK(report.queries == conjinv_accept_queries(cfg));
      CHECK(std::int64_t(report.rounds.size()) == 200);
    }
  }
}

TEST_CASE("conjugate invariance rejection rate matches the exact oracle") {
  // S3: split the 3-cycle class (size 2) into two distinct values.
  const GroupPtr g = FiniteGroup::symmetric(3);
  std::vector<Complex> values(6, Complex(1, 0));
  const auto& two_class = *std::find_if(g->classes().begin(), g->classes().end(),
                                        [](const auto& c) { return c.size() == 2; });
  values[two_class[0]] = Complex(0.25, 0);
  values[two_class[1]] = Complex(-0.5, 0);
  const ScalarFunction f = ScalarFunction::from_values(g, values);

  const double p = oracle::exact_conjugation_rejection_probability(f);
  CHECK(p == doctest::Approx(1.0 / 6.0));  // only the split class rejects, half the time

  TesterConfig cfg;
  cfg.epsilon = 0.45;  // s = ceil(2/eps^2) = 10 rounds
  const std::int64_t s = conjinv_rounds(cfg);
  REQUIRE(s == 10);
  const int trials = 400;
  int rejects = 0;
  for (int t = 0; t < trials; ++t) {
    cfg.seed = 5000 + t;
    ScalarOracle oracle(f);
    const TesterReport report = test_conjugate_invariance(oracle, cfg);
    if (report.verdict == Verdict::reject) {
      ++rejects;
      REQUIRE(report.witness.has_value());
      CHECK(witness_violates(f, *report.witness, 0.0));
    }
  }
  const double want = 1.0 - std::pow(1.0 - p, double(s));
  const double sigma = std::sqrt(want * (1 - want) / trials);
  CHECK(std::abs(double(rejects) / trials - want) <= 3 * sigma + 1e-9);
}

TEST_CASE("corrected query") {
  const GroupPtr g = FiniteGroup::symmetric(3);

  SUBCASE("class functions always come back exact") {
    Rng rng(1);
    const ScalarFunction f = random_class_function(g, rng);
    for (int x = 0; x < g->order(); ++x)
      for (int rep = 0; rep < 20; ++rep) {
        ScalarOracle oracle(f);
        const CorrectedQueryResult r = corrected_query(oracle, x, 0.05, 0.0, rng);
        REQUIRE_FALSE(r.witness.has_value());
        CHECK(r.value == f.values[x]);
        CHECK(oracle.queries() == r.samples);
      }
  }

  SUBCASE("an even split is witnessed almost always") {
    // 3-cycle class has size 2; give its elements distinct values.
    std::vector<Complex> values(6, Complex(1, 0));
    const auto& two_class = *std::find_if(g->classes().begin(), g->classes().end(),
                                          [](const auto& c) { return c.size() == 2; });
    values[two_class[0]] = Complex(1, 0);
    values[two_class[1]] = Complex(-1, 0);
    const ScalarFunction f = ScalarFunction::from_values(g, values);
    const int runs = 1000;
    int witnessed = 0;
    Rng rng(77);
    for (int r = 0; r < runs; ++r) {
      ScalarOracle oracle(f);
      const CorrectedQueryResult res = corrected_query(oracle, two_class[0], 0.05, 0.0, rng);
      if (res.witness) {
        ++witnessed;
        CHECK(witness_violates(f, *res.witness, 0.0));
      }
    }
    const double sigma = std::sqrt(0.05 * 0.95 / runs);
    CHECK(double(witnessed) / runs >= 0.95 - 3 * sigma);
  }

  SUBCASE("singleton classes are deterministic") {
    Rng rng(2);
    const ScalarFunction f = random_disk_function(g, rng);
    ScalarOracle oracle(f);
    const CorrectedQueryResult r = corrected_query(oracle, 0, 0.01, 0.0, rng);
    REQUIRE_FALSE(r.witness.has_value());
    CHECK(r.value == f.values[0]);  // y 1 y^-1 = 1 for every y
  }
}

TEST_CASE("homomorphism tester is one-sided on exact homomorphisms") {
  const GroupPtr g = FiniteGroup::symmetric(4);
  const IrrepBasis basis = compute_irreps(g);
  const ScalarFunction sign = sign_character(g, basis);
  const ScalarFunction zero = ScalarFunction::constant(g, Complex(0, 0));
  for (const ScalarFunction* f : {&sign, &zero}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      ScalarOracle oracle(*f);
      TesterConfig cfg;
      cfg.epsilon = 0.3;
      cfg.seed = seed;
      const TesterReport report = test_homomorphism(oracle, cfg);
      REQUIRE(report.verdict == Verdict::accept);
      CHECK(report.queries == hom_accept_queries(cfg));
    }
  }
}

TEST_CASE("homomorphism tester rejects the normalized 2-dim character of S3") {
  const GroupPtr g = FiniteGroup::symmetric(3);
  const IrrepBasis basis = compute_irreps(g);
  ScalarFunction f = normalized_character(g, basis.irreps.back());
  REQUIRE(basis.irreps.back().dim == 2);

  const oracle::FarnessCertificate cert = oracle::distance_to_homomorphisms(f, basis);
  CHECK(cert.distance == doctest::Approx(0.25));  // dist to zero: chi~ has norm 1/2
  CHECK(cert.argmin_label == "zero");
  CHECK(oracle::revalidate(cert, f, basis) == doctest::Approx(cert.distance));

  TesterConfig cfg;
  cfg.epsilon = cert.distance / 2;
  int rejects = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    cfg.seed = 100 + t;
    ScalarOracle oracle(f);
    const TesterReport report = test_homomorphism(oracle, cfg);
    if (report.verdict == Verdict::reject) {
      ++rejects;
      REQUIRE(report.witness.has_value());
      CHECK(witness_violates(f, *report.witness, 0.0));
    }
  }
  CHECK(rejects >= 2 * trials / 3);
}

TEST_CASE("reduction wrapper surfaces self-correction witnesses") {
  // Constant except an even split inside the size-2 class: the conjugacy
  // pre-stage at eps/6 can miss it, but any corrected query at that class
  // yields a witness and must reject.
  const GroupPtr g = FiniteGroup::symmetric(3);
  std::vector<Complex> values(6, Complex(1, 0));
  const auto& two_class = *std::find_if(g->classes().begin(), g->classes().end(),
                                        [](const auto& c) { return c.size() == 2; });
  values[two_class[0]] = Complex(-1, 0);
  const ScalarFunction f = ScalarFunction::from_values(g, values);

  int witnessed = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ScalarOracle oracle(f);
    TesterConfig cfg;
    cfg.epsilon = 1.0;
    cfg.seed = seed;
    const CoreTester probe_core = [&](const std::function<Complex(int)>& access,
                                      const TesterConfig&, Rng&) {
      for (int rep = 0; rep < 16; ++rep) access(two_class[0]);
      return TesterReport{};
    };
    const TesterReport report = with_class_function_reduction(oracle, cfg, 16, probe_core);
    if (report.witness) {
      ++witnessed;
      CHECK(report.verdict == Verdict::reject);
      CHECK(witness_violates(f, *report.witness, 0.0));
    } else {
      // stage-1 may have caught the asymmetry directly; that also rejects
      CHECK(report.verdict == Verdict::reject);
    }
  }
  CHECK(witnessed > 0);
}

TEST_CASE("wrapped verdicts on class functions match the bare core at eps/2") {
  // Class-function input: stage 1 always accepts and corrected access is
  // exact, so the wrapped tester's acceptance rate must match the core's at
  // eps/2 statistically.
  const GroupPtr g = FiniteGroup::symmetric(4);
  const IrrepBasis basis = compute_irreps(g);
  ScalarFunction f = sign_character(g, basis);
  // perturb one whole class to break homomorphism mildly
  const auto& cls = g->classes()[1];
  for (int x : cls) f.values[x] = Complex(0.9, 0) * f.values[x];
  const double p = oracle::exact_product_rejection_probability(f);
  REQUIRE(p > 0.05);
  REQUIRE(p < 0.5);

  const int trials = 200;
  int wrapped_accept = 0, core_accept = 0;
  TesterConfig base_cfg;
  base_cfg.epsilon = 1.0;
  base_cfg.ov.rounds = 2;  // both paths run a 2-round core
  for (int t = 0; t < trials; ++t) {
    TesterConfig cfg = base_cfg;
    cfg.seed = 40000 + std::uint64_t(t);
    ScalarOracle o1(f);
    if (test_homomorphism(o1, cfg).verdict == Verdict::accept) ++wrapped_accept;
    TesterConfig core_cfg = cfg;
    core_cfg.epsilon = 0.5;
    ScalarOracle o2(f);
    if (test_homomorphism_core(o2, core_cfg).verdict == Verdict::accept) ++core_accept;
  }
  const double expect = std::pow(1.0 - p, 2.0);
  const double sigma = std::sqrt(expect * (1 - expect) / trials);
  CHECK(std::abs(wrapped_accept / double(trials) - expect) <= 4 * sigma);
  CHECK(std::abs(core_accept / double(trials) - expect) <= 4 * sigma);
  CHECK(std::abs(wrapped_accept - core_accept) / double(trials) <= 6 * sigma);
}

TEST_CASE("character tester accepts the zero function through the norm gate") {
  const GroupPtr g = FiniteGroup::symmetric(4);
  const ScalarFunction zero = ScalarFunction::constant(g, Complex(0, 0));
  TesterConfig cfg;
  cfg.epsilon = 0.5;
  cfg.seed = 3;
  cfg.ov.norm_samples = 500;
  ScalarOracle oracle(zero);
  const TesterReport report = test_character_proportional_core(oracle, cfg);
  CHECK(report.verdict == Verdict::accept);
  CHECK(report.queries == char_core_gate_accept_queries(cfg));
  CHECK(report.queries == 500);
}

TEST_CASE("character tester accepts normalized characters and rejects a mixture") {
  const GroupPtr g = FiniteGroup::symmetric(4);
  const IrrepBasis basis = compute_irreps(g);
  TesterConfig cfg;
  cfg.epsilon = 0.3;
  cfg.ov.rounds = 30;
  cfg.ov.mean_samples = 60000;
  cfg.ov.norm_samples = 2048;

  SUBCASE("completeness on chi~ of the top irrep") {
    const ScalarFunction f = normalized_character(g, basis.irreps.back());
    int accepts = 0;
    const int trials = 60;
    for (int t = 0; t < trials; ++t) {
      cfg.seed = 600 + t;
      ScalarOracle oracle(f);
      if (test_character_proportional_core(oracle, cfg).verdict == Verdict::accept) ++accepts;
    }
    CHECK(accepts >= 2 * trials / 3);
  }

  SUBCASE("soundness on an equal mixture of two normalized characters") {
    // f = (chi~_a + chi~_b)/2 with f(1) = 1
    ScalarFunction a = normalized_character(g, basis.irreps.front());
    const ScalarFunction b = normalized_character(g, basis.irreps.back());
    for (int x = 0; x < g->order(); ++x) a.values[x] = (a.values[x] + b.values[x]) / 2.0;
    const ScalarFunction f = ScalarFunction::from_values(g, a.values);
    REQUIRE(f.values[0] == Complex(1, 0));

    const oracle::FarnessCertificate cert = oracle::distance_to_character_rays(f, basis);
    REQUIRE(cert.distance >= cfg.epsilon);  // the tester runs at an honest eps

    // per-round rejection is certified by the exact Weyl residual distribution
    const double acc_real =
        std::sqrt(8.0 * std::log(4.0 * 100.0 * double(*cfg.ov.rounds)) / double(*cfg.ov.mean_samples));
    const double p_star = oracle::weyl_round_rejection_probability(
        f, cfg.epsilon * cfg.epsilon / 10.0 + acc_real);
    REQUIRE(std::pow(1.0 - p_star, double(*cfg.ov.rounds)) < 1.0 / 3.0);

    int rejects = 0;
    const int trials = 60;
    for (int t = 0; t < trials; ++t) {
      cfg.seed = 700 + t;
      ScalarOracle oracle(f);
      if (test_character_proportional_core(oracle, cfg).verdict == Verdict::reject) ++rejects;
    }
    CHECK(rejects >= 2 * trials / 3);
  }
}

TEST_CASE("wrapped character tester accepts characters at the closed-form cost") {
  const GroupPtr g = FiniteGroup::symmetric(4);
  const IrrepBasis basis = compute_irreps(g);
  const ScalarFunction f = sign_character(g, basis);  // chi~ = chi for dim 1
  TesterConfig cfg;
  cfg.epsilon = 0.9;
  cfg.seed = 11;
  cfg.ov.rounds = 3;
  cfg.ov.mean_samples = 50;
  cfg.ov.norm_samples = 20;
  ScalarOracle oracle(f);
  const TesterReport report = test_character_proportional(oracle, cfg);
  CHECK(report.verdict == Verdict::accept);
  CHECK(report.queries == char_accept_queries(cfg));
}

TEST_CASE("unitary equivalence tester") {
  const GroupPtr g = FiniteGroup::cyclic(8);
  Rng inst_rng(31);
  const int d = 2;
  std::vector<Matrix> gv(g->order());
  for (Matrix& m : gv) {
    Matrix a(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(r, c) = inst_rng.complex_gaussian();
    m = a * (0.8 / a.norm());
  }
  const MatrixFunction ref = MatrixFunction::from_values(g, d, gv);

  TesterConfig cfg;
  cfg.epsilon = 0.3;
  cfg.ov.net_iterations = 4000;
  cfg.ov.mean_samples = 512;

  SUBCASE("accepts itself") {
    int accepts = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      cfg.seed = 50 + t;
      MatrixOracle oracle(ref);
      const TesterReport report = test_unitary_equivalence(oracle, ref, cfg);
      if (report.verdict == Verdict::accept) {
        ++accepts;
        CHECK(report.queries ==
              uniteq_accept_queries(cfg, d, std::int64_t(report.rounds.size())));
      }
    }
    CHECK(accepts >= 2 * trials / 3);
  }

  SUBCASE("accepts a planted conjugate") {
    const Matrix u0 = sample_haar_unitary(d, inst_rng);
    const MatrixFunction f = oracle::plant_unitary_equivalent(ref, u0);
    int accepts = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      cfg.seed = 90 + t;
      MatrixOracle oracle(f);
      if (test_unitary_equivalence(oracle, ref, cfg).verdict == Verdict::accept) ++accepts;
    }
    CHECK(accepts >= 2 * trials / 3);
  }

  SUBCASE("rejects a trace-separated pair") {
    std::vector<Matrix> fv(g->order()), hv(g->order());
    Rng rng(5);
    const double tau = 0.45;
    for (int x = 0; x < g->order(); ++x) {
      Matrix a(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) a(r, c) = rng.complex_gaussian();
      a *= 0.2 / a.norm();
      fv[x] = a + tau * Matrix::Identity(d, d);
      hv[x] = a - tau * Matrix::Identity(d, d);
    }
    const MatrixFunction f = MatrixFunction::from_values(g, d, fv);
    const MatrixFunction h = MatrixFunction::from_values(g, d, hv);
    REQUIRE(oracle::unitary_trace_lower_bound(f, h) >= 2 * cfg.epsilon);

    TesterConfig quick = cfg;
    quick.ov.net_iterations = 200;
    int rejects = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      quick.seed = 130 + t;
      MatrixOracle oracle(f);
      const TesterReport report = test_unitary_equivalence(oracle, h, quick);
      if (report.verdict == Verdict::reject) {
        ++rejects;
        CHECK(report.queries == uniteq_reject_queries(quick, d));
      }
    }
    CHECK(rejects == trials);
  }

  SUBCASE("dimension and group mismatches are structural errors") {
    const MatrixFunction wrong_dim = MatrixFunction::constant(g, Matrix::Zero(3, 3));
    MatrixOracle oracle(wrong_dim);
    CHECK_THROWS_AS(test_unitary_equivalence(oracle, ref, cfg), DimMismatch);
    const MatrixFunction other_group =
        MatrixFunction::constant(FiniteGroup::cyclic(6), Matrix::Zero(2, 2));
    MatrixOracle oracle2(other_group);
    CHECK_THROWS_AS(test_unitary_equivalence(oracle2, ref, cfg), GroupMismatch);
  }
}

TEST_CASE("reports are deterministic given (input, config, seed)") {
  const GroupPtr g = FiniteGroup::symmetric(3);
  Rng rng(8);
  const ScalarFunction f = random_palette_function(g, rng, 3);
  TesterConfig cfg;
  cfg.epsilon = 0.4;
  cfg.seed = 1234;
  ScalarOracle o1(f), o2(f);
  const auto r1 = report_to_json(test_conjugate_invariance(o1, cfg), "t", cfg.epsilon, cfg.seed);
  const auto r2 = report_to_json(test_conjugate_invariance(o2, cfg), "t", cfg.epsilon, cfg.seed);
  CHECK(r1.dump() == r2.dump());
}

TEST_CASE("query accounting matches the closed forms on an (epsilon, seed) grid") {
  const GroupPtr g = FiniteGroup::symmetric(4);
  const IrrepBasis basis = compute_irreps(g);
  const ScalarFunction chi = sign_character(g, basis);
  const ScalarFunction klass = normalized_character(g, basis.irreps.back());

  const MatrixFunction mg = MatrixFunction::constant(g, 0.5 * Matrix::Identity(1, 1));
  MatrixFunction far_g = mg;
  for (Matrix& m : far_g.values) m = -m;

  for (double eps : {0.5, 0.6, 0.75, 0.9, 1.0}) {
    for (std::uint64_t seed : {1, 2, 3, 4}) {
      TesterConfig cfg;
      cfg.epsilon = eps;
      cfg.seed = seed;

      {
        ScalarOracle o(klass);
        const TesterReport r = test_conjugate_invariance(o, cfg);
        REQUIRE(r.verdict == Verdict::accept);
        CHECK(r.queries == conjinv_accept_queries(cfg));
      }
      {
        ScalarOracle o(chi);
        const TesterReport r = test_homomorphism(o, cfg);
        REQUIRE(r.verdict == Verdict::accept);
        CHECK(r.queries == hom_accept_queries(cfg));
      }
      {
        TesterConfig ccfg = cfg;
        ccfg.ov.rounds = 2;
        ccfg.ov.mean_samples = 40;
        ccfg.ov.norm_samples = 16;
        ScalarOracle o(chi);
        const TesterReport r = test_character_proportional_core(o, ccfg);
        REQUIRE(r.verdict == Verdict::accept);
        CHECK(r.queries == char_core_accept_queries(ccfg));
        ScalarOracle o2(chi);
        const TesterReport rw = test_character_proportional(o2, ccfg);
        REQUIRE(rw.verdict == Verdict::accept);
        CHECK(rw.queries == char_accept_queries(ccfg));
      }
      {
        TesterConfig ucfg = cfg;
        ucfg.ov.net_iterations = 25;
        ucfg.ov.mean_samples = 64;
        MatrixOracle o(mg);
        const TesterReport r = test_unitary_equivalence(o, mg, ucfg);
        REQUIRE(r.verdict == Verdict::accept);  // d=1: U g U* = g, first draw hits
        CHECK(std::int64_t(r.rounds.size()) == 1);
        CHECK(r.queries == uniteq_accept_queries(ucfg, 1, 1));
        MatrixOracle o2(mg);
        const TesterReport r2 = test_unitary_equivalence(o2, far_g, ucfg);
        REQUIRE(r2.verdict == Verdict::reject);
        CHECK(r2.queries == uniteq_reject_queries(ucfg, 1));
      }
    }
  }
}

TEST_CASE("config validation") {
  TesterConfig cfg;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilon = 0.5;
  cfg.ov.rounds = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.ov.rounds = 5;
  cfg.ov.net_exponent = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.ov.net_exponent = 2.0;
  CHECK_NOTHROW(cfg.validate());
}
