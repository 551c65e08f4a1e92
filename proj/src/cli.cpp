#include "grouptest/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "grouptest/experiment.hpp"
#include "grouptest/io.hpp"
#include "grouptest/report.hpp"

namespace grouptest {

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string group;
  std::string function;
  std::string function2;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string out;
  // overrides
  std::int64_t rounds = 0, mean_samples = 0, norm_samples = 0, net_iterations = 0;
  double net_base = 40.0, net_exponent = 2.0;

  TesterConfig config() const {
    TesterConfig cfg;
    cfg.epsilon = epsilon;
    cfg.seed = seed;
    cfg.equality_tol = tol;
    if (rounds > 0) cfg.ov.rounds = rounds;
    if (mean_samples > 0) cfg.ov.mean_samples = mean_samples;
    if (norm_samples > 0) cfg.ov.norm_samples = norm_samples;
    if (net_iterations > 0) cfg.ov.net_iterations = net_iterations;
    cfg.ov.net_base = net_base;
    cfg.ov.net_exponent = net_exponent;
    return cfg;
  }
};

void emit(const json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << payload.dump(2) << "\n";
  }
}

void add_tester_flags(CLI::App* cmd, CommonFlags& flags, bool needs_second) {
  cmd->add_option("--group", flags.group, "builtin spec or .grp path")->required();
  cmd->add_option("--function", flags.function, ".fn path")->required();
  if (needs_second)
    cmd->add_option("--function2", flags.function2, "reference .fn path")->required();
  cmd->add_option("--epsilon", flags.epsilon, "distance parameter in (0,1]")->required();
  cmd->add_option("--seed", flags.seed, "rng seed");
  cmd->add_option("--tol", flags.tol, "value-equality tolerance (default 0 = exact)");
  cmd->add_option("--out", flags.out, "write the JSON report here instead of stdout");
  cmd->add_option("--rounds", flags.rounds, "override core round count");
  cmd->add_option("--mean-samples", flags.mean_samples, "override per-round estimator draws");
  cmd->add_option("--norm-samples", flags.norm_samples, "override norm-gate draws");
  cmd->add_option("--net-iterations", flags.net_iterations, "override Haar draw count");
  cmd->add_option("--net-base", flags.net_base, "Haar net base constant");
  cmd->add_option("--net-exponent", flags.net_exponent, "Haar net exponent constant");
}

int finish_tester(const TesterReport& report, const std::string& tester,
                  const CommonFlags& flags) {
  emit(report_to_json(report, tester, flags.epsilon, flags.seed), flags.out);
  return report.verdict == Verdict::accept ? 0 : 1;
}

int run_scalar_tester(const std::string& tester, const CommonFlags& flags, bool bare_core) {
  const GroupPtr g = load_group(flags.group);
  const ScalarFunction f = load_scalar_function(flags.function, g);
  ScalarOracle oracle(f);
  const TesterConfig cfg = flags.config();
  TesterReport report;
  if (tester == "test-conjinv")
    report = test_conjugate_invariance(oracle, cfg);
  else if (tester == "test-hom")
    report = test_homomorphism(oracle, cfg);
  else if (bare_core)
    report = test_character_proportional_core(oracle, cfg);
  else
    report = test_character_proportional(oracle, cfg);
  return finish_tester(report, bare_core ? tester + "-core" : tester, flags);
}

int run_uniteq(const CommonFlags& flags) {
  const GroupPtr g = load_group(flags.group);
  const MatrixFunction f = load_matrix_function(flags.function, g);
  const MatrixFunction ref = load_matrix_function(flags.function2, g);
  if (f.dim != ref.dim)
    throw DimMismatch("function dims differ: " + std::to_string(f.dim) + " vs " +
                      std::to_string(ref.dim));
  MatrixOracle oracle(f);
  const TesterReport report = test_unitary_equivalence(oracle, ref, flags.config());
  return finish_tester(report, "test-uniteq", flags);
}

json scalar_values_json(const ScalarFunction& f) {
  json values = json::array();
  for (const Complex& v : f.values) values.push_back(complex_to_json(v));
  return values;
}

int run_oracle(const std::string& op, const CommonFlags& flags, int restarts) {
  const GroupPtr g = load_group(flags.group);
  json out{{"tool_version", kToolVersion}, {"op", op}};

  if (op == "uniteq-gap" || op == "trace-bound") {
    const MatrixFunction f = load_matrix_function(flags.function, g);
    const MatrixFunction ref = load_matrix_function(flags.function2, g);
    if (op == "trace-bound") {
      out["value"] = oracle::unitary_trace_lower_bound(f, ref);
    } else {
      Rng rng(flags.seed);
      out["certificate"] =
          certificate_to_json(oracle::unitary_equivalence_gap(f, ref, restarts, rng));
    }
    emit(out, flags.out);
    return 0;
  }

  const ScalarFunction f = load_scalar_function(flags.function, g);
  if (op == "plurality") {
    out["values"] = scalar_values_json(oracle::plurality_class_function(f));
  } else if (op == "mean") {
    out["values"] = scalar_values_json(oracle::mean_class_function(f));
  } else if (op == "corrected") {
    out["values"] = scalar_values_json(oracle::corrected_class_function(f));
  } else if (op == "conj-reject-prob") {
    out["value"] = oracle::exact_conjugation_rejection_probability(f);
  } else if (op == "product-reject-prob") {
    out["value"] = oracle::exact_product_rejection_probability(f, flags.tol);
  } else if (op == "weyl-defect") {
    out["value"] = oracle::weyl_defect(f);
    out["fourier_value"] = oracle::weyl_defect_fourier(f, compute_irreps(g));
  } else if (op == "cubic") {
    const auto cubic = oracle::cubic_expectation(f, compute_irreps(g));
    out["time_domain"] = complex_to_json(cubic.time_domain);
    out["fourier_domain"] = complex_to_json(cubic.fourier_domain);
  } else if (op == "dist-hom") {
    out["certificate"] = certificate_to_json(oracle::distance_to_homomorphisms(f, compute_irreps(g)));
  } else if (op == "dist-char-rays") {
    out["certificate"] =
        certificate_to_json(oracle::distance_to_character_rays(f, compute_irreps(g)));
  } else {
    throw ConfigError("unknown oracle op '" + op + "'");
  }
  emit(out, flags.out);
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Property testing of functions on finite groups"};
  app.require_subcommand(1);
  int exit_code = 0;

  // irreps
  auto* irreps_cmd = app.add_subcommand("irreps", "compute the unitary irreducible representations");
  CommonFlags irreps_flags;
  std::uint64_t engine_seed = 0;
  int irrep_cap = 512;
  irreps_cmd->add_option("--group", irreps_flags.group, "builtin spec or .grp path")->required();
  irreps_cmd->add_option("--engine-seed", engine_seed, "construction seed");
  irreps_cmd->add_option("--cap", irrep_cap, "order cap for irrep computation");
  irreps_cmd->add_option("--out", irreps_flags.out, "output path");
  irreps_cmd->callback([&] {
    IrrepOptions opt;
    opt.engine_seed = engine_seed;
    opt.order_cap = irrep_cap;
    emit(irreps_to_json(compute_irreps(load_group(irreps_flags.group), opt)), irreps_flags.out);
  });

  // fourier
  auto* fourier_cmd = app.add_subcommand("fourier", "non-abelian Fourier transform of a function");
  CommonFlags fourier_flags;
  fourier_cmd->add_option("--group", fourier_flags.group)->required();
  fourier_cmd->add_option("--function", fourier_flags.function)->required();
  fourier_cmd->add_option("--out", fourier_flags.out);
  fourier_cmd->callback([&] {
    const GroupPtr g = load_group(fourier_flags.group);
    const ScalarFunction f = load_scalar_function(fourier_flags.function, g);
    const IrrepBasis basis = compute_irreps(g);
    const FourierCoefficients coeffs = fourier_transform(f, basis);
    const ScalarFunction back = inverse_fourier(coeffs, basis);
    double roundtrip = 0;
    for (int x = 0; x < g->order(); ++x)
      roundtrip = std::max(roundtrip, std::abs(back.values[x] - f.values[x]));
    double parseval = std::abs(l2_norm(f) * l2_norm(f) - [&] {
      double s = 0;
      for (const UnitaryIrrep& phi : basis.irreps) s += phi.dim * coeffs.at(phi.label).squaredNorm();
      return s;
    }());
    emit(json{{"tool_version", kToolVersion},
              {"coefficients", fourier_to_json(coeffs, basis)},
              {"roundtrip_error", roundtrip},
              {"parseval_error", parseval}},
         fourier_flags.out);
  });

  // dist
  auto* dist_cmd = app.add_subcommand("dist", "distance between two functions");
  CommonFlags dist_flags;
  dist_cmd->add_option("--group", dist_flags.group)->required();
  dist_cmd->add_option("--function", dist_flags.function)->required();
  dist_cmd->add_option("--function2", dist_flags.function2)->required();
  dist_cmd->add_option("--out", dist_flags.out);
  dist_cmd->callback([&] {
    const GroupPtr g = load_group(dist_flags.group);
    const LoadedFunction a = load_function(dist_flags.function, g);
    const LoadedFunction b = load_function(dist_flags.function2, g);
    if (a.is_scalar() != b.is_scalar())
      throw ShapeMismatch("cannot mix scalar and matrix functions");
    const double d = a.is_scalar() ? distance(*a.scalar, *b.scalar) : distance(*a.matrix, *b.matrix);
    emit(json{{"tool_version", kToolVersion}, {"distance", d}}, dist_flags.out);
  });

  // testers
  CommonFlags conjinv_flags, hom_flags, char_flags, uniteq_flags;
  bool char_core = false;
  auto* conjinv_cmd = app.add_subcommand("test-conjinv", "test conjugate invariance");
  add_tester_flags(conjinv_cmd, conjinv_flags, false);
  conjinv_cmd->callback(
      [&] { exit_code = run_scalar_tester("test-conjinv", conjinv_flags, false); });

  auto* hom_cmd = app.add_subcommand("test-hom", "test homomorphism");
  add_tester_flags(hom_cmd, hom_flags, false);
  hom_cmd->callback([&] { exit_code = run_scalar_tester("test-hom", hom_flags, false); });

  auto* char_cmd =
      app.add_subcommand("test-char", "test proportionality to an irreducible character");
  add_tester_flags(char_cmd, char_flags, false);
  char_cmd->add_flag("--core", char_core,
                     "run the bare core (input must already be a class function)");
  char_cmd->callback([&] { exit_code = run_scalar_tester("test-char", char_flags, char_core); });

  auto* uniteq_cmd = app.add_subcommand("test-uniteq", "test unitary equivalence to --function2");
  add_tester_flags(uniteq_cmd, uniteq_flags, true);
  uniteq_cmd->callback([&] { exit_code = run_uniteq(uniteq_flags); });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact brute-force ground truth");
  CommonFlags oracle_flags;
  std::string oracle_op;
  int restarts = 8;
  oracle_cmd->add_option("--op", oracle_op,
                         "plurality|mean|corrected|conj-reject-prob|product-reject-prob|"
                         "dist-hom|dist-char-rays|cubic|weyl-defect|uniteq-gap|trace-bound")
      ->required();
  oracle_cmd->add_option("--group", oracle_flags.group)->required();
  oracle_cmd->add_option("--function", oracle_flags.function)->required();
  oracle_cmd->add_option("--function2", oracle_flags.function2);
  oracle_cmd->add_option("--seed", oracle_flags.seed);
  oracle_cmd->add_option("--tol", oracle_flags.tol);
  oracle_cmd->add_option("--restarts", restarts);
  oracle_cmd->add_option("--out", oracle_flags.out);
  oracle_cmd->callback([&] { exit_code = run_oracle(oracle_op, oracle_flags, restarts); });

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "acceptance-rate sweep over an epsilon grid");
  ExperimentSpec spec;
  std::string eps_grid = "0.1:0.3:3";
  std::string format = "json";
  CommonFlags exp_flags;
  exp_cmd->add_option("--tester", spec.tester, "test-conjinv|test-hom|test-char|test-char-core|test-uniteq")
      ->required();
  exp_cmd->add_option("--group", spec.group_spec)->required();
  exp_cmd->add_option("--family", spec.family,
                      "exact-character|perturbed-character|random-class-function|random-function|"
                      "homomorphism|noisy-homomorphism|planted-unitary|far-unitary")
      ->required();
  exp_cmd->add_option("--family-param", spec.family_param);
  exp_cmd->add_option("--dim", spec.dim, "matrix dimension for unitary families");
  exp_cmd->add_option("--eps", eps_grid, "epsilon grid start:stop:count");
  exp_cmd->add_option("--trials", spec.trials)->required();
  exp_cmd->add_option("--seed", spec.base_seed);
  exp_cmd->add_option("--out", spec.out_path)->required();
  exp_cmd->add_option("--format", format, "json|csv");
  exp_cmd->add_option("--tol", spec.equality_tol);
  exp_cmd->add_option("--threads", spec.threads);
  exp_cmd->add_option("--rounds", exp_flags.rounds);
  exp_cmd->add_option("--mean-samples", exp_flags.mean_samples);
  exp_cmd->add_option("--norm-samples", exp_flags.norm_samples);
  exp_cmd->add_option("--net-iterations", exp_flags.net_iterations);
  exp_cmd->add_option("--net-base", exp_flags.net_base);
  exp_cmd->add_option("--net-exponent", exp_flags.net_exponent);
  exp_cmd->callback([&] {
    if (format == "csv")
      spec.format = ExperimentSpec::Format::csv;
    else if (format == "json")
      spec.format = ExperimentSpec::Format::json;
    else
      throw ConfigError("format must be json or csv");
    const auto c1 = eps_grid.find(':'), c2 = eps_grid.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
      throw ConfigError("--eps wants start:stop:count");
    spec.eps_start = std::stod(eps_grid.substr(0, c1));
    spec.eps_stop = std::stod(eps_grid.substr(c1 + 1, c2 - c1 - 1));
    spec.eps_count = std::stoi(eps_grid.substr(c2 + 1));
    spec.ov = exp_flags.config().ov;
    const ExperimentResult result = run_and_write_experiment(spec);
    std::cout << json{{"out", spec.out_path}, {"rows", result.rows.size()}}.dump() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace grouptest
