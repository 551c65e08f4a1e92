#include "grouptest/experiment.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include "grouptest/haar.hpp"
#include "grouptest/io.hpp"
#include "grouptest/report.hpp"

namespace grouptest {

using nlohmann::json;

namespace {

constexpr std::uint64_t kInstanceStream = 0x696E7374;  // "inst"

bool is_matrix_family(const std::string& family) {
  return family == "planted-unitary" || family == "far-unitary";
}

bool is_matrix_tester(const std::string& tester) { return tester == "test-uniteq"; }

// Snap values that are within 1e-9 of the product-closed set {0, +-1, +-i}
// so exact-equality testers see exact homomorphisms.  Returns false when some
// value would not snap; such instances need an equality tolerance.
bool snap_to_exact_units(std::vector<Complex>& values) {
  static const Complex units[5] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  bool all = true;
  for (Complex& v : values) {
    bool snapped = false;
    for (const Complex& u : units) {
      if (std::abs(v - u) <= 1e-9) {
        v = u;
        snapped = true;
        break;
      }
    }
    all = all && snapped;
  }
  return all;
}

Complex clip_to_disk(Complex v) {
  const double m = std::abs(v);
  return m > 1.0 ? v / m : v;
}

struct Instance {
  ScalarFunction f;        // scalar testers
  MatrixFunction mf, mg;   // matrix tester: input and reference
  bool matrix = false;
  double tol = 0.0;
  oracle::FarnessCertificate certificate;
};

oracle::FarnessCertificate class_function_certificate(const ScalarFunction& f) {
  oracle::FarnessCertificate cert;
  cert.property = "class-function";
  cert.method = oracle::FarnessCertificate::Method::exhaustive;
  cert.distance = distance(f, oracle::mean_class_function(f));
  cert.argmin_label = "mean-class-function";
  return cert;
}

ScalarFunction scalar_instance(const std::string& family, double param, const GroupPtr& g,
                               const IrrepBasis& basis, Rng& rng, double& tol) {
  const int n = g->order();
  if (family == "exact-character") {
    const int k = int(std::llround(param)) % std::max(1, basis.size());
    ScalarFunction f = normalized_character(g, basis[k]);
    std::vector<Complex> snapped = f.values;
    if (snap_to_exact_units(snapped)) f.values = std::move(snapped);
    return f;
  }
  if (family == "homomorphism") {
    std::vector<int> one_dim;
    for (int i = 0; i < basis.size(); ++i)
      if (basis[i].dim == 1) one_dim.push_back(i);
    const int k = one_dim[std::size_t(std::llround(param)) % one_dim.size()];
    ScalarFunction f = character(g, basis[k]);
    if (!snap_to_exact_units(f.values)) tol = std::max(tol, 1e-9);
    return f;
  }
  if (family == "noisy-homomorphism") {
    std::vector<int> one_dim;
    for (int i = 0; i < basis.size(); ++i)
      if (basis[i].dim == 1) one_dim.push_back(i);
    ScalarFunction f = character(g, basis[one_dim[0]]);
    if (!snap_to_exact_units(f.values)) tol = std::max(tol, 1e-9);
    const int flips = std::max<int>(1, int(std::ceil(param * n)));
    for (int i = 0; i < flips; ++i) f.values[g->uniform_element(rng)] = rng.unit_disk();
    return ScalarFunction::from_values(g, std::move(f.values));
  }
  if (family == "perturbed-character") {
    const int k = int(std::abs(std::llround(param * 1000))) % std::max(1, basis.size());
    ScalarFunction f = normalized_character(g, basis[k % basis.size()]);
    for (Complex& v : f.values)
      v = clip_to_disk(v + param * Complex(rng.gaussian(), rng.gaussian()));
    return ScalarFunction::from_values(g, std::move(f.values));
  }
  if (family == "random-class-function") {
    std::vector<Complex> values(n);
    for (const auto& cls : g->classes()) {
      const Complex v = cls.front() == 0 ? Complex(1, 0) : rng.unit_disk();
      for (int x : cls) values[x] = v;
    }
    return ScalarFunction::from_values(g, std::move(values));
  }
  if (family == "random-function") {
    std::vector<Complex> values(n);
    for (Complex& v : values) v = rng.unit_disk();
    return ScalarFunction::from_values(g, std::move(values));
  }
  throw IncompatibleFamily("unknown scalar family '" + family + "'");
}

Instance make_instance(const ExperimentSpec& spec, const GroupPtr& g, const IrrepBasis* basis,
                       std::uint64_t cell, double /*epsilon*/) {
  Rng rng(derive_seed(spec.base_seed, cell, kInstanceStream));
  Instance inst;
  inst.tol = spec.equality_tol;

  if (is_matrix_family(spec.family)) {
    const int d = spec.dim;
    const int n = g->order();
    if (spec.family == "planted-unitary") {
      std::vector<Matrix> gv(n);
      for (Matrix& m : gv) {
        Matrix a(d, d);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) a(r, c) = rng.complex_gaussian();
        const double target = 0.5 + 0.4 * rng.uniform01();
        m = a * (target / a.norm());
      }
      inst.mg = MatrixFunction::from_values(g, d, std::move(gv));
      const Matrix u0 = sample_haar_unitary(d, rng);
      inst.mf = oracle::plant_unitary_equivalent(inst.mg, u0);
      inst.certificate.property = "unitary-equivalence";
      inst.certificate.method = oracle::FarnessCertificate::Method::closed_form;
      inst.certificate.distance = 0.0;
      inst.certificate.unitary = u0;
      inst.certificate.note = "planted: f = U0 g U0*";
    } else {
      // far-unitary: f = A + tau I, g = A - tau I; the trace gap certifies
      // dist(f, U g U*) >= tau sqrt(d) for every U.
      const double tau = spec.family_param > 0 ? spec.family_param : 0.45;
      const double amp = std::max(0.0, 1.0 - tau * std::sqrt(double(d))) * 0.9;
      std::vector<Matrix> fv(n), gv(n);
      for (int x = 0; x < n; ++x) {
        Matrix a(d, d);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) a(r, c) = rng.complex_gaussian();
        if (a.norm() > 0) a *= (amp * rng.uniform01()) / a.norm();
        fv[x] = a + tau * Matrix::Identity(d, d);
        gv[x] = a - tau * Matrix::Identity(d, d);
      }
      inst.mf = MatrixFunction::from_values(g, d, std::move(fv));
      inst.mg = MatrixFunction::from_values(g, d, std::move(gv));
      inst.certificate.property = "unitary-equivalence";
      inst.certificate.method = oracle::FarnessCertificate::Method::closed_form;
      inst.certificate.distance = oracle::unitary_trace_lower_bound(inst.mf, inst.mg);
      inst.certificate.note = "trace-invariant lower bound on dist(f, U g U*) for every U";
    }
    inst.matrix = true;
    return inst;
  }

  inst.f = scalar_instance(spec.family, spec.family_param, g, *basis, rng, inst.tol);
  if (spec.tester == "test-conjinv") {
    inst.certificate = class_function_certificate(inst.f);
  } else if (spec.tester == "test-hom") {
    inst.certificate = oracle::distance_to_homomorphisms(inst.f, *basis);
  } else {
    inst.certificate = oracle::distance_to_character_rays(inst.f, *basis);
  }
  return inst;
}

struct TrialOutcome {
  bool accepted = false;
  std::int64_t queries = 0;
};

TrialOutcome run_trial(const ExperimentSpec& spec, const Instance& inst, double epsilon,
                       std::uint64_t seed) {
  TesterConfig cfg;
  cfg.epsilon = epsilon;
  cfg.seed = seed;
  cfg.equality_tol = inst.tol;
  cfg.ov = spec.ov;

  TesterReport report;
  if (inst.matrix) {
    MatrixOracle oracle(inst.mf);
    report = test_unitary_equivalence(oracle, inst.mg, cfg);
  } else {
    ScalarOracle oracle(inst.f);
    if (spec.tester == "test-conjinv")
      report = test_conjugate_invariance(oracle, cfg);
    else if (spec.tester == "test-hom")
      report = test_homomorphism(oracle, cfg);
    else if (spec.tester == "test-char")
      report = test_character_proportional(oracle, cfg);
    else
      report = test_character_proportional_core(oracle, cfg);
  }
  return TrialOutcome{report.verdict == Verdict::accept, report.queries};
}

}  // namespace

void ExperimentSpec::validate() const {
  if (eps_count < 1) throw ConfigError("epsilon grid needs at least one point");
  if (!(eps_start > 0 && eps_start <= 1 && eps_stop > 0 && eps_stop <= 1))
    throw ConfigError("epsilon values must lie in (0, 1]");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (out_path.empty()) throw ConfigError("experiment needs an output path");
  const bool mf = is_matrix_family(family);
  const bool mt = is_matrix_tester(tester);
  if (mf != mt)
    throw IncompatibleFamily("family '" + family + "' is incompatible with tester '" + tester +
                             "'");
  if (mt && dim < 1) throw ConfigError("matrix families need dim >= 1");
  if (tester != "test-conjinv" && tester != "test-hom" && tester != "test-char" &&
      tester != "test-char-core" && tester != "test-uniteq")
    throw ConfigError("unknown tester '" + tester + "'");
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const GroupPtr g = load_group(spec.group_spec);

  std::optional<IrrepBasis> basis;
  if (!is_matrix_family(spec.family)) basis = compute_irreps(g);

  const std::filesystem::path instance_dir = spec.out_path + ".instances";
  std::filesystem::create_directories(instance_dir);

  ExperimentResult result;
  result.spec = spec;

  const int threads =
      spec.threads > 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());

  for (int cell = 0; cell < spec.eps_count; ++cell) {
    const double epsilon =
        spec.eps_count == 1
            ? spec.eps_start
            : spec.eps_start + (spec.eps_stop - spec.eps_start) * cell / double(spec.eps_count - 1);

    const Instance inst =
        make_instance(spec, g, basis ? &*basis : nullptr, std::uint64_t(cell), epsilon);

    ExperimentRow row;
    row.epsilon = epsilon;
    row.family_param = spec.family_param;
    row.trials = spec.trials;
    row.certified_distance = inst.certificate.distance;
    row.certificate = certificate_to_json(inst.certificate);

    const std::string stem = "cell-" + std::to_string(cell);
    if (inst.matrix) {
      row.instance_file = (instance_dir / (stem + ".fn")).string();
      row.reference_file = (instance_dir / (stem + ".ref.fn")).string();
      save_function(row.instance_file, inst.mf);
      save_function(row.reference_file, inst.mg);
    } else {
      row.instance_file = (instance_dir / (stem + ".fn")).string();
      save_function(row.instance_file, inst.f);
    }

    std::vector<TrialOutcome> outcomes(std::size_t(spec.trials));
    const auto t0 = std::chrono::steady_clock::now();
    {
      std::vector<std::thread> pool;
      std::atomic<int> next{0};
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
          for (int t = next.fetch_add(1); t < spec.trials; t = next.fetch_add(1))
            outcomes[std::size_t(t)] = run_trial(
                spec, inst, epsilon, derive_seed(spec.base_seed, std::uint64_t(cell), std::uint64_t(t)));
        });
      }
      for (auto& th : pool) th.join();
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::int64_t accepted = 0, total_queries = 0, max_queries = 0;
    for (const TrialOutcome& o : outcomes) {
      accepted += o.accepted ? 1 : 0;
      total_queries += o.queries;
      max_queries = std::max(max_queries, o.queries);
    }
    row.accept_rate = double(accepted) / double(spec.trials);
    row.mean_queries = double(total_queries) / double(spec.trials);
    row.max_queries = max_queries;
    result.rows.push_back(std::move(row));
  }
  return result;
}

json ExperimentResult::to_json() const {
  json rows_json = json::array();
  for (const ExperimentRow& r : rows) {
    json row{{"epsilon", r.epsilon},
             {"family_param", r.family_param},
             {"trials", r.trials},
             {"accept_rate", r.accept_rate},
             {"mean_queries", r.mean_queries},
             {"max_queries", r.max_queries},
             {"certified_distance", r.certified_distance},
             {"wall_ms", r.wall_ms},
             {"instance_file", r.instance_file},
             {"certificate", r.certificate}};
    if (!r.reference_file.empty()) row["reference_file"] = r.reference_file;
    rows_json.push_back(std::move(row));
  }
  return json{{"tool_version", kToolVersion},
              {"tester", spec.tester},
              {"group", spec.group_spec},
              {"family", spec.family},
              {"base_seed", spec.base_seed},
              {"rows", std::move(rows_json)}};
}

std::string ExperimentResult::to_csv() const {
  std::string out =
      "epsilon,family_param,trials,accept_rate,mean_queries,max_queries,certified_distance,"
      "wall_ms\n";
  for (const ExperimentRow& r : rows) {
    // json-format each number so CSV and JSON emissions agree byte for byte.
    out += json(r.epsilon).dump() + "," + json(r.family_param).dump() + "," +
           std::to_string(r.trials) + "," + json(r.accept_rate).dump() + "," +
           json(r.mean_queries).dump() + "," + std::to_string(r.max_queries) + "," +
           json(r.certified_distance).dump() + "," + json(r.wall_ms).dump() + "\n";
  }
  return out;
}

ExperimentResult run_and_write_experiment(const ExperimentSpec& spec) {
  ExperimentResult result = run_experiment(spec);
  std::ofstream out(spec.out_path);
  if (!out) throw Error("cannot write '" + spec.out_path + "'");
  if (spec.format == ExperimentSpec::Format::csv)
    out << result.to_csv();
  else
    out << result.to_json().dump(2) << "\n";
  return result;
}

}  // namespace grouptest
