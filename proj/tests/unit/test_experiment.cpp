#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "grouptest/experiment.hpp"
#include "grouptest/io.hpp"

using namespace grouptest;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "grouptest-exp";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exact characters are always accepted by the homomorphism tester") {
  ExperimentSpec spec;
  spec.tester = "test-hom";
  spec.group_spec = "builtin:symmetric:4";
  spec.family = "homomorphism";
  spec.eps_start = 0.3;
  spec.eps_stop = 0.9;
  spec.eps_count = 3;
  spec.trials = 30;
  spec.base_seed = 7;
  spec.out_path = (temp_dir() / "hom.json").string();
  const ExperimentResult result = run_experiment(spec);
  REQUIRE(result.rows.size() == 3);
  for (const ExperimentRow& row : result.rows) {
    CHECK(row.accept_rate == 1.0);
    CHECK(row.certified_distance <= 1e-9);
    CHECK(std::filesystem::exists(row.instance_file));
  }
}

TEST_CASE("random functions far from class functions are rejected") {
  ExperimentSpec spec;
  spec.tester = "test-conjinv";
  spec.group_spec = "builtin:symmetric:4";
  spec.family = "random-function";
  spec.eps_count = 1;
  spec.trials = 100;
  spec.base_seed = 3;
  spec.out_path = (temp_dir() / "conj.json").string();
  // run at half the certified distance
  ExperimentResult probe = run_experiment([&] {
    ExperimentSpec s = spec;
    s.trials = 1;
    return s;
  }());
  const double eps = probe.rows[0].certified_distance / 2;
  REQUIRE(eps > 0.05);
  spec.eps_start = spec.eps_stop = eps;
  const ExperimentResult result = run_experiment(spec);
  CHECK(result.rows[0].accept_rate <= 1.0 / 3.0 + 3 * std::sqrt(0.25 / spec.trials));
}

TEST_CASE("experiment outputs are reproducible and instances reload") {
  ExperimentSpec spec;
  spec.tester = "test-conjinv";
  spec.group_spec = "builtin:dihedral:4";
  spec.family = "random-class-function";
  spec.eps_start = 0.2;
  spec.eps_stop = 0.4;
  spec.eps_count = 2;
  spec.trials = 25;
  spec.base_seed = 11;
  spec.out_path = (temp_dir() / "repro.json").string();

  const ExperimentResult a = run_experiment(spec);
  const ExperimentResult b = run_experiment(spec);
  auto strip = [](nlohmann::json j) {
    for (auto& row : j["rows"]) row.erase("wall_ms");
    return j.dump();
  };
  CHECK(strip(a.to_json()) == strip(b.to_json()));  // wall time is the only variant field

  // class functions are always accepted
  for (const ExperimentRow& row : a.rows) {
    CHECK(row.accept_rate == 1.0);
    const GroupPtr g = load_group(spec.group_spec);
    const ScalarFunction f = load_scalar_function(row.instance_file, g);
    CHECK(f.is_class_function(0.0));
  }
}

TEST_CASE("csv and json emissions carry identical numeric values") {
  ExperimentSpec spec;
  spec.tester = "test-conjinv";
  spec.group_spec = "builtin:symmetric:3";
  spec.family = "random-function";
  spec.eps_start = 0.3;
  spec.eps_stop = 0.3;
  spec.eps_count = 1;
  spec.trials = 10;
  spec.base_seed = 1;
  spec.out_path = (temp_dir() / "fmt.csv").string();
  const ExperimentResult result = run_experiment(spec);
  const std::string csv = result.to_csv();
  const nlohmann::json j = result.to_json();
  REQUIRE(csv.rfind("epsilon,family_param,trials,accept_rate,mean_queries,max_queries,"
                    "certified_distance,wall_ms\n", 0) == 0);
  // the csv fields are json-formatted, so textual equality is exact
  const std::string line = csv.substr(csv.find('\n') + 1);
  const auto& row = j["rows"][0];
  CHECK(line.find(row["accept_rate"].dump()) != std::string::npos);
  CHECK(line.find(row["mean_queries"].dump()) != std::string::npos);
  CHECK(line.find(row["certified_distance"].dump()) != std::string::npos);
}

TEST_CASE("planted unitary instances are accepted, far ones rejected") {
  ExperimentSpec spec;
  spec.tester = "test-uniteq";
  spec.group_spec = "builtin:cyclic:8";
  spec.family = "planted-unitary";
  spec.dim = 2;
  spec.eps_start = spec.eps_stop = 0.3;
  spec.eps_count = 1;
  spec.trials = 10;
  spec.base_seed = 5;
  spec.out_path = (temp_dir() / "uniteq.json").string();
  spec.ov.net_iterations = 4000;
  spec.ov.mean_samples = 512;
  const ExperimentResult planted = run_experiment(spec);
  CHECK(planted.rows[0].accept_rate >= 2.0 / 3.0);
  CHECK(planted.rows[0].certified_distance == 0.0);

  spec.family = "far-unitary";
  spec.ov.net_iterations = 300;
  spec.out_path = (temp_dir() / "uniteq-far.json").string();
  const ExperimentResult far = run_experiment(spec);
  CHECK(far.rows[0].accept_rate == 0.0);
  CHECK(far.rows[0].certified_distance >= 0.3);
  const GroupPtr g = load_group(spec.group_spec);
  const MatrixFunction f = load_matrix_function(far.rows[0].instance_file, g);
  const MatrixFunction ref = load_matrix_function(far.rows[0].reference_file, g);
  CHECK(oracle::unitary_trace_lower_bound(f, ref) ==
        doctest::Approx(far.rows[0].certified_distance));
}

TEST_CASE("family and tester compatibility is validated") {
  ExperimentSpec spec;
  spec.tester = "test-hom";
  spec.group_spec = "builtin:symmetric:3";
  spec.family = "planted-unitary";
  spec.out_path = "x.json";
  CHECK_THROWS_AS(spec.validate(), IncompatibleFamily);
  spec.family = "random-function";
  spec.tester = "test-uniteq";
  CHECK_THROWS_AS(spec.validate(), IncompatibleFamily);
  spec.tester = "no-such";
  spec.family = "planted-unitary";
  CHECK_THROWS_AS(spec.validate(), IncompatibleFamily);
}
