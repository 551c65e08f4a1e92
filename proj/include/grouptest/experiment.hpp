#ifndef GROUPTEST_EXPERIMENT_HPP
#define GROUPTEST_EXPERIMENT_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "grouptest/oracle.hpp"
#include "grouptest/testers.hpp"

namespace grouptest {

struct IncompatibleFamily : Error {
  using Error::Error;
};

// One sweep: a tester, a certified instance family, and an epsilon grid.
// Trial t of cell c runs with seed = base_seed ^ splitmix64(c, t), so trials
// are reproducible regardless of thread count.
struct ExperimentSpec {
  std::string tester;      // test-conjinv | test-hom | test-char | test-char-core | test-uniteq
  std::string group_spec;  // builtin spec or .grp path
  std::string family;      // exact-character | perturbed-character | random-class-function |
                           // random-function | homomorphism | noisy-homomorphism |
                           // planted-unitary | far-unitary
  double family_param = 0.0;
  int dim = 1;  // matrix families
  double eps_start = 0.1;
  double eps_stop = 0.3;
  int eps_count = 3;
  int trials = 100;
  std::uint64_t base_seed = 0;
  std::string out_path;
  enum class Format { json, csv } format = Format::json;
  double equality_tol = 0.0;
  TesterOverrides ov;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct ExperimentRow {
  double epsilon = 0.0;
  double family_param = 0.0;
  int trials = 0;
  double accept_rate = 0.0;
  double mean_queries = 0.0;
  std::int64_t max_queries = 0;
  double certified_distance = 0.0;
  double wall_ms = 0.0;
  std::string instance_file;
  std::string reference_file;  // matrix families: the known g
  nlohmann::json certificate;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ExperimentRow> rows;

  nlohmann::json to_json() const;
  // Frozen header: epsilon,family_param,trials,accept_rate,mean_queries,
  // max_queries,certified_distance,wall_ms
  std::string to_csv() const;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Runs and writes to spec.out_path in spec.format.
ExperimentResult run_and_write_experiment(const ExperimentSpec& spec);

}  // namespace grouptest

#endif
