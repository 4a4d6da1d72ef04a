#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/builtins.hpp"
#include "skewflow/errors.hpp"
#include "skewflow/gauge.hpp"
#include "skewflow/generator.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/norms.hpp"

namespace skewflow::cli {

/// Schema violations, one message per problem, each prefixed with its line.
class JobError : public InputError {
 public:
  explicit JobError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

struct GaugeSpec {
  std::string kind = "identity";  // identity | power | table
  double p = 1.0;
  std::vector<std::pair<double, double>> table;

  MonotoneGauge make() const;
};

/// fixture: the family shipped with the system; coordinate: constant
/// coordinate blocks; matrices: constant projectors given inline.
struct ProjectorSpec {
  std::string source = "fixture";
  std::vector<int> blocks;
  std::vector<Eigen::MatrixXd> matrices;
};

struct AnalysisSpec {
  std::string kind;
  int line = 0;
  std::map<std::string, double> params;  // numeric parameters (mu, rho, nu1, ...)
  GaugeSpec gauge;
  ProjectorSpec projectors;
  std::string direction = "stable";  // estimate
  int member = 0;                    // growth / decay: 1-based fixture family member, 0 = none
  int triples = 50;                  // axioms
  bool integer_times = false;        // axioms
};

struct SystemSpec {
  std::string source = "builtin";  // builtin | steps | generator
  std::string builtin;
  BuiltinParams params;
  std::vector<Eigen::MatrixXd> steps;
  bool periodic = false;
  GeneratorSpec generator;
};

struct HorizonSettings {
  int n_max = 50;
  std::vector<double> states;  // explicit; empty -> 0..state_count-1
  int state_count = 8;
  std::vector<Eigen::VectorXd> vectors;
  int random_vectors = 8;
  double trend_factor = 10.0;
  Propagation propagation = Propagation::stepped;
};

struct AnalysisJob {
  std::string name = "job";
  std::uint64_t seed = 1;
  std::optional<NormKind> norm;
  SystemSpec system;
  HorizonSettings horizon;
  double axiom_tolerance = 1e-9;
  std::vector<AnalysisSpec> analyses;
  std::string output_dir;
  bool emit_csv = true;
};

struct ParseOptions {
  bool strict = true;  // unknown keys are errors; lenient mode collects them as warnings
};

struct ParseResult {
  AnalysisJob job;
  std::vector<std::string> warnings;
};

/// Parses and validates a job; every precondition is checked here so that a
/// returned job can run. Throws JobError listing all problems found.
ParseResult parse_job_text(const std::string& text, const ParseOptions& options = {});
ParseResult parse_job_file(const std::string& path, const ParseOptions& options = {});

/// Canonical YAML rendering; parsing it yields the same job.
std::string echo_job(const AnalysisJob& job);

/// Names accepted in the `kind` field of an analysis.
const std::vector<std::string>& analysis_kinds();

}  // namespace skewflow::cli
