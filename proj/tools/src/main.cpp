#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skewflow/builtins.hpp"
#include "skewflow/cli/job.hpp"
#include "skewflow/cli/report.hpp"

namespace sc = skewflow::cli;

namespace {

struct Common {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  bool lenient = false;
};

int finish(const sc::AnalysisJob& job, const Common& common) {
  const sc::Json report = sc::run_job(job);
  std::cout << sc::summarize(report);
  std::string dir = common.out.empty() ? job.output_dir : common.out;
  if (!dir.empty()) {
    for (const auto& p : sc::write_report(report, dir, job.emit_csv)) std::cout << "wrote " << p.string() << '\n';
  }
  return 0;
}

void apply(sc::AnalysisJob& job, const Common& common) {
  if (common.seed) job.seed = *common.seed;
  if (common.tolerance) job.axiom_tolerance = *common.tolerance;
}

sc::AnalysisJob load(const std::string& path, const Common& common) {
  sc::ParseOptions options;
  options.strict = !common.lenient;
  sc::ParseResult parsed = sc::parse_job_file(path, options);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << '\n';
  apply(parsed.job, common);
  return parsed.job;
}

sc::AnalysisJob builtin_job(const std::string& name, const skewflow::BuiltinParams& params, int n_max) {
  sc::AnalysisJob job;
  job.name = name;
  job.system.source = "builtin";
  job.system.builtin = name;
  job.system.params = params;
  job.horizon.n_max = n_max;
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewflow: stability, dichotomy and trichotomy checks for skew-evolution semiflows"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sc::kToolVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Directory for report.json and the CSV files");
    sub->add_option("--seed", common.seed, "Seed overriding the job's seed");
    sub->add_option("--tolerance", common.tolerance, "Relative tolerance for the axiom check");
    auto* strict = sub->add_flag("--strict", "Unknown job keys are errors (default)");
    auto* lenient = sub->add_flag("--lenient", common.lenient, "Unknown job keys are warnings");
    strict->excludes(lenient);
  };

  std::string job_path;
  auto* analyze = app.add_subcommand("analyze", "Run every analysis of a job file");
  analyze->add_option("job", job_path, "Job file (YAML)")->required()->check(CLI::ExistingFile);
  add_common(analyze);

  std::string builtin_name;
  skewflow::BuiltinParams params;
  int triples = 50;
  double t_max = -1.0;
  bool integer_times = false;
  auto* axioms = app.add_subcommand("check-axioms", "Check (s1), (s2), (c1), (c2) on random triples");
  auto* axioms_job = axioms->add_option("job", job_path, "Job file whose system is checked")->check(CLI::ExistingFile);
  auto* axioms_builtin = axioms->add_option("--builtin", builtin_name, "Builtin system to check");
  axioms_job->excludes(axioms_builtin);
  axioms->add_option("--variant", params.variant, "ex_ce variant: corrected or literal");
  axioms->add_option("--base", params.base, "ex_ce base function: constant, saturating or table");
  axioms->add_option("--limit", params.limit, "Limit l of the base function");
  axioms->add_option("--triples", triples, "Number of random (t, s, t0) triples");
  axioms->add_option("--t-max", t_max, "Largest sampled time (default: horizon n_max)");
  axioms->add_flag("--integer-times", integer_times, "Sample integer times only");
  add_common(axioms);

  std::string direction = "stable";
  int n_max = 50;
  double lo = 1e-3;
  double hi = 10.0;
  double search_tol = 1e-4;
  auto* estimate = app.add_subcommand("estimate", "Estimate the stability or instability exponent");
  auto* estimate_job = estimate->add_option("job", job_path, "Job file whose system is used")->check(CLI::ExistingFile);
  auto* estimate_builtin = estimate->add_option("--builtin", builtin_name, "Builtin system");
  estimate_job->excludes(estimate_builtin);
  estimate->add_option("--direction", direction, "stable or instable")
      ->check(CLI::IsMember({"stable", "instable", "unstable"}));
  estimate->add_option("--n-max", n_max, "Integer horizon when using --builtin");
  estimate->add_option("--lo", lo, "Lower end of the search interval");
  estimate->add_option("--hi", hi, "Upper end of the search interval");
  estimate->add_option("--search-tolerance", search_tol, "Bisection tolerance");
  estimate->add_option("--variant", params.variant, "ex_ce variant");
  estimate->add_option("--base", params.base, "ex_ce base function");
  estimate->add_option("--limit", params.limit, "Limit l of the base function");
  add_common(estimate);

  auto* list = app.add_subcommand("list-builtins", "List the builtin fixtures");

  std::string report_path;
  auto* emit = app.add_subcommand("emit-csv", "Write the CSV files of an existing report.json");
  emit->add_option("report", report_path, "report.json")->required()->check(CLI::ExistingFile);
  emit->add_option("--out", common.out, "Target directory (default: next to the report)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : skewflow::builtin_names()) {
        const auto fx = skewflow::builtin(name);
        std::cout << name << "  dim " << fx.system.dim() << "  " << fx.descriptor.expected << "  ["
                  << fx.descriptor.source << "]\n";
      }
      return 0;
    }
    if (*emit) {
      const auto report = sc::read_report(report_path);
      const std::filesystem::path dir =
          common.out.empty() ? std::filesystem::path(report_path).parent_path() : std::filesystem::path(common.out);
      for (const auto& p : sc::emit_csv(report, dir.empty() ? "." : dir)) std::cout << "wrote " << p.string() << '\n';
      return 0;
    }
    if (*analyze) return finish(load(job_path, common), common);

    const bool from_job = !job_path.empty();
    if (!from_job && builtin_name.empty()) {
      std::cerr << "error: give a job file or --builtin\n";
      return 2;
    }
    sc::AnalysisJob job = from_job ? load(job_path, common) : builtin_job(builtin_name, params, n_max);
    apply(job, common);
    sc::AnalysisSpec spec;
    if (*axioms) {
      spec.kind = "axioms";
      spec.triples = triples;
      spec.integer_times = integer_times;
      if (t_max >= 0.0) spec.params["t_max"] = t_max;
    } else {
      spec.kind = "estimate";
      spec.direction = direction == "unstable" ? "instable" : direction;
      spec.params = {{"lo", lo}, {"hi", hi}, {"tolerance", search_tol}};
    }
    job.analyses = {spec};
    // Re-validate through the schema so flag values meet the same preconditions as job files.
    job = sc::parse_job_text(sc::echo_job(job)).job;
    return finish(job, common);
  } catch (const sc::JobError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const skewflow::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
