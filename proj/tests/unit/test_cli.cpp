#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "skewflow/cli/job.hpp"
#include "skewflow/cli/report.hpp"

namespace skewflow::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("skewflow_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string error_of(const std::string& text, const ParseOptions& options = {}) {
  try {
    parse_job_text(text, options);
  } catch (const JobError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseJob, DichotomyJobIsValid) {
  const auto r = parse_job_text(R"(
system:
  builtin: ex_nued
analyses:
  - kind: dichotomy
    nu1: -1
    nu2: 1
)");
  ASSERT_EQ(r.job.analyses.size(), 1u);
  EXPECT_EQ(r.job.analyses[0].kind, "dichotomy");
  EXPECT_EQ(r.job.analyses[0].params.at("nu1"), -1.0);
  EXPECT_EQ(r.job.analyses[0].projectors.source, "fixture");
  EXPECT_EQ(r.job.system.builtin, "ex_nued");
}

TEST(ParseJob, PreconditionsRejectedWithLines) {
  const std::string msg = error_of("system:\n  builtin: ex_nues1\nanalyses:\n  - kind: datko\n    rho: 0\n");
  EXPECT_NE(msg.find("ρ must be > 0"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\nanalyses:\n  - kind: es\n    mu: -1\n").find("μ must be > 0"),
            std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\nanalyses:\n  - kind: instability\n    rho: 1\n")
                .find("ρ must be < 0"),
            std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nuet\nanalyses:\n  - kind: trichotomy\n    nu1: 0\n    nu2: -1\n"
                     "    nu3: 0\n    nu4: 1\n")
                .find("nu1 <= nu2 <= 0"),
            std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nuet\nanalyses:\n  - kind: four_projector\n    mu: 1\n    nu: 2\n")
                .find("mu > nu > 0"),
            std::string::npos);
}

TEST(ParseJob, PositiveRateMapsToNegativeRho) {
  const auto r = parse_job_text("system:\n  builtin: ex_nueis1\nanalyses:\n  - kind: instability\n    rate: 0.5\n");
  EXPECT_EQ(r.job.analyses[0].params.at("rho"), -0.5);
  EXPECT_EQ(r.job.analyses[0].params.count("rate"), 0u);
}

TEST(ParseJob, InlineStepsBuildScalarSystem) {
  const auto r = parse_job_text(R"(
system:
  steps:
    - [[0.5]]
    - [[0.5]]
horizon:
  n_max: 2
analyses:
  - kind: es
    mu: 0.5
)");
  ASSERT_EQ(r.job.system.steps.size(), 2u);
  const auto sys = from_steps("x", r.job.system.steps);
  EXPECT_DOUBLE_EQ(sys.evaluate(2, 0, {0}).matrix()(0, 0), 0.25);
  EXPECT_NE(error_of("system:\n  steps:\n    - [[0.5]]\nhorizon:\n  n_max: 5\nanalyses:\n  - kind: es\n    mu: 1\n")
                .find("exceeds"),
            std::string::npos);
}

TEST(ParseJob, StrictAndLenientUnknownKeys) {
  const std::string text = "system:\n  builtin: ex_nues1\nanalyses:\n  - kind: es\n    mu: 1\n    mu2: 3\n";
  const std::string msg = error_of(text);
  EXPECT_NE(msg.find("line 6"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown key 'mu2'"), std::string::npos) << msg;
  ParseOptions lenient;
  lenient.strict = false;
  const auto r = parse_job_text(text, lenient);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("mu2"), std::string::npos);
}

TEST(ParseJob, StructuralErrors) {
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\nanalyses: []\n").find("analyses must be a nonempty list"),
            std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\n").find("analyses"), std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\n  steps: [[[1]]]\nanalyses:\n  - kind: es\n    mu: 1\n")
                .find("exactly one of"),
            std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: nope\nanalyses:\n  - kind: es\n    mu: 1\n").find("unknown builtin"),
            std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\nanalyses:\n  - kind: magic\n").find("unknown analysis kind"),
            std::string::npos);
  EXPECT_NE(error_of("system: [1, 2\n").find("line"), std::string::npos);
  EXPECT_NE(error_of("system:\n  builtin: ex_nues1\nanalyses:\n  - kind: es\n    mu: abc\n").find("must be a number"),
            std::string::npos);
}

TEST(ParseJob, EchoIsIdempotent) {
  for (const auto& entry : fs::directory_iterator(SKEWFLOW_JOBS_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    const auto job = parse_job_file(entry.path().string()).job;
    const std::string once = echo_job(job);
    const std::string twice = echo_job(parse_job_text(once).job);
    EXPECT_EQ(once, twice) << entry.path();
  }
}

AnalysisJob small_job(const std::string& analyses, const std::string& system = "builtin: ex_nues1") {
  return parse_job_text("system:\n  " + system + "\nhorizon:\n  n_max: 50\n  states: [0]\nanalyses:\n" + analyses)
      .job;
}

TEST(RunJob, EstimateExNues1) {
  const auto report = run_job(small_job("  - kind: estimate\n    direction: stable\n"));
  const auto& a = report.at("analyses").at(0);
  EXPECT_EQ(a.at("status"), "ok");
  EXPECT_NEAR(a.at("result").at("value").get<double>(), 3.0, 1e-3);
}

TEST(RunJob, DichotomyEchoesStatedConstants) {
  const auto report = run_job(small_job("  - kind: dichotomy\n    nu1: -1\n    nu2: 1\n", "builtin: ex_nued"));
  EXPECT_EQ(report.at("analyses").at(0).at("verdict"), "holds");
  EXPECT_EQ(report.at("system").at("descriptor").at("constants").at("nu").get<double>(), 1.0);
  EXPECT_EQ(report.at("provenance").at("tool"), "skewflow");
  EXPECT_EQ(report.at("provenance").at("version"), kToolVersion);
  EXPECT_TRUE(report.contains("timestamp"));
}

TEST(RunJob, FailingAnalysisDoesNotAbortOthers) {
  const auto job = small_job(R"(  - kind: dichotomy
    nu1: -1
    nu2: 1
    projectors:
      matrices:
        - [[1, 1], [0, 0]]
        - [[0, -1], [0, 1]]
  - kind: es
    mu: 0.5
)",
                             "builtin: ex_nued");
  const auto report = run_job(job);
  EXPECT_EQ(report.at("analyses").at(0).at("status"), "error");
  EXPECT_EQ(report.at("analyses").at(0).at("error").at("type"), "input");
  EXPECT_EQ(report.at("analyses").at(1).at("status"), "ok");
  EXPECT_EQ(report.at("summary").at("errors"), 1);
}

TEST(RunJob, VerdictsAreRederivable) {
  // es on ex_nues1 with mu = 2: the reported a_n must reproduce e^{mu (m - n)} |Phi(m, n)| <= a_n
  const auto report = run_job(small_job("  - kind: es\n    mu: 2\n"));
  const auto& r = report.at("analyses").at(0).at("result");
  const auto& coef = r.at("coefficients");
  for (int n = 0; n <= 50; ++n) {
    for (int m = n; m <= 50; ++m) {
      EXPECT_LE(std::exp(2.0 * (m - n)) * std::exp(-3.0 * (m - n)), coef.at(static_cast<std::size_t>(n)).get<double>() * (1 + 1e-12));
    }
  }
}

TEST(Emit, EsCsvForExNues1) {
  const auto dir = scratch("es");
  const auto report = run_job(small_job("  - kind: es\n    mu: 3\n  - kind: axioms\n"));
  write_report(report, dir, true);
  const auto es = read_csv(dir / "01_es.csv");
  ASSERT_EQ(es.front(), (std::vector<std::string>{"n", "coefficient", "max_ratio", "verdict"}));
  ASSERT_EQ(es.size(), 52u);
  for (std::size_t i = 1; i < es.size(); ++i) {
    EXPECT_NEAR(std::stod(es[i][1]), 1.0, 1e-12);
    EXPECT_EQ(es[i][3], "holds");
  }
  const auto ax = read_csv(dir / "02_axioms.csv");
  ASSERT_EQ(ax.front()[4], "residual");
  EXPECT_EQ(ax.size(), 51u);
  for (std::size_t i = 1; i < ax.size(); ++i) EXPECT_LE(std::stod(ax[i][4]), 1e-12);
  EXPECT_EQ(slurp(dir / "01_es.csv").find('\r'), std::string::npos);
}

TEST(Emit, ByteIdenticalAcrossRuns) {
  const auto job = parse_job_file(std::string(SKEWFLOW_JOBS_DIR) + "/ex_nued.yaml").job;
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  auto ra = run_job(job);
  auto rb = run_job(job);
  ra.erase("timestamp");
  rb.erase("timestamp");
  EXPECT_EQ(ra.dump(), rb.dump());
  const auto fa = write_report(ra, a, true);
  write_report(rb, b, true);
  for (const auto& p : fa) EXPECT_EQ(slurp(p), slurp(b / p.filename())) << p;
  // CSV regenerated from the stored report is identical too
  const auto c = scratch("det_c");
  emit_csv(read_report(a / "report.json"), c);
  for (const auto& p : fa) {
    if (p.extension() == ".csv") {
      EXPECT_EQ(slurp(p), slurp(c / p.filename())) << p;
    }
  }
}

TEST(Emit, UnwritableTargetNamesPath) {
  const auto dir = scratch("blocked");
  fs::create_directories(dir.parent_path());
  std::ofstream(dir) << "a file, not a directory";
  const auto report = run_job(small_job("  - kind: es\n    mu: 1\n"));
  try {
    write_report(report, dir / "sub", true);
    FAIL() << "expected an I/O error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(dir.string()), std::string::npos) << e.what();
  }
  fs::remove(dir);
}

TEST(Emit, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_number(0.1)), 0.1);
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-HUGE_VAL), "-inf");
}

}  // namespace
}  // namespace skewflow::cli
