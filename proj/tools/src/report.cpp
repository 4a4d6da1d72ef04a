#include "skewflow/cli/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "skewflow/axioms.hpp"
#include "skewflow/envelope.hpp"
#include "skewflow/estimate.hpp"
#include "skewflow/splitting.hpp"
#include "skewflow/stability.hpp"

namespace skewflow::cli {

const char* const kToolVersion = "0.3.0";

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

Json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double as_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  return std::stod(s);
}

Json num_array(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(num(x));
  return out;
}

Json vec(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

Json witness_json(const Witness& w) {
  Json idx = Json::object();
  for (const auto& [name, value] : w.indices) idx[name] = value;
  return Json{{"indices", idx},
              {"state", num(w.state.value)},
              {"vector", vec(w.vector)},
              {"measured", num(w.measured)},
              {"reason", w.reason}};
}

Json trend_json(const TrendSummary& t) {
  return Json{{"bounded", t.bounded},
              {"worst_anchor", t.worst_anchor},
              {"worst_growth", num(t.worst_growth)},
              {"tested_anchors", t.tested_anchors},
              {"factor", num(t.factor)}};
}

Json certificate_json(const Certificate& c) {
  Json out{{"criterion", c.criterion},
           {"verdict", to_string(c.verdict)},
           {"exponent", num(c.exponent)},
           {"sup_coefficient", num(c.sup_coefficient())},
           {"degenerate", c.degenerate},
           {"trend", trend_json(c.trend)}};
  out["witness"] = c.witness ? witness_json(*c.witness) : Json(nullptr);
  out["note"] = c.note;
  out["coefficients"] = num_array(c.coefficients);
  out["max_ratio"] = num_array(c.max_ratio);
  return out;
}

Json compatibility_json(const CompatibilityReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    conds.push_back(Json{{"condition", c.name}, {"residual", num(c.residual)}, {"passed", c.passed},
                         {"binding", c.binding}});
  }
  return Json{{"passed", r.passed}, {"conditions", conds}};
}

Json split_json(const SplitCertificate& s) {
  Json parts = Json::array();
  for (const auto& p : s.parts) parts.push_back(certificate_json(p));
  Json out{{"criterion", s.criterion}, {"verdict", to_string(s.verdict)}, {"exponents", num_array(s.exponents)}};
  double sup = 0.0;
  for (double a : s.coefficients)
    if (!std::isnan(a)) sup = std::max(sup, a);
  out["sup_coefficient"] = num(sup);
  out["witness"] = s.witness() ? witness_json(*s.witness()) : Json(nullptr);
  out["cross_check_agrees"] = s.cross_check_agrees ? Json(*s.cross_check_agrees) : Json(nullptr);
  out["note"] = s.note;
  out["coefficients"] = num_array(s.coefficients);
  out["compatibility"] = compatibility_json(s.compatibility);
  out["parts"] = parts;
  return out;
}

Json envelope_json(const EnvelopeBound& e) {
  Json out{{"direction", to_string(e.direction)},
           {"found", e.found},
           {"max_M", num(e.max_M())},
           {"max_omega", num(e.max_omega())}};
  out["witness"] = e.witness ? witness_json(*e.witness) : Json(nullptr);
  out["M"] = num_array(e.M);
  out["omega"] = num_array(e.omega);
  return out;
}

Json gauge_json(const GaugeSpec& g) {
  const MonotoneGauge R = g.make();
  return Json{{"kind", g.kind}, {"describe", R.describe()}};
}

struct Context {
  const AnalysisJob& job;
  const Fixture& fixture;
  const Horizon& horizon;
  std::vector<StatePoint> states;
};

ProjectorFamily family_for(const AnalysisSpec& a, const Context& ctx) {
  const ProjectorSpec& p = a.projectors;
  if (p.source == "coordinate") return ProjectorFamily::coordinate(p.blocks);
  if (p.source == "matrices") {
    std::vector<ProjectorMap> maps;
    for (const auto& m : p.matrices) maps.push_back(constant_projector(m));
    switch (maps.size()) {
      case 1: return ProjectorFamily::single(maps[0]);
      case 2: return ProjectorFamily::pair(maps[0], maps[1]);
      case 3: return ProjectorFamily::triple(maps[0], maps[1], maps[2]);
      default: return ProjectorFamily::quad(maps[0], maps[1], maps[2], maps[3]);
    }
  }
  if (!ctx.fixture.family) throw InputError("system '" + ctx.fixture.system.name() + "' has no projector family");
  return *ctx.fixture.family;
}

ProjectorFamily family_of_kind(const AnalysisSpec& a, const Context& ctx, FamilyKind want) {
  ProjectorFamily f = family_for(a, ctx);
  if (want == FamilyKind::quad && f.kind() == FamilyKind::triple) return four_from_three(f, ctx.states);
  if (f.kind() != want) {
    throw InputError(a.kind + " needs a " + to_string(want) + " of projectors, got a " + to_string(f.kind()));
  }
  return f;
}

double param(const AnalysisSpec& a, const char* key, double fallback) {
  const auto it = a.params.find(key);
  return it == a.params.end() ? fallback : it->second;
}

Json run_axioms(const AnalysisSpec& a, const Context& ctx) {
  const SkewEvolutionSystem& sys = ctx.fixture.system;
  const bool integer = a.integer_times || sys.domain() == TimeDomain::integer;
  const double t_max = param(a, "t_max", static_cast<double>(ctx.horizon.n_max));
  const auto grid = random_triples(a.triples, t_max, ctx.job.seed, integer);
  const AxiomReport r = verify_axioms(sys, grid, ctx.states, ctx.job.axiom_tolerance);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"t", num(row.times.t)},
                        {"s", num(row.times.s)},
                        {"t0", num(row.times.t0)},
                        {"x", num(row.state.value)},
                        {"residual", num(row.cocycle_residual)},
                        {"semiflow_residual", num(row.semiflow_residual)}});
  }
  return Json{{"verdict", r.passed ? "passes" : "fails"},
              {"tolerance", num(r.tolerance)},
              {"t_max", num(t_max)},
              {"integer_times", integer},
              {"max_cocycle_residual", num(r.max_cocycle_residual)},
              {"max_semiflow_residual", num(r.max_semiflow_residual)},
              {"max_identity_residual", num(r.max_identity_residual)},
              {"rows", rows}};
}

Json run_envelope(const AnalysisSpec& a, const Context& ctx) {
  const SkewEvolutionSystem& sys = ctx.fixture.system;
  const bool growth = a.kind == "growth";
  EnvelopeBound e;
  Json out;
  if (a.member > 0) {
    const ProjectorFamily f = family_for(a, ctx);
    if (static_cast<std::size_t>(a.member) > f.size()) {
      throw InputError("member " + std::to_string(a.member) + " exceeds the family size " + std::to_string(f.size()));
    }
    const ProjectorMap& p = f[static_cast<std::size_t>(a.member - 1)];
    e = growth ? fit_growth(sys, ctx.horizon, p) : fit_decay(sys, ctx.horizon, p);
    out["member"] = f.label(static_cast<std::size_t>(a.member - 1));
  } else {
    e = growth ? fit_growth(sys, ctx.horizon) : fit_decay(sys, ctx.horizon);
  }
  Json body = envelope_json(e);
  body["verdict"] = e.found ? "found" : "not found";
  if (out.contains("member")) body["member"] = out["member"];
  return body;
}

Json run_certificate(const AnalysisSpec& a, const Context& ctx) {
  const SkewEvolutionSystem& sys = ctx.fixture.system;
  const auto& k = a.kind;
  Certificate c;
  Json extra = Json::object();
  if (k == "es") {
    c = es_certificate(sys, a.params.at("mu"), ctx.horizon);
  } else if (k == "eis") {
    c = eis_certificate(sys, a.params.at("mu"), ctx.horizon);
  } else if (k == "datko") {
    c = datko_criterion(sys, a.gauge.make(), a.params.at("rho"), ctx.horizon);
    extra["gauge"] = gauge_json(a.gauge);
  } else if (k == "adjoint") {
    c = adjoint_criterion(sys, a.gauge.make(), a.params.at("gamma"), ctx.horizon);
    extra["gauge"] = gauge_json(a.gauge);
  } else {
    c = instability_criterion(sys, a.gauge.make(), a.params.at("rho"), ctx.horizon);
    extra["gauge"] = gauge_json(a.gauge);
  }
  Json out = certificate_json(c);
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json run_split(const AnalysisSpec& a, const Context& ctx) {
  const SkewEvolutionSystem& sys = ctx.fixture.system;
  const auto& k = a.kind;
  auto p = [&](const char* key) { return a.params.at(key); };
  if (k == "dichotomy") {
    return split_json(dichotomy_certificate(sys, family_of_kind(a, ctx, FamilyKind::pair), p("nu1"), p("nu2"),
                                            ctx.horizon));
  }
  if (k == "dichotomy_sum") {
    Json out = split_json(dichotomy_sum_criterion(sys, family_of_kind(a, ctx, FamilyKind::pair), p("rho1"),
                                                  p("rho2"), ctx.horizon, a.gauge.make()));
    out["gauge"] = gauge_json(a.gauge);
    return out;
  }
  if (k == "trichotomy") {
    return split_json(trichotomy_certificate(sys, family_of_kind(a, ctx, FamilyKind::triple), p("nu1"), p("nu2"),
                                             p("nu3"), p("nu4"), ctx.horizon));
  }
  if (k == "trichotomy_sum") {
    return split_json(trichotomy_sum_criterion(sys, family_of_kind(a, ctx, FamilyKind::triple), p("rho1"),
                                               p("rho2"), p("rho3"), p("rho4"), ctx.horizon));
  }
  const bool cross = param(a, "cross_check", 1.0) != 0.0;
  return split_json(four_projector_certificate(sys, family_of_kind(a, ctx, FamilyKind::quad), p("mu"), p("nu"),
                                               ctx.horizon, cross));
}

Json run_estimate(const AnalysisSpec& a, const Context& ctx) {
  ExponentSearch search;
  search.lo = param(a, "lo", search.lo);
  search.hi = param(a, "hi", search.hi);
  search.tolerance = param(a, "tolerance", search.tolerance);
  const ExponentEstimate e = estimate_exponent(ctx.fixture.system, parse_direction(a.direction), ctx.horizon, search);
  Json probes = Json::array();
  for (const auto& [x, v] : e.probes) probes.push_back(Json{{"parameter", num(x)}, {"verdict", to_string(v)}});
  return Json{{"verdict", e.found ? "found" : "not found"},
              {"direction", to_string(e.direction)},
              {"value", num(e.value)},
              {"found", e.found},
              {"saturated", e.saturated},
              {"search", Json{{"lo", num(search.lo)}, {"hi", num(search.hi)}, {"tolerance", num(search.tolerance)}}},
              {"note", e.note},
              {"probes", probes}};
}

Json run_characteristics(const AnalysisSpec& a, const Context& ctx) {
  const double t_max = param(a, "t_max", 10.0);
  const auto grid = random_triples(a.triples, t_max, ctx.job.seed, false);
  const auto checks = check_ex_nuet_characteristics(ctx.job.system.params, grid, ctx.states);
  Json rows = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.validates;
    rows.push_back(Json{{"name", c.name}, {"inequality", c.inequality}, {"min_slack", num(c.min_slack)},
                        {"validates", c.validates}});
  }
  return Json{{"verdict", all ? "validates" : "does not validate as written"}, {"t_max", num(t_max)},
              {"checks", rows}};
}

Json run_analysis(const AnalysisSpec& a, const Context& ctx) {
  const auto& k = a.kind;
  if (k == "axioms") return run_axioms(a, ctx);
  if (k == "growth" || k == "decay") return run_envelope(a, ctx);
  if (k == "es" || k == "eis" || k == "datko" || k == "adjoint" || k == "instability") return run_certificate(a, ctx);
  if (k == "estimate") return run_estimate(a, ctx);
  if (k == "characteristics") return run_characteristics(a, ctx);
  return run_split(a, ctx);
}

Json params_json(const AnalysisSpec& a) {
  Json out = Json::object();
  for (const auto& [k, v] : a.params) out[k] = num(v);
  return out;
}

Fixture build_fixture(const AnalysisJob& job) {
  const SystemSpec& s = job.system;
  if (s.source == "builtin") {
    Fixture fx = builtin(s.builtin, s.params);
    if (job.norm) fx.system = fx.system.with_norm(*job.norm);
    return fx;
  }
  if (s.source == "steps") {
    Fixture fx{from_steps(job.name, s.steps, job.norm.value_or(NormKind::l1), s.periodic), {}, std::nullopt};
    fx.descriptor.name = job.name;
    fx.descriptor.source = "inline one-step matrices";
    return fx;
  }
  GeneratorSpec g = s.generator;
  if (job.norm) g.norm = *job.norm;
  return random_block_cocycle(g).fixture;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const InputError*>(&e)) return "input";
  if (dynamic_cast<const InconsistencyError*>(&e)) return "inconsistency";
  return "internal";
}

}  // namespace

Json run_job(const AnalysisJob& job) {
  const Fixture fixture = build_fixture(job);
  HorizonSpec hs;
  hs.n_max = job.horizon.n_max;
  hs.states.clear();
  if (!job.horizon.states.empty()) {
    for (double x : job.horizon.states) hs.states.push_back({x});
  } else {
    for (int i = 0; i < job.horizon.state_count; ++i) hs.states.push_back({static_cast<double>(i)});
  }
  hs.vectors = job.horizon.vectors;
  hs.random_vectors = job.horizon.random_vectors;
  hs.seed = job.seed;
  hs.trend_factor = job.horizon.trend_factor;
  hs.propagation = job.horizon.propagation;
  const Horizon horizon = make_horizon(fixture.system, hs);
  const Context ctx{job, fixture, horizon, hs.states};

  Json report = Json::object();
  report["provenance"] = Json{{"tool", "skewflow"}, {"version", kToolVersion}, {"seed", job.seed},
                              {"job", echo_job(job)}};
  const FixtureDescriptor& d = fixture.descriptor;
  Json descriptor{{"name", d.name}, {"expected", d.expected}, {"source", d.source}};
  descriptor["parameters"] = Json(d.parameters);
  Json constants = Json::object();
  for (const auto& [k, v] : d.constants) constants[k] = num(v);
  descriptor["constants"] = constants;
  report["system"] = Json{{"name", fixture.system.name()},
                          {"dim", fixture.system.dim()},
                          {"norm", to_string(fixture.system.norm_kind())},
                          {"domain", fixture.system.domain() == TimeDomain::integer ? "integer" : "continuous"},
                          {"descriptor", descriptor}};
  Json states = Json::array();
  for (const auto& x : horizon.states) states.push_back(num(x.value));
  Json vectors = Json::array();
  for (const auto& v : horizon.vectors) vectors.push_back(vec(v));
  report["horizon"] = Json{{"n_max", horizon.n_max},
                           {"trend_factor", num(horizon.trend_factor)},
                           {"propagation", horizon.propagation == Propagation::stepped ? "stepped" : "direct"},
                           {"states", states},
                           {"vectors", vectors}};

  Json analyses = Json::array();
  int holds = 0;
  int fails = 0;
  int errors = 0;
  for (std::size_t i = 0; i < job.analyses.size(); ++i) {
    const AnalysisSpec& a = job.analyses[i];
    Json block{{"index", i + 1}, {"kind", a.kind}, {"params", params_json(a)}};
    try {
      Json result = run_analysis(a, ctx);
      const std::string verdict = result.value("verdict", "");
      block["status"] = "ok";
      block["verdict"] = verdict;
      block["result"] = std::move(result);
      if (verdict == "holds" || verdict == "passes" || verdict == "found" || verdict == "validates") {
        ++holds;
      } else {
        ++fails;
      }
    } catch (const std::exception& e) {
      block["status"] = "error";
      block["verdict"] = "error";
      block["error"] = Json{{"type", error_type(e)}, {"message", e.what()}};
      ++errors;
    }
    analyses.push_back(std::move(block));
  }
  report["analyses"] = std::move(analyses);
  report["summary"] = Json{{"analyses", job.analyses.size()}, {"positive", holds}, {"negative", fails},
                           {"errors", errors}};
  report["timestamp"] = utc_timestamp();
  return report;
}

namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    out_ << header << '\n';
  }
  ~CsvFile() = default;

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::string line;
    ((line += (line.empty() ? "" : ",") + cell(cells)), ...);
    out_ << line << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("cannot write '" + path_.string() + "'");
  }

 private:
  static std::string cell(const Json& j) {
    if (j.is_string()) return quote(j.get<std::string>());
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) return format_number(j.get<double>());
    if (j.is_null()) return "";
    return quote(j.dump());
  }
  static std::string cell(const std::string& s) { return quote(s); }
  static std::string cell(const char* s) { return quote(s); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

std::string file_stem(const Json& block) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", block.at("index").get<int>());
  return std::string(buf) + "_" + block.at("kind").get<std::string>();
}

std::string sanitize(const std::string& criterion) {
  std::string out;
  for (char c : criterion) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += c;
    } else if (c == '\'') {
      out += 'p';
    } else {
      out += '_';
    }
  }
  return out;
}

void certificate_csv(const std::filesystem::path& path, const Json& c, std::vector<std::filesystem::path>& out) {
  CsvFile f(path, "n,coefficient,max_ratio,verdict");
  const Json& coef = c.at("coefficients");
  const Json& ratio = c.at("max_ratio");
  const std::string verdict = c.at("verdict").get<std::string>();
  for (std::size_t n = 0; n < coef.size(); ++n) {
    f.row(n, as_double(coef[n]), as_double(ratio[n]), verdict);
  }
  f.close();
  out.push_back(path);
}

}  // namespace

std::vector<std::filesystem::path> emit_csv(const Json& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const Json& block : report.at("analyses")) {
    if (block.at("status") != "ok") continue;
    const std::string kind = block.at("kind").get<std::string>();
    const Json& r = block.at("result");
    const auto base = dir / file_stem(block);
    if (kind == "axioms") {
      CsvFile f(base.string() + ".csv", "t,s,t0,x,residual,semiflow_residual");
      for (const Json& row : r.at("rows")) {
        f.row(as_double(row.at("t")), as_double(row.at("s")), as_double(row.at("t0")), as_double(row.at("x")),
              as_double(row.at("residual")), as_double(row.at("semiflow_residual")));
      }
      f.close();
      written.push_back(base.string() + ".csv");
    } else if (kind == "growth" || kind == "decay") {
      CsvFile f(base.string() + ".csv", "s,M,omega");
      const Json& M = r.at("M");
      const Json& omega = r.at("omega");
      for (std::size_t s = 0; s < M.size(); ++s) f.row(s, as_double(M[s]), as_double(omega[s]));
      f.close();
      written.push_back(base.string() + ".csv");
    } else if (kind == "estimate") {
      CsvFile f(base.string() + ".csv", "parameter,verdict");
      for (const Json& p : r.at("probes")) f.row(as_double(p.at("parameter")), p.at("verdict").get<std::string>());
      f.close();
      written.push_back(base.string() + ".csv");
    } else if (kind == "characteristics") {
      CsvFile f(base.string() + ".csv", "name,min_slack,validates");
      for (const Json& c : r.at("checks")) {
        f.row(c.at("name").get<std::string>(), as_double(c.at("min_slack")), c.at("validates").get<bool>());
      }
      f.close();
      written.push_back(base.string() + ".csv");
    } else if (r.contains("parts")) {
      {
        CsvFile f(base.string() + ".csv", "n,coefficient,max_ratio,verdict");
        const Json& coef = r.at("coefficients");
        const std::string verdict = r.at("verdict").get<std::string>();
        for (std::size_t n = 0; n < coef.size(); ++n) {
          double ratio = std::nan("");
          for (const Json& part : r.at("parts")) {
            const Json& mr = part.at("max_ratio");
            if (n < mr.size()) {
              const double x = as_double(mr[n]);
              if (!std::isnan(x) && (std::isnan(ratio) || x > ratio)) ratio = x;
            }
          }
          f.row(n, as_double(coef[n]), ratio, verdict);
        }
        f.close();
        written.push_back(base.string() + ".csv");
      }
      for (const Json& part : r.at("parts")) {
        certificate_csv(base.string() + "_" + sanitize(part.at("criterion").get<std::string>()) + ".csv", part,
                        written);
      }
      CsvFile f(base.string() + "_compatibility.csv", "condition,residual,passed");
      for (const Json& c : r.at("compatibility").at("conditions")) {
        f.row(c.at("condition").get<std::string>(), as_double(c.at("residual")), c.at("passed").get<bool>());
      }
      f.close();
      written.push_back(base.string() + "_compatibility.csv");
    } else {
      certificate_csv(base.string() + ".csv", r, written);
    }
  }
  return written;
}

std::vector<std::filesystem::path> write_report(const Json& report, const std::filesystem::path& dir, bool csv) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  const auto path = dir / "report.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << report.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  std::vector<std::filesystem::path> written{path};
  if (csv) {
    const auto more = emit_csv(report, dir);
    written.insert(written.end(), more.begin(), more.end());
  }
  return written;
}

Json read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("'" + path.string() + "' is not a report: " + e.what());
  }
}

std::string summarize(const Json& report) {
  std::ostringstream out;
  out << report.at("system").at("name").get<std::string>() << " (dim " << report.at("system").at("dim").get<int>()
      << ", " << report.at("system").at("norm").get<std::string>() << ")\n";
  for (const Json& block : report.at("analyses")) {
    char idx[8];
    std::snprintf(idx, sizeof idx, "%2d", block.at("index").get<int>());
    out << idx << "  " << block.at("kind").get<std::string>() << ": ";
    if (block.at("status") == "error") {
      out << "error (" << block.at("error").at("type").get<std::string>()
          << "): " << block.at("error").at("message").get<std::string>();
    } else {
      const Json& r = block.at("result");
      out << block.at("verdict").get<std::string>();
      if (r.contains("sup_coefficient")) out << ", sup coefficient " << format_number(as_double(r.at("sup_coefficient")));
      if (r.contains("value")) out << ", value " << format_number(as_double(r.at("value")));
      if (r.contains("max_omega")) out << ", max omega " << format_number(as_double(r.at("max_omega")));
      if (r.contains("max_cocycle_residual")) {
        out << ", max residual " << format_number(as_double(r.at("max_cocycle_residual")));
      }
      const Json* w = r.contains("witness") && !r.at("witness").is_null() ? &r.at("witness") : nullptr;
      if (w) out << "\n      witness: " << w->at("reason").get<std::string>();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace skewflow::cli
