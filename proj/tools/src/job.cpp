#include "skewflow/cli/job.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "skewflow/cli/report.hpp"

namespace skewflow::cli {

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

struct KindSchema {
  std::vector<std::string> numbers;  // numeric keys accepted
  std::vector<std::string> extra;    // non-numeric keys accepted
};

const std::map<std::string, KindSchema>& schemas() {
  static const std::map<std::string, KindSchema> table{
      {"axioms", {{"t_max"}, {"triples", "integer_times"}}},
      {"growth", {{}, {"member"}}},
      {"decay", {{}, {"member"}}},
      {"es", {{"mu"}, {}}},
      {"eis", {{"mu"}, {}}},
      {"datko", {{"rho"}, {"gauge"}}},
      {"adjoint", {{"gamma"}, {"gauge"}}},
      {"instability", {{"rho", "rate"}, {"gauge"}}},
      {"dichotomy", {{"nu1", "nu2"}, {"projectors"}}},
      {"dichotomy_sum", {{"rho1", "rho2", "rate2"}, {"projectors", "gauge"}}},
      {"trichotomy", {{"nu1", "nu2", "nu3", "nu4"}, {"projectors"}}},
      {"trichotomy_sum", {{"rho1", "rho2", "rho3", "rho4"}, {"projectors"}}},
      {"four_projector", {{"mu", "nu"}, {"projectors", "cross_check"}}},
      {"estimate", {{"lo", "hi", "tolerance"}, {"direction"}}},
      {"characteristics", {{"t_max"}, {"triples"}}},
  };
  return table;
}

class Reader {
 public:
  Reader(bool strict, std::vector<std::string>& errors, std::vector<std::string>& warnings)
      : strict_(strict), errors_(errors), warnings_(warnings) {}

  static int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

  void error(const YAML::Node& n, const std::string& msg) { errors_.push_back(at(n) + msg); }
  void error_line(int line, const std::string& msg) {
    errors_.push_back((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + msg);
  }

  void check_keys(const YAML::Node& map, const std::vector<std::string>& allowed, const std::string& where) {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
      const std::string msg = where + ": unknown key '" + key + "' (allowed: " + join(allowed, ", ") + ")";
      if (strict_) {
        error(kv.first, msg);
      } else {
        warnings_.push_back(at(kv.first) + msg);
      }
    }
  }

  bool is_map(const YAML::Node& n, const std::string& what) {
    if (n.IsMap()) return true;
    error(n, what + " must be a mapping");
    return false;
  }

  std::optional<double> number(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) {
      error(n, what + " must be a number");
      return std::nullopt;
    }
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) {
        error(n, what + " must be finite");
        return std::nullopt;
      }
      return v;
    } catch (const YAML::Exception&) {
      error(n, what + " must be a number, got '" + n.Scalar() + "'");
      return std::nullopt;
    }
  }

  std::optional<long long> integer(const YAML::Node& n, const std::string& what) {
    const auto v = number(n, what);
    if (!v) return std::nullopt;
    if (std::floor(*v) != *v || std::abs(*v) > 9.0e15) {
      error(n, what + " must be an integer");
      return std::nullopt;
    }
    return static_cast<long long>(*v);
  }

  std::optional<bool> boolean(const YAML::Node& n, const std::string& what) {
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      error(n, what + " must be true or false");
      return std::nullopt;
    }
  }

  std::optional<std::string> text(const YAML::Node& n, const std::string& what) {
    if (!n.IsScalar()) {
      error(n, what + " must be a string");
      return std::nullopt;
    }
    return n.Scalar();
  }

  std::optional<Eigen::VectorXd> vector(const YAML::Node& n, const std::string& what) {
    if (!n.IsSequence() || n.size() == 0) {
      error(n, what + " must be a nonempty list of numbers");
      return std::nullopt;
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(n.size()));
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto x = number(n[i], what + "[" + std::to_string(i) + "]");
      if (!x) return std::nullopt;
      v(static_cast<Eigen::Index>(i)) = *x;
    }
    return v;
  }

  /// Row-major square matrix: a list of rows.
  std::optional<Eigen::MatrixXd> matrix(const YAML::Node& n, const std::string& what) {
    if (!n.IsSequence() || n.size() == 0) {
      error(n, what + " must be a nonempty list of rows");
      return std::nullopt;
    }
    const auto d = static_cast<Eigen::Index>(n.size());
    Eigen::MatrixXd m(d, d);
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto row = vector(n[i], what + " row " + std::to_string(i));
      if (!row) return std::nullopt;
      if (row->size() != d) {
        error(n[i], what + " must be square (" + std::to_string(d) + " entries per row)");
        return std::nullopt;
      }
      m.row(static_cast<Eigen::Index>(i)) = row->transpose();
    }
    return m;
  }

  std::vector<std::pair<double, double>> points(const YAML::Node& n, const std::string& what) {
    std::vector<std::pair<double, double>> out;
    if (!n.IsSequence()) {
      error(n, what + " must be a list of [t, value] pairs");
      return out;
    }
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto v = vector(n[i], what + "[" + std::to_string(i) + "]");
      if (!v) continue;
      if (v->size() != 2) {
        error(n[i], what + " entries must be [t, value] pairs");
        continue;
      }
      out.emplace_back((*v)(0), (*v)(1));
    }
    return out;
  }

 private:
  static std::string at(const YAML::Node& n) {
    const int line = line_of(n);
    return line > 0 ? "line " + std::to_string(line) + ": " : std::string();
  }

  bool strict_;
  std::vector<std::string>& errors_;
  std::vector<std::string>& warnings_;
};

void parse_gauge(Reader& r, const YAML::Node& n, GaugeSpec& g, const std::string& where) {
  if (n.IsScalar()) {
    const std::string s = n.Scalar();
    if (s == "identity") {
      g.kind = "identity";
    } else {
      r.error(n, where + ": gauge must be 'identity', {power: p} or {table: [[t, R], ...]}");
    }
    return;
  }
  if (!r.is_map(n, where + ".gauge")) return;
  r.check_keys(n, {"power", "table"}, where + ".gauge");
  if (n["power"] && n["table"]) {
    r.error(n, where + ": gauge takes either power or table");
  } else if (n["power"]) {
    g.kind = "power";
    if (auto p = r.number(n["power"], where + ".gauge.power")) g.p = *p;
  } else if (n["table"]) {
    g.kind = "table";
    g.table = r.points(n["table"], where + ".gauge.table");
  } else {
    r.error(n, where + ": gauge mapping needs power or table");
  }
  try {
    (void)g.make();
  } catch (const InputError& e) {
    r.error(n, where + ": " + e.what());
  }
}

void parse_projectors(Reader& r, const YAML::Node& n, ProjectorSpec& p, const std::string& where) {
  if (n.IsScalar()) {
    if (n.Scalar() == "fixture") {
      p.source = "fixture";
    } else {
      r.error(n, where + ": projectors must be 'fixture', {coordinate: [sizes]} or {matrices: [...]}");
    }
    return;
  }
  if (!r.is_map(n, where + ".projectors")) return;
  r.check_keys(n, {"coordinate", "matrices"}, where + ".projectors");
  if (n["coordinate"]) {
    p.source = "coordinate";
    const YAML::Node c = n["coordinate"];
    if (!c.IsSequence() || c.size() < 1 || c.size() > 3) {
      r.error(c, where + ": coordinate needs 1 to 3 block sizes");
      return;
    }
    for (std::size_t i = 0; i < c.size(); ++i)
      if (auto b = r.integer(c[i], where + ".coordinate")) p.blocks.push_back(static_cast<int>(*b));
  } else if (n["matrices"]) {
    p.source = "matrices";
    const YAML::Node m = n["matrices"];
    if (!m.IsSequence() || m.size() < 1 || m.size() > 4) {
      r.error(m, where + ": matrices needs 1 to 4 projector matrices");
      return;
    }
    for (std::size_t i = 0; i < m.size(); ++i)
      if (auto mat = r.matrix(m[i], where + ".matrices[" + std::to_string(i) + "]")) p.matrices.push_back(*mat);
  } else {
    r.error(n, where + ": projectors mapping needs coordinate or matrices");
  }
}

void check_analysis(Reader& r, const YAML::Node& node, AnalysisSpec& a, const std::string& where) {
  auto has = [&](const char* k) { return a.params.count(k) > 0; };
  auto need = [&](const char* k) {
    if (!has(k)) r.error(node, where + ": missing " + std::string(k));
    return has(k);
  };
  auto v = [&](const char* k) { return a.params.at(k); };
  auto at = [&](const char* k) { return node[k] ? node[k] : node; };
  const std::string& k = a.kind;
  if (k == "es" || k == "eis") {
    if (need("mu") && !(v("mu") > 0.0)) r.error(at("mu"), where + ": mu: μ must be > 0");
  } else if (k == "datko") {
    if (need("rho") && !(v("rho") > 0.0)) r.error(at("rho"), where + ": rho: ρ must be > 0");
  } else if (k == "adjoint") {
    if (need("gamma") && !(v("gamma") > 0.0)) r.error(at("gamma"), where + ": gamma: γ must be > 0");
  } else if (k == "instability") {
    if (has("rho") && has("rate")) {
      r.error(node, where + ": give either rho (< 0) or rate (> 0)");
    } else if (has("rate")) {
      if (!(v("rate") > 0.0)) r.error(at("rate"), where + ": rate must be > 0");
      a.params["rho"] = -v("rate");
      a.params.erase("rate");
    } else if (need("rho") && !(v("rho") < 0.0)) {
      r.error(at("rho"), where + ": rho: ρ must be < 0");
    }
    try {
      if (!a.gauge.make().strictly_increasing()) r.error(node, where + ": gauge must be strictly increasing");
    } catch (const InputError&) {
      // already reported by parse_gauge
    }
  } else if (k == "dichotomy") {
    if (need("nu1") && !(v("nu1") <= 0.0)) r.error(at("nu1"), where + ": nu1: ν₁ must be <= 0");
    if (need("nu2") && !(v("nu2") >= 0.0)) r.error(at("nu2"), where + ": nu2: ν₂ must be >= 0");
  } else if (k == "dichotomy_sum") {
    if (need("rho1") && !(v("rho1") > 0.0)) r.error(at("rho1"), where + ": rho1: ρ₁ must be > 0");
    if (has("rho2") && has("rate2")) {
      r.error(node, where + ": give either rho2 (< 0) or rate2 (> 0)");
    } else if (has("rate2")) {
      if (!(v("rate2") > 0.0)) r.error(at("rate2"), where + ": rate2 must be > 0");
      a.params["rho2"] = -v("rate2");
      a.params.erase("rate2");
    } else if (need("rho2") && !(v("rho2") < 0.0)) {
      r.error(at("rho2"), where + ": rho2: ρ₂ must be < 0");
    }
  } else if (k == "trichotomy") {
    const bool all = need("nu1") & need("nu2") & need("nu3") & need("nu4");
    if (all && !(v("nu1") <= v("nu2") && v("nu2") <= 0.0 && 0.0 <= v("nu3") && v("nu3") <= v("nu4"))) {
      r.error(node, where + ": exponents must satisfy nu1 <= nu2 <= 0 <= nu3 <= nu4");
    }
  } else if (k == "trichotomy_sum") {
    for (const char* key : {"rho1", "rho2", "rho3", "rho4"})
      if (need(key) && !(v(key) > 0.0)) r.error(at(key), where + ": " + key + " must be > 0");
  } else if (k == "four_projector") {
    const bool both = need("mu") & need("nu");
    if (both && !(v("nu") > 0.0 && v("mu") > v("nu"))) r.error(node, where + ": need mu > nu > 0");
  } else if (k == "estimate") {
    if (a.direction != "stable" && a.direction != "instable") {
      r.error(node, where + ": direction must be stable or instable");
    }
    const double lo = has("lo") ? v("lo") : 1e-3;
    const double hi = has("hi") ? v("hi") : 10.0;
    if (!(lo > 0.0 && hi > lo)) r.error(node, where + ": need 0 < lo < hi");
    if (has("tolerance") && !(v("tolerance") > 0.0)) r.error(at("tolerance"), where + ": tolerance must be > 0");
  } else if (k == "axioms" || k == "characteristics") {
    if (a.triples < 1) r.error(node, where + ": triples must be >= 1");
    if (has("t_max") && !(v("t_max") >= 0.0)) r.error(at("t_max"), where + ": t_max must be >= 0");
  } else if (k == "growth" || k == "decay") {
    if (a.member < 0) r.error(node, where + ": member must be >= 1");
  }
}

void parse_analysis(Reader& r, const YAML::Node& n, std::size_t index, AnalysisJob& job) {
  const std::string where = "analyses[" + std::to_string(index) + "]";
  if (!r.is_map(n, where)) return;
  if (!n["kind"]) {
    r.error(n, where + ": missing kind");
    return;
  }
  AnalysisSpec a;
  a.line = Reader::line_of(n);
  a.kind = n["kind"].IsScalar() ? n["kind"].Scalar() : "";
  const auto it = schemas().find(a.kind);
  if (it == schemas().end()) {
    r.error(n["kind"], where + ": unknown analysis kind '" + a.kind + "' (known: " + join(analysis_kinds(), ", ") + ")");
    return;
  }
  const std::string w = where + " (" + a.kind + ")";
  std::vector<std::string> allowed{"kind"};
  allowed.insert(allowed.end(), it->second.numbers.begin(), it->second.numbers.end());
  allowed.insert(allowed.end(), it->second.extra.begin(), it->second.extra.end());
  r.check_keys(n, allowed, w);
  for (const auto& key : it->second.numbers)
    if (n[key])
      if (auto x = r.number(n[key], w + "." + key)) a.params[key] = *x;
  if (n["gauge"]) parse_gauge(r, n["gauge"], a.gauge, w);
  if (n["projectors"]) parse_projectors(r, n["projectors"], a.projectors, w);
  if (n["direction"])
    if (auto d = r.text(n["direction"], w + ".direction")) a.direction = *d == "unstable" ? "instable" : *d;
  if (n["member"])
    if (auto m = r.integer(n["member"], w + ".member")) a.member = static_cast<int>(*m);
  if (n["triples"])
    if (auto t = r.integer(n["triples"], w + ".triples")) a.triples = static_cast<int>(*t);
  if (n["integer_times"])
    if (auto b = r.boolean(n["integer_times"], w + ".integer_times")) a.integer_times = *b;
  if (n["cross_check"])
    if (auto b = r.boolean(n["cross_check"], w + ".cross_check")) a.params["cross_check"] = *b ? 1.0 : 0.0;
  check_analysis(r, n, a, w);
  job.analyses.push_back(std::move(a));
}

void parse_system(Reader& r, const YAML::Node& n, AnalysisJob& job) {
  if (!r.is_map(n, "system")) return;
  r.check_keys(n, {"builtin", "params", "steps", "periodic", "generator"}, "system");
  const int sources = (n["builtin"] ? 1 : 0) + (n["steps"] ? 1 : 0) + (n["generator"] ? 1 : 0);
  if (sources != 1) {
    r.error(n, "system needs exactly one of builtin, steps, generator");
    return;
  }
  SystemSpec& s = job.system;
  if (n["builtin"]) {
    s.source = "builtin";
    if (auto name = r.text(n["builtin"], "system.builtin")) s.builtin = *name;
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), s.builtin) == names.end()) {
      r.error(n["builtin"], "system.builtin: unknown builtin '" + s.builtin + "' (known: " + join(names, ", ") + ")");
    }
    if (n["params"]) {
      const YAML::Node p = n["params"];
      if (r.is_map(p, "system.params")) {
        r.check_keys(p, {"variant", "base", "limit", "table"}, "system.params");
        if (p["variant"])
          if (auto v = r.text(p["variant"], "system.params.variant")) s.params.variant = *v;
        if (p["base"])
          if (auto v = r.text(p["base"], "system.params.base")) s.params.base = *v;
        if (p["limit"])
          if (auto v = r.number(p["limit"], "system.params.limit")) s.params.limit = *v;
        if (p["table"]) s.params.table = r.points(p["table"], "system.params.table");
      }
      try {
        (void)builtin(s.builtin, s.params);
      } catch (const InputError& e) {
        r.error(p, std::string("system.params: ") + e.what());
      }
    }
  } else if (n["steps"]) {
    s.source = "steps";
    const YAML::Node st = n["steps"];
    if (!st.IsSequence() || st.size() == 0) {
      r.error(st, "system.steps must be a nonempty list of matrices");
      return;
    }
    for (std::size_t i = 0; i < st.size(); ++i)
      if (auto m = r.matrix(st[i], "system.steps[" + std::to_string(i) + "]")) s.steps.push_back(*m);
    for (const auto& m : s.steps) {
      if (m.rows() != s.steps.front().rows()) {
        r.error(st, "system.steps matrices must all have the same size");
        break;
      }
    }
    if (n["periodic"])
      if (auto b = r.boolean(n["periodic"], "system.periodic")) s.periodic = *b;
  } else {
    s.source = "generator";
    const YAML::Node g = n["generator"];
    if (!r.is_map(g, "system.generator")) return;
    r.check_keys(g, {"seed", "conjugate", "condition_cap", "steps", "blocks"}, "system.generator");
    GeneratorSpec& gs = s.generator;
    if (g["seed"])
      if (auto v = r.integer(g["seed"], "system.generator.seed")) gs.seed = static_cast<std::uint64_t>(*v);
    if (g["conjugate"])
      if (auto v = r.boolean(g["conjugate"], "system.generator.conjugate")) gs.conjugate = *v;
    if (g["condition_cap"])
      if (auto v = r.number(g["condition_cap"], "system.generator.condition_cap")) gs.condition_cap = *v;
    if (g["steps"])
      if (auto v = r.integer(g["steps"], "system.generator.steps")) gs.steps = static_cast<int>(*v);
    const YAML::Node blocks = g["blocks"];
    if (!blocks || !blocks.IsSequence() || blocks.size() == 0) {
      r.error(g, "system.generator.blocks must be a nonempty list");
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const std::string w = "system.generator.blocks[" + std::to_string(i) + "]";
      const YAML::Node b = blocks[i];
      if (!r.is_map(b, w)) continue;
      r.check_keys(b, {"size", "lo", "hi", "role"}, w);
      BlockSpec spec;
      if (b["size"])
        if (auto v = r.integer(b["size"], w + ".size")) spec.size = static_cast<int>(*v);
      if (auto v = b["lo"] ? r.number(b["lo"], w + ".lo") : std::nullopt) spec.lo = *v;
      if (auto v = b["hi"] ? r.number(b["hi"], w + ".hi") : std::nullopt) spec.hi = *v;
      if (b["role"]) {
        try {
          spec.role = parse_block_role(b["role"].Scalar());
        } catch (const InputError& e) {
          r.error(b["role"], w + ": " + e.what());
        }
      } else {
        r.error(b, w + ": missing role");
      }
      gs.blocks.push_back(spec);
    }
    try {
      gs.validate();
    } catch (const InputError& e) {
      r.error(g, std::string("system.generator: ") + e.what());
    }
  }
}

void parse_horizon(Reader& r, const YAML::Node& n, AnalysisJob& job) {
  if (!r.is_map(n, "horizon")) return;
  r.check_keys(n, {"n_max", "states", "state_count", "vectors", "random_vectors", "trend_factor", "propagation"},
               "horizon");
  HorizonSettings& h = job.horizon;
  if (n["n_max"])
    if (auto v = r.integer(n["n_max"], "horizon.n_max")) h.n_max = static_cast<int>(*v);
  if (h.n_max < 2) r.error(n, "horizon.n_max must be >= 2");
  if (n["states"] && n["state_count"]) r.error(n, "horizon takes either states or state_count");
  if (n["states"]) {
    if (auto v = r.vector(n["states"], "horizon.states")) h.states.assign(v->data(), v->data() + v->size());
    for (double x : h.states)
      if (!(x >= 0.0)) r.error(n["states"], "horizon.states must be >= 0");
  }
  if (n["state_count"])
    if (auto v = r.integer(n["state_count"], "horizon.state_count")) h.state_count = static_cast<int>(*v);
  if (h.states.empty() && h.state_count < 1) r.error(n, "horizon.state_count must be >= 1");
  if (n["vectors"]) {
    const YAML::Node vs = n["vectors"];
    if (!vs.IsSequence() || vs.size() == 0) {
      r.error(vs, "horizon.vectors must be a nonempty list");
    } else {
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (auto v = r.vector(vs[i], "horizon.vectors[" + std::to_string(i) + "]")) h.vectors.push_back(*v);
    }
  }
  if (n["random_vectors"])
    if (auto v = r.integer(n["random_vectors"], "horizon.random_vectors")) h.random_vectors = static_cast<int>(*v);
  if (h.random_vectors < 0) r.error(n, "horizon.random_vectors must be >= 0");
  if (n["trend_factor"])
    if (auto v = r.number(n["trend_factor"], "horizon.trend_factor")) h.trend_factor = *v;
  if (!(h.trend_factor >= 1.0)) r.error(n, "horizon.trend_factor must be >= 1");
  if (n["propagation"]) {
    const auto p = r.text(n["propagation"], "horizon.propagation");
    if (p && *p == "stepped") {
      h.propagation = Propagation::stepped;
    } else if (p && *p == "direct") {
      h.propagation = Propagation::direct;
    } else if (p) {
      r.error(n["propagation"], "horizon.propagation must be stepped or direct");
    }
  }
}

int system_dim(const SystemSpec& s) {
  if (s.source == "steps") return s.steps.empty() ? 0 : static_cast<int>(s.steps.front().rows());
  if (s.source == "generator") return s.generator.dim();
  try {
    return builtin(s.builtin, s.params).system.dim();
  } catch (const InputError&) {
    return 0;
  }
}

void cross_validate(Reader& r, AnalysisJob& job) {
  const int d = system_dim(job.system);
  if (d <= 0) return;
  for (const auto& v : job.horizon.vectors)
    if (v.size() != d) r.error_line(0, "horizon.vectors must have dimension " + std::to_string(d));
  const bool builtin_system = job.system.source == "builtin";
  for (std::size_t i = 0; i < job.analyses.size(); ++i) {
    const AnalysisSpec& a = job.analyses[i];
    const std::string w = "analyses[" + std::to_string(i) + "] (" + a.kind + ")";
    if (job.system.source == "steps" && a.kind != "axioms") {
      const long long horizon_steps = static_cast<long long>(job.system.steps.size());
      if (!job.system.periodic && job.horizon.n_max > horizon_steps) {
        r.error_line(a.line, w + ": horizon.n_max exceeds the " + std::to_string(horizon_steps) +
                                 " supplied steps (set periodic: true or lower n_max)");
      }
    }
    if (job.system.source == "generator" && job.horizon.n_max > job.system.generator.steps) {
      r.error_line(a.line, w + ": horizon.n_max exceeds the generated steps");
    }
    if (a.kind == "characteristics" && !(builtin_system && (job.system.builtin == "ex_ce" ||
                                                            job.system.builtin == "ex_nuet"))) {
      r.error_line(a.line, w + ": only defined for the ex_ce / ex_nuet builtins");
    }
    const ProjectorSpec& p = a.projectors;
    const bool split = a.kind == "dichotomy" || a.kind == "dichotomy_sum" || a.kind == "trichotomy" ||
                       a.kind == "trichotomy_sum" || a.kind == "four_projector";
    if (split) {
      const std::size_t want = (a.kind == "dichotomy" || a.kind == "dichotomy_sum") ? 2 : 3;
      if (p.source == "coordinate") {
        int total = 0;
        for (int b : p.blocks) total += b;
        if (p.blocks.size() != want) {
          r.error_line(a.line, w + ": coordinate projectors need " + std::to_string(want) + " blocks");
        }
        if (total != d) r.error_line(a.line, w + ": coordinate blocks must add up to " + std::to_string(d));
      } else if (p.source == "matrices") {
        const std::size_t n = p.matrices.size();
        const bool ok = n == want || (a.kind == "four_projector" && n == 4);
        if (!ok) r.error_line(a.line, w + ": wrong number of projector matrices");
        for (const auto& m : p.matrices)
          if (m.rows() != d) r.error_line(a.line, w + ": projector matrices must be " + std::to_string(d) + "x" + std::to_string(d));
      } else if (!builtin_system && job.system.source != "generator") {
        r.error_line(a.line, w + ": inline step systems have no fixture projectors; give coordinate or matrices");
      }
    }
    if ((a.kind == "growth" || a.kind == "decay") && a.member > 0 && !builtin_system &&
        job.system.source != "generator") {
      r.error_line(a.line, w + ": member refers to a fixture family, which inline step systems lack");
    }
  }
}

}  // namespace

JobError::JobError(std::vector<std::string> messages)
    : InputError("invalid job:\n  " + join(messages, "\n  ")), messages_(std::move(messages)) {}

MonotoneGauge GaugeSpec::make() const {
  if (kind == "power") return MonotoneGauge::power(p);
  if (kind == "table") return MonotoneGauge::table(table);
  return MonotoneGauge::identity();
}

const std::vector<std::string>& analysis_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : schemas()) out.push_back(k);
    return out;
  }();
  return kinds;
}

ParseResult parse_job_text(const std::string& text, const ParseOptions& options) {
  ParseResult result;
  std::vector<std::string> errors;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw JobError({"line " + std::to_string(e.mark.line + 1) + ": " + e.msg});
  }
  Reader r(options.strict, errors, result.warnings);
  if (!root.IsMap()) throw JobError({"the job must be a mapping"});
  r.check_keys(root, {"name", "seed", "norm", "system", "horizon", "tolerances", "analyses", "output"}, "job");

  AnalysisJob& job = result.job;
  if (root["name"])
    if (auto v = r.text(root["name"], "name")) job.name = *v;
  if (root["seed"])
    if (auto v = r.integer(root["seed"], "seed")) job.seed = static_cast<std::uint64_t>(*v);
  if (root["norm"]) {
    try {
      job.norm = parse_norm_kind(root["norm"].Scalar());
    } catch (const InputError& e) {
      r.error(root["norm"], e.what());
    }
  }
  if (root["system"]) {
    parse_system(r, root["system"], job);
  } else {
    r.error(root, "missing system");
  }
  if (root["horizon"]) parse_horizon(r, root["horizon"], job);
  if (root["tolerances"]) {
    const YAML::Node t = root["tolerances"];
    if (r.is_map(t, "tolerances")) {
      r.check_keys(t, {"axioms"}, "tolerances");
      if (t["axioms"])
        if (auto v = r.number(t["axioms"], "tolerances.axioms")) job.axiom_tolerance = *v;
      if (!(job.axiom_tolerance > 0.0)) r.error(t, "tolerances.axioms must be > 0");
    }
  }
  const YAML::Node analyses = root["analyses"];
  if (!analyses || !analyses.IsSequence() || analyses.size() == 0) {
    r.error(analyses ? analyses : root, "analyses must be a nonempty list");
  } else {
    for (std::size_t i = 0; i < analyses.size(); ++i) parse_analysis(r, analyses[i], i, job);
  }
  if (root["output"]) {
    const YAML::Node o = root["output"];
    if (r.is_map(o, "output")) {
      r.check_keys(o, {"dir", "csv"}, "output");
      if (o["dir"])
        if (auto v = r.text(o["dir"], "output.dir")) job.output_dir = *v;
      if (o["csv"])
        if (auto v = r.boolean(o["csv"], "output.csv")) job.emit_csv = *v;
    }
  }
  if (errors.empty()) cross_validate(r, job);
  if (!errors.empty()) throw JobError(std::move(errors));
  return result;
}

ParseResult parse_job_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read job file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job_text(buf.str(), options);
}

namespace {

void emit_number(YAML::Emitter& out, double x) { out << YAML::Value << format_number(x); }

void emit_matrix(YAML::Emitter& out, const Eigen::MatrixXd& m) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << YAML::BeginSeq;
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << format_number(m(i, j));
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

void emit_vector(YAML::Emitter& out, const Eigen::VectorXd& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_number(v(i));
  out << YAML::EndSeq;
}

void emit_points(YAML::Emitter& out, const std::vector<std::pair<double, double>>& pts) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& [a, b] : pts) out << YAML::BeginSeq << format_number(a) << format_number(b) << YAML::EndSeq;
  out << YAML::EndSeq;
}

}  // namespace

std::string echo_job(const AnalysisJob& job) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << job.name;
  out << YAML::Key << "seed" << YAML::Value << std::to_string(job.seed);
  if (job.norm) out << YAML::Key << "norm" << YAML::Value << to_string(*job.norm);

  out << YAML::Key << "system" << YAML::Value << YAML::BeginMap;
  const SystemSpec& s = job.system;
  if (s.source == "builtin") {
    out << YAML::Key << "builtin" << YAML::Value << s.builtin;
    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "variant" << YAML::Value << s.params.variant;
    out << YAML::Key << "base" << YAML::Value << s.params.base;
    out << YAML::Key << "limit";
    emit_number(out, s.params.limit);
    if (!s.params.table.empty()) {
      out << YAML::Key << "table" << YAML::Value;
      emit_points(out, s.params.table);
    }
    out << YAML::EndMap;
  } else if (s.source == "steps") {
    out << YAML::Key << "steps" << YAML::Value << YAML::BeginSeq;
    for (const auto& m : s.steps) emit_matrix(out, m);
    out << YAML::EndSeq;
    out << YAML::Key << "periodic" << YAML::Value << s.periodic;
  } else {
    const GeneratorSpec& g = s.generator;
    out << YAML::Key << "generator" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "seed" << YAML::Value << std::to_string(g.seed);
    out << YAML::Key << "conjugate" << YAML::Value << g.conjugate;
    out << YAML::Key << "condition_cap";
    emit_number(out, g.condition_cap);
    out << YAML::Key << "steps" << YAML::Value << g.steps;
    out << YAML::Key << "blocks" << YAML::Value << YAML::BeginSeq;
    for (const auto& b : g.blocks) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "size" << YAML::Value << b.size;
      out << YAML::Key << "lo";
      emit_number(out, b.lo);
      out << YAML::Key << "hi";
      emit_number(out, b.hi);
      out << YAML::Key << "role" << YAML::Value << to_string(b.role);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndMap;

  const HorizonSettings& h = job.horizon;
  out << YAML::Key << "horizon" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_max" << YAML::Value << h.n_max;
  if (!h.states.empty()) {
    out << YAML::Key << "states" << YAML::Value;
    emit_vector(out, Eigen::Map<const Eigen::VectorXd>(h.states.data(), static_cast<Eigen::Index>(h.states.size())));
  } else {
    out << YAML::Key << "state_count" << YAML::Value << h.state_count;
  }
  if (!h.vectors.empty()) {
    out << YAML::Key << "vectors" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : h.vectors) emit_vector(out, v);
    out << YAML::EndSeq;
  }
  out << YAML::Key << "random_vectors" << YAML::Value << h.random_vectors;
  out << YAML::Key << "trend_factor";
  emit_number(out, h.trend_factor);
  out << YAML::Key << "propagation" << YAML::Value
      << (h.propagation == Propagation::stepped ? "stepped" : "direct");
  out << YAML::EndMap;

  out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "axioms";
  emit_number(out, job.axiom_tolerance);
  out << YAML::EndMap;

  out << YAML::Key << "analyses" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : job.analyses) {
    out << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << a.kind;
    for (const auto& [k, v] : a.params) {
      if (k == "cross_check") {
        out << YAML::Key << k << YAML::Value << (v != 0.0);
      } else {
        out << YAML::Key << k;
        emit_number(out, v);
      }
    }
    const bool gauged = a.kind == "datko" || a.kind == "adjoint" || a.kind == "instability" || a.kind == "dichotomy_sum";
    if (gauged) {
      out << YAML::Key << "gauge" << YAML::Value;
      if (a.gauge.kind == "power") {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "power";
        emit_number(out, a.gauge.p);
        out << YAML::EndMap;
      } else if (a.gauge.kind == "table") {
        out << YAML::BeginMap << YAML::Key << "table" << YAML::Value;
        emit_points(out, a.gauge.table);
        out << YAML::EndMap;
      } else {
        out << "identity";
      }
    }
    const bool split = a.kind == "dichotomy" || a.kind == "dichotomy_sum" || a.kind == "trichotomy" ||
                       a.kind == "trichotomy_sum" || a.kind == "four_projector";
    if (split) {
      out << YAML::Key << "projectors" << YAML::Value;
      if (a.projectors.source == "coordinate") {
        out << YAML::BeginMap << YAML::Key << "coordinate" << YAML::Value << YAML::Flow << a.projectors.blocks
            << YAML::EndMap;
      } else if (a.projectors.source == "matrices") {
        out << YAML::BeginMap << YAML::Key << "matrices" << YAML::Value << YAML::BeginSeq;
        for (const auto& m : a.projectors.matrices) emit_matrix(out, m);
        out << YAML::EndSeq << YAML::EndMap;
      } else {
        out << "fixture";
      }
    }
    if (a.kind == "estimate") out << YAML::Key << "direction" << YAML::Value << a.direction;
    if ((a.kind == "growth" || a.kind == "decay") && a.member > 0) {
      out << YAML::Key << "member" << YAML::Value << a.member;
    }
    if (a.kind == "axioms" || a.kind == "characteristics") {
      out << YAML::Key << "triples" << YAML::Value << a.triples;
    }
    if (a.kind == "axioms") out << YAML::Key << "integer_times" << YAML::Value << a.integer_times;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  if (!job.output_dir.empty()) out << YAML::Key << "dir" << YAML::Value << job.output_dir;
  out << YAML::Key << "csv" << YAML::Value << job.emit_csv;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace skewflow::cli
