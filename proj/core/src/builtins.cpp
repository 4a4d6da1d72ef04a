#include "skewflow/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "skewflow/errors.hpp"

namespace skewflow {

namespace {

/// log f for the ex_nues1 / ex_nueis1 family: prescribed at the integers and
/// at the dip points n + e^{-n^2}, linear in between. A dip that rounds onto n
/// or lands on n + 1 is dropped; the integer value wins.
class DipProfile {
 public:
  DipProfile(std::function<double(int)> at_integer, std::function<double(int)> at_dip)
      : at_integer_(std::move(at_integer)), at_dip_(std::move(at_dip)) {}

  double log_f(double t) const {
    const double fl = std::floor(t);
    const int n = static_cast<int>(fl);
    if (t == fl) return at_integer_(n);
    const double left = at_integer_(n);
    const double right = at_integer_(n + 1);
    const double dip = fl + std::exp(-static_cast<double>(n) * n);
    if (dip > fl && dip < fl + 1.0) {
      if (t <= dip) return left + (at_dip_(n) - left) * (t - fl) / (dip - fl);
      return at_dip_(n) + (right - at_dip_(n)) * (t - dip) / (fl + 1.0 - dip);
    }
    return left + (right - left) * (t - fl);
  }

 private:
  std::function<double(int)> at_integer_;
  std::function<double(int)> at_dip_;
};

Fixture scalar_dip_fixture(const std::string& name, DipProfile profile, double rate, std::string expected,
                           std::string source) {
  SkewEvolutionSystem::Definition def;
  def.name = name;
  def.dim = 1;
  def.cocycle = [profile, rate](double t, double s, const StatePoint&) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = std::exp(profile.log_f(s) - profile.log_f(t) + rate * (t - s));
    return m;
  };
  Fixture fx{SkewEvolutionSystem(std::move(def)), {}, std::nullopt};
  fx.descriptor.name = name;
  fx.descriptor.expected = std::move(expected);
  fx.descriptor.source = std::move(source);
  return fx;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Fixture shifted_function_fixture(const BuiltinParams& params) {
  if (params.variant != "corrected" && params.variant != "literal") {
    throw InputError("ex_ce variant must be 'corrected' or 'literal', got '" + params.variant + "'");
  }
  const BaseFunction f(params);
  const bool literal = params.variant == "literal";
  SkewEvolutionSystem::Definition def;
  def.name = "ex_ce";
  def.dim = 3;
  def.cocycle = [f, literal](double t, double s, const StatePoint& x) {
    const double u = x.value;
    const double x0 = f(u);
    const double integral = literal ? f.integral(u, u + t) : f.integral(u, u + (t - s));
    const double tau = t - s;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = std::exp(-2.0 * tau * x0 + integral);
    m(1, 1) = std::exp(tau + integral);
    m(2, 2) = std::exp(-tau * x0 + 2.0 * integral);
    return m;
  };
  Fixture fx{SkewEvolutionSystem(std::move(def)), {}, std::nullopt};
  fx.descriptor.name = "ex_ce";
  fx.descriptor.parameters = {{"variant", params.variant}, {"base", f.describe()}};
  fx.descriptor.constants = {{"l", f.limit()}};
  fx.descriptor.expected = literal ? "cocycle identity (c2) expected to fail" : "skew-evolution semiflow";
  fx.descriptor.source = "worked example ex_ce";
  return fx;
}

}  // namespace

BaseFunction::BaseFunction(const BuiltinParams& params) : kind_(params.base), limit_(params.limit) {
  if (kind_ == "constant") {
    if (!(limit_ > 0.0) || !std::isfinite(limit_)) throw InputError("constant base needs l > 0");
  } else if (kind_ == "saturating") {
    if (!(limit_ >= 1.0) || !std::isfinite(limit_)) throw InputError("saturating base needs l >= 1");
  } else if (kind_ == "table") {
    table_ = params.table;
    if (table_.empty() || table_.front().first != 0.0) throw InputError("table base must start at t = 0");
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (!(table_[i].second > 0.0) || !std::isfinite(table_[i].second)) {
        throw InputError("table base values must be positive");
      }
      if (i > 0 && (!(table_[i].first > table_[i - 1].first) || table_[i].second < table_[i - 1].second)) {
        throw InputError("table base must have increasing abscissae and nondecreasing values");
      }
    }
    limit_ = table_.back().second;
  } else {
    throw InputError("unknown base function '" + kind_ + "' (constant, saturating, table)");
  }
}

double BaseFunction::operator()(double t) const {
  if (kind_ == "constant") return limit_;
  if (kind_ == "saturating") return limit_ - (limit_ - 1.0) * std::exp(-t);
  if (t >= table_.back().first) return table_.back().second;
  auto it = std::upper_bound(table_.begin(), table_.end(), t,
                             [](double v, const std::pair<double, double>& p) { return v < p.first; });
  const auto& [t1, f1] = *it;
  const auto& [t0, f0] = *(it - 1);
  return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
}

double BaseFunction::integral(double a, double b) const {
  if (b == a) return 0.0;
  if (kind_ == "constant") return limit_ * (b - a);
  if (kind_ == "saturating") return limit_ * (b - a) - (limit_ - 1.0) * (std::exp(-a) - std::exp(-b));
  const std::function<double(double)> g = [this](double t) { return (*this)(t); };
  // Split at the table knots so every Simpson panel sees a smooth integrand.
  std::vector<double> cuts{a};
  for (const auto& [tk, fk] : table_)
    if (tk > a && tk < b) cuts.push_back(tk);
  cuts.push_back(b);
  double total = 0.0;
  const double tol = 1e-10 / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = cuts[i - 1];
    const double hi = cuts[i];
    const double flo = g(lo);
    const double fhi = g(hi);
    const double fm = g(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += adaptive_simpson(g, lo, hi, flo, fm, fhi, whole, tol, 50);
  }
  return total;
}

std::string BaseFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == "table") {
    os << "table(" << table_.size() << " points, l=" << limit_ << ")";
  } else {
    os << kind_ << "(l=" << limit_ << ")";
  }
  return os.str();
}

std::vector<std::string> builtin_names() {
  return {"ex_ce", "ex_nues1", "ex_nueis1", "ex_nued", "ex_nuet", "diag_fixture", "direct_sum"};
}

Fixture builtin(const std::string& name, const BuiltinParams& params) {
  if (name == "ex_nues1") {
    return scalar_dip_fixture(
        name, DipProfile([](int n) { return 2.0 * n; }, [](int) { return 0.0; }), -1.0, "exponentially stable",
        "worked example ex_nues1: \"C_f is exponentially stable\"");
  }
  if (name == "ex_nueis1") {
    return scalar_dip_fixture(
        name, DipProfile([](int) { return 0.0; }, [](int n) { return 2.0 * n; }), 1.0, "exponentially instable",
        "worked example ex_nueis1: \"C_f is exponentially instable\"");
  }
  if (name == "ex_nued") {
    SkewEvolutionSystem::Definition def;
    def.name = name;
    def.dim = 2;
    def.cocycle = [](double t, double s, const StatePoint&) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
      m(0, 0) = std::exp(t * std::sin(t) - s * std::sin(s) - 2.0 * t + 2.0 * s);
      m(1, 1) = std::exp(2.0 * t - 2.0 * s - 3.0 * t * std::cos(t) + 3.0 * s * std::cos(s));
      return m;
    };
    Fixture fx{SkewEvolutionSystem(std::move(def)), {}, ProjectorFamily::coordinate({1, 1})};
    fx.descriptor.name = name;
    fx.descriptor.expected = "exponentially dichotomic";
    fx.descriptor.constants = {{"nu", 1.0}};
    fx.descriptor.parameters = {{"N(u)", "e^{6u}"}};
    fx.descriptor.source = "worked example ex_nued: \"N(u)=e^{6u} and nu=1\"";
    return fx;
  }
  if (name == "ex_ce") return shifted_function_fixture(params);
  if (name == "ex_nuet") {
    Fixture fx = shifted_function_fixture(params);
    fx.family = ProjectorFamily::coordinate({1, 1, 1});
    fx.descriptor.name = name;
    fx.descriptor.expected = "exponentially trichotomic";
    fx.descriptor.parameters["nu1"] = "-x(0)";
    fx.descriptor.parameters["nu2"] = "-x(0)";
    fx.descriptor.parameters["nu3"] = "x(0)";
    fx.descriptor.parameters["nu4"] = "1";
    fx.descriptor.parameters["N1(u)"] = "e^{u x(0)}";
    fx.descriptor.parameters["N2(u)"] = "e^{-2 l u}";
    fx.descriptor.parameters["N3(u)"] = "e^{2 u x(0)}";
    fx.descriptor.parameters["N4(u)"] = "e^{-l u}";
    fx.descriptor.source = "worked example ex_nuet: \"nu1=nu2=-x(0), nu3=x(0) and nu4=1\"";
    return fx;
  }
  if (name == "diag_fixture") {
    SkewEvolutionSystem::Definition def;
    def.name = name;
    def.dim = 3;
    def.cocycle = [](double t, double s, const StatePoint&) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
      m(0, 0) = std::exp(-3.0 * (t - s));
      m(1, 1) = std::exp(t - s);
      m(2, 2) = 1.0;
      return m;
    };
    Fixture fx{SkewEvolutionSystem(std::move(def)), {}, ProjectorFamily::coordinate({1, 1, 1})};
    fx.descriptor.name = name;
    fx.descriptor.expected = "exponentially trichotomic";
    fx.descriptor.constants = {{"nu1", -3.0}, {"nu2", 0.0}, {"nu3", 0.0}, {"nu4", 1.0}};
    fx.descriptor.source = "closed form diag(e^{-3(t-s)}, e^{t-s}, 1)";
    return fx;
  }
  if (name == "direct_sum") {
    const Fixture a = builtin("ex_nues1");
    const Fixture b = builtin("ex_nueis1");
    SkewEvolutionSystem::Definition def;
    def.name = name;
    def.dim = 2;
    def.cocycle = [sa = a.system, sb = b.system](double t, double s, const StatePoint& x) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
      m(0, 0) = sa.evaluate(t, s, x).matrix()(0, 0);
      m(1, 1) = sb.evaluate(t, s, x).matrix()(0, 0);
      return m;
    };
    Fixture fx{SkewEvolutionSystem(std::move(def)), {}, ProjectorFamily::coordinate({1, 1})};
    fx.descriptor.name = name;
    fx.descriptor.expected = "exponentially dichotomic";
    fx.descriptor.constants = {{"nu1", -3.0}, {"nu2", 1.0}};
    fx.descriptor.source = "closed form: ex_nues1 (+) ex_nueis1";
    return fx;
  }
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown builtin '" + name + "' (known: " + known + ")");
}

SkewEvolutionSystem from_steps(std::string name, std::vector<Eigen::MatrixXd> steps, NormKind norm, bool periodic) {
  if (steps.empty()) throw InputError("step sequence is empty");
  const auto d = steps.front().rows();
  for (const auto& a : steps) {
    if (a.rows() != d || a.cols() != d || d < 1) throw InputError("step matrices must be square of equal size");
    if (!a.allFinite()) throw InputError("step matrices must be finite");
  }
  SkewEvolutionSystem::Definition def;
  def.name = std::move(name);
  def.dim = static_cast<int>(d);
  def.norm = norm;
  def.domain = TimeDomain::integer;
  const auto count = static_cast<long long>(steps.size());
  def.cocycle = [steps = std::move(steps), count, periodic, d](double t, double s, const StatePoint&) {
    const auto m = static_cast<long long>(t);
    const auto n = static_cast<long long>(s);
    if (!periodic && m > count) {
      std::ostringstream os;
      os << "time " << m << " is past the " << count << " supplied steps";
      throw DomainError(os.str());
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(d, d);
    for (long long k = n; k < m; ++k) out = steps[static_cast<std::size_t>(k % count)] * out;
    return out;
  };
  return SkewEvolutionSystem(std::move(def));
}

std::vector<CharacteristicCheck> check_ex_nuet_characteristics(const BuiltinParams& params,
                                                               std::span<const TimeTriple> grid,
                                                               std::span<const StatePoint> states) {
  const Fixture fx = builtin("ex_nuet", params);
  const BaseFunction f(params);
  const double l = f.limit();
  std::vector<CharacteristicCheck> out{
      {"N1", "||Phi(t,t0,x)P1v|| <= N1(s) ||Phi(s,t0,x)P1v|| e^{nu1(t-s)}", 0.0, true},
      {"N2", "N2(t) ||Phi(t,t0,x)P3v|| >= ||Phi(s,t0,x)P3v|| e^{nu2(t-s)}", 0.0, true},
      {"N3", "||Phi(t,t0,x)P3v|| <= N3(s) ||Phi(s,t0,x)P3v|| e^{nu3(t-s)}", 0.0, true},
      {"N4", "N4(t) ||Phi(t,t0,x)P2v|| >= ||Phi(s,t0,x)P2v|| e^{nu4(t-s)}", 0.0, true},
  };
  bool first = true;
  for (const StatePoint& x : states) {
    const double x0 = f(x.value);
    const double nu1 = -x0;
    const double nu2 = -x0;
    const double nu3 = x0;
    const double nu4 = 1.0;
    for (const TimeTriple& tr : grid) {
      const double t = tr.t;
      const double s = tr.s;
      const Eigen::MatrixXd at_t = fx.system.evaluate(t, tr.t0, x).matrix();
      const Eigen::MatrixXd at_s = fx.system.evaluate(s, tr.t0, x).matrix();
      // Block norms of the coordinate projections, compared in log space.
      auto lt = [&](int i) { return std::log(at_t(i, i)); };
      auto ls = [&](int i) { return std::log(at_s(i, i)); };
      const double slack[4] = {
          (s * x0 + ls(0) + nu1 * (t - s)) - lt(0),
          (-2.0 * l * t + lt(2)) - (ls(2) + nu2 * (t - s)),
          (2.0 * s * x0 + ls(2) + nu3 * (t - s)) - lt(2),
          (-l * t + lt(1)) - (ls(1) + nu4 * (t - s)),
      };
      for (std::size_t i = 0; i < 4; ++i) {
        if (first || slack[i] < out[i].min_slack) out[i].min_slack = slack[i];
      }
      first = false;
    }
  }
  for (auto& c : out) c.validates = c.min_slack >= -1e-12;
  return out;
}

}  // namespace skewflow
