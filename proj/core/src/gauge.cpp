#include "skewflow/gauge.hpp"

#include <cmath>
#include <sstream>

#include "skewflow/errors.hpp"

namespace skewflow {

MonotoneGauge::MonotoneGauge(Kind kind, double p, std::vector<std::pair<double, double>> points)
    : kind_(kind), p_(p), points_(std::move(points)) {}

MonotoneGauge MonotoneGauge::identity() { return MonotoneGauge(Kind::identity, 1.0, {}); }

MonotoneGauge MonotoneGauge::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("power gauge needs p > 0");
  return MonotoneGauge(Kind::power, p, {});
}

MonotoneGauge MonotoneGauge::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw InputError("table gauge needs at least two points");
  if (points.front().first != 0.0 || points.front().second != 0.0) {
    throw InputError("table gauge must start at (0, 0)");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& [t0, r0] = points[i - 1];
    const auto& [t1, r1] = points[i];
    if (!(t1 > t0) || !std::isfinite(t1)) throw InputError("table gauge abscissae must strictly increase");
    if (!(r1 >= r0) || !std::isfinite(r1)) throw InputError("table gauge values must be nondecreasing");
  }
  if (!(points[1].second > 0.0)) throw InputError("table gauge must be positive for t > 0");
  return MonotoneGauge(Kind::table, 1.0, std::move(points));
}

double MonotoneGauge::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::identity:
      return t;
    case Kind::power:
      return std::pow(t, p_);
    case Kind::table:
      break;
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& [t0, r0] = points_[i - 1];
    const auto& [t1, r1] = points_[i];
    if (t <= t1) return r0 + (r1 - r0) * (t - t0) / (t1 - t0);
  }
  const auto& [ta, ra] = points_[points_.size() - 2];
  const auto& [tb, rb] = points_.back();
  return rb + (rb - ra) / (tb - ta) * (t - tb);
}

bool MonotoneGauge::strictly_increasing() const noexcept {
  if (kind_ != Kind::table) return true;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].second > points_[i - 1].second)) return false;
  }
  return true;
}

double MonotoneGauge::inverse(double y) const {
  if (!strictly_increasing()) throw InputError("gauge " + describe() + " is not strictly increasing");
  if (y <= 0.0) return 0.0;
  if (!std::isfinite(y)) return y;
  switch (kind_) {
    case Kind::identity:
      return y;
    case Kind::power:
      return std::pow(y, 1.0 / p_);
    case Kind::table:
      break;
  }
  double lo = 0.0;
  double hi = points_.back().first;
  while ((*this)(hi) < y) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

std::string MonotoneGauge::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::identity:
      os << "identity";
      break;
    case Kind::power:
      os << "power(p=" << p_ << ")";
      break;
    case Kind::table:
      os << "table(" << points_.size() << " points)";
      break;
  }
  return os.str();
}

}  // namespace skewflow
