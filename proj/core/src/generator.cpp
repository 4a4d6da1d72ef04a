#include "skewflow/generator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "skewflow/errors.hpp"
#include "skewflow/random.hpp"

namespace skewflow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent substream `stream` of `seed`.
std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) { return splitmix64(splitmix64(seed) ^ stream); }

constexpr std::uint64_t kRateStream = 1;
constexpr std::uint64_t kSimilarityStream = 1000;

double condition_number(const Eigen::MatrixXd& s) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

std::string to_string(BlockRole role) {
  switch (role) {
    case BlockRole::stable:
      return "stable";
    case BlockRole::central:
      return "central";
    case BlockRole::unstable:
      return "unstable";
  }
  return "?";
}

BlockRole parse_block_role(const std::string& text) {
  if (text == "stable") return BlockRole::stable;
  if (text == "central") return BlockRole::central;
  if (text == "unstable") return BlockRole::unstable;
  throw InputError("unknown block role '" + text + "' (stable, central, unstable)");
}

int GeneratorSpec::dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.size;
  return d;
}

void GeneratorSpec::validate() const {
  if (blocks.empty()) throw InputError("generator needs at least one block");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const BlockSpec& b = blocks[i];
    std::ostringstream where;
    where << "block " << i << " (" << to_string(b.role) << ", [" << b.lo << ", " << b.hi << "])";
    if (b.size < 1) throw InputError(where.str() + ": size must be >= 1");
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw InputError(where.str() + ": needs finite lo <= hi");
    }
    if (b.role == BlockRole::stable && !(b.hi < 0.0)) throw InputError(where.str() + ": stable rates must be < 0");
    if (b.role == BlockRole::unstable && !(b.lo > 0.0)) throw InputError(where.str() + ": unstable rates must be > 0");
    if (b.role == BlockRole::central && !(b.lo <= 0.0 && 0.0 <= b.hi)) {
      throw InputError(where.str() + ": central rates must contain 0");
    }
  }
  if (conjugate && !(condition_cap >= 1.0)) throw InputError("condition number cap must be >= 1");
  if (steps < 1) throw InputError("generator needs at least one step");
}

GeneratedSystem random_block_cocycle(const GeneratorSpec& spec) {
  spec.validate();
  const int d = spec.dim();
  const auto nb = spec.blocks.size();
  const auto steps = static_cast<std::size_t>(spec.steps);

  Rng rates(substream(spec.seed, kRateStream));
  std::vector<std::vector<double>> log_rates(steps, std::vector<double>(nb));
  for (std::size_t k = 0; k < steps; ++k)
    for (std::size_t b = 0; b < nb; ++b) log_rates[k][b] = rates.uniform(spec.blocks[b].lo, spec.blocks[b].hi);

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
  if (spec.conjugate) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      Rng draw(substream(spec.seed, kSimilarityStream + attempt));
      Eigen::MatrixXd c = Eigen::MatrixXd::Identity(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) c(i, j) += 0.5 * draw.uniform(-1.0, 1.0);
      if (condition_number(c) <= spec.condition_cap) {
        s = c;
        break;
      }
      if (attempt > 10000) throw InputError("no similarity below the condition number cap was found");
    }
  }
  const Eigen::MatrixXd s_inv = s.inverse();

  // Cumulative log-rates per block: cum[k][b] = sum_{j<k} r_j,b.
  std::vector<std::vector<double>> cum(steps + 1, std::vector<double>(nb, 0.0));
  for (std::size_t k = 0; k < steps; ++k)
    for (std::size_t b = 0; b < nb; ++b) cum[k + 1][b] = cum[k][b] + log_rates[k][b];

  std::vector<int> offsets;
  int off = 0;
  for (const auto& b : spec.blocks) {
    offsets.push_back(off);
    off += b.size;
  }

  SkewEvolutionSystem::Definition def;
  std::ostringstream name;
  name << "generated(seed=" << spec.seed << ")";
  def.name = name.str();
  def.dim = d;
  def.norm = spec.norm;
  def.domain = TimeDomain::integer;
  def.cocycle = [cum, s, s_inv, offsets, blocks = spec.blocks, steps, d](double t, double t0, const StatePoint&) {
    const auto m = static_cast<std::size_t>(t);
    const auto n = static_cast<std::size_t>(t0);
    if (m > steps) {
      std::ostringstream os;
      os << "time " << m << " is past the " << steps << " generated steps";
      throw DomainError(os.str());
    }
    Eigen::VectorXd diag(d);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const double f = std::exp(cum[m][b] - cum[n][b]);
      for (int i = 0; i < blocks[b].size; ++i) diag(offsets[b] + i) = f;
    }
    if (m == n) return Eigen::MatrixXd(Eigen::MatrixXd::Identity(d, d));
    return Eigen::MatrixXd(s * diag.asDiagonal() * s_inv);
  };

  std::vector<ProjectorMap> members;
  for (std::size_t b = 0; b < nb; ++b) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < spec.blocks[b].size; ++i) e(offsets[b] + i, offsets[b] + i) = 1.0;
    members.push_back(constant_projector(spec.conjugate ? Eigen::MatrixXd(s * e * s_inv) : e));
  }

  GeneratedSystem out{Fixture{SkewEvolutionSystem(std::move(def)), {}, std::nullopt}, s, std::move(log_rates), {}};
  if (nb <= 3) {
    const FamilyKind kind = nb == 1 ? FamilyKind::single : nb == 2 ? FamilyKind::pair : FamilyKind::triple;
    out.fixture.family = ProjectorFamily(kind, std::move(members));
  }
  FixtureDescriptor& desc = out.fixture.descriptor;
  desc.name = out.fixture.system.name();
  desc.source = "generator ground truth";
  std::string roles;
  for (std::size_t b = 0; b < nb; ++b) {
    const BlockSpec& blk = spec.blocks[b];
    out.planted.emplace_back(blk.lo, blk.hi);
    std::ostringstream key;
    key << "block" << b;
    desc.constants[key.str() + ".lo"] = blk.lo;
    desc.constants[key.str() + ".hi"] = blk.hi;
    desc.parameters[key.str() + ".role"] = to_string(blk.role);
    roles += (roles.empty() ? "" : "+") + to_string(blk.role);
  }
  desc.parameters["seed"] = std::to_string(spec.seed);
  desc.parameters["conjugate"] = spec.conjugate ? "true" : "false";
  desc.expected = roles;
  return out;
}

}  // namespace skewflow
