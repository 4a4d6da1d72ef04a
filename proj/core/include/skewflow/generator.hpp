#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/builtins.hpp"

namespace skewflow {

enum class BlockRole { stable, central, unstable };
std::string to_string(BlockRole role);
BlockRole parse_block_role(const std::string& text);

/// A diagonal block whose per-step log-rates are drawn uniformly from [lo, hi].
struct BlockSpec {
  int size = 1;
  double lo = 0.0;
  double hi = 0.0;
  BlockRole role = BlockRole::central;
};

struct GeneratorSpec {
  std::vector<BlockSpec> blocks;
  bool conjugate = false;      // random similarity S = I + 0.5 U(-1, 1)
  double condition_cap = 20.0;  // l2 condition number bound for S
  std::uint64_t seed = 1;
  int steps = 256;  // number of generated one-step operators
  NormKind norm = NormKind::l1;

  int dim() const;
  /// Throws InputError when a block interval contradicts its role.
  void validate() const;
};

struct GeneratedSystem {
  Fixture fixture;  // family: the conjugated coordinate projectors, one per block
  Eigen::MatrixXd similarity;
  std::vector<std::vector<double>> log_rates;  // [step][block]
  std::vector<std::pair<double, double>> planted;  // rate interval per block
};

/// A_k = S D_k S^{-1} with D_k = diag(e^{r_k,b} I_b). Rates and S come from
/// separate seeded streams; S is redrawn from the next stream while its
/// condition number exceeds the cap. Integer domain up to spec.steps.
GeneratedSystem random_block_cocycle(const GeneratorSpec& spec);

}  // namespace skewflow
