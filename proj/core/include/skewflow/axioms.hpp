#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skewflow/system.hpp"

namespace skewflow {

struct AxiomRow {
  TimeTriple times;
  StatePoint state;
  double cocycle_residual = 0.0;   // relative, see verify_axioms
  double semiflow_residual = 0.0;  // |phi(t,s,phi(s,t0,x)) - phi(t,t0,x)| / max(1, |phi(t,t0,x)|)
};

struct AxiomReport {
  std::vector<AxiomRow> rows;  // one per (triple, state), grid order
  double max_cocycle_residual = 0.0;
  double max_semiflow_residual = 0.0;
  double max_identity_residual = 0.0;  // (s1) and (c1) at every sampled time
  double tolerance = 1e-9;
  bool passed = true;
};

/// Checks (s1), (s2), (c1), (c2) on every (triple, state) pair.
///
/// The cocycle residual is
///   ||Phi(t,s,phi(s,t0,x)) Phi(s,t0,x) - Phi(t,t0,x)|| / (||Phi(t,s,.)|| ||Phi(s,t0,x)||),
/// which stays meaningful when the operators are exponentially large or small.
/// Throws InputError for an empty grid or a triple outside t >= s >= t0 >= 0.
AxiomReport verify_axioms(const SkewEvolutionSystem& system, std::span<const TimeTriple> grid,
                          std::span<const StatePoint> states, double tolerance = 1e-9);

/// Seeded triples with t0 <= s <= t <= t_max, sorted draws of three uniforms
/// (or three integers when integer_times is set).
std::vector<TimeTriple> random_triples(int count, double t_max, std::uint64_t seed, bool integer_times);

}  // namespace skewflow
