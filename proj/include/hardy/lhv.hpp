#ifndef HARDY_LHV_HPP
#define HARDY_LHV_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hardy/ladder.hpp"
#include "hardy/state.hpp"

// Classical side of the ladder argument: exhaustive enumeration of
// deterministic local strategies (the vertices of the local polytope) to
// certify max S_K = 0, plus the algebraic bridge between the Clauser-Horne
// form and the Hardy form of the K = 1 inequality.

namespace hardy {

// Fixed outcomes, one per setting and party.
struct DeterministicStrategy {
  std::vector<int> a_assign;  // entries +1 / -1, index = Alice's setting
  std::vector<int> b_assign;  // entries +1 / -1, index = Bob's setting
};

// Number of strategies, 2^{K+1} per party. Guarded so exhaustive sweeps
// stay desk-scale; anything with 2^{2(K+1)} reaching 2^24 is rejected.
inline std::uint64_t strategy_count(int k) {
  if (k < 1) throw std::domain_error("strategy_count: K must be >= 1");
  const int bits = 2 * (k + 1);
  if (bits >= 24)
    throw std::length_error("strategy_count: enumeration above the 2^24 guard");
  return std::uint64_t{1} << bits;
}

inline DeterministicStrategy decode_strategy(int k, std::uint64_t index) {
  DeterministicStrategy strategy;
  strategy.a_assign.resize(static_cast<std::size_t>(k) + 1);
  strategy.b_assign.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    strategy.a_assign[i] = (index >> i) & 1 ? -1 : +1;
    strategy.b_assign[i] = (index >> (k + 1 + i)) & 1 ? -1 : +1;
  }
  return strategy;
}

// Visits every strategy exactly once, reusing one buffer.
template <class Visitor>
void for_each_strategy(int k, Visitor&& visit) {
  const std::uint64_t n = strategy_count(k);
  DeterministicStrategy strategy;
  strategy.a_assign.resize(static_cast<std::size_t>(k) + 1);
  strategy.b_assign.resize(static_cast<std::size_t>(k) + 1);
  for (std::uint64_t index = 0; index < n; ++index) {
    for (int i = 0; i <= k; ++i) {
      strategy.a_assign[i] = (index >> i) & 1 ? -1 : +1;
      strategy.b_assign[i] = (index >> (k + 1 + i)) & 1 ? -1 : +1;
    }
    visit(std::as_const(strategy));
  }
}

// Materialized list; intended for small K (tests, demos). Larger sweeps
// should use for_each_strategy.
inline std::vector<DeterministicStrategy> enumerate_strategies(int k) {
  std::vector<DeterministicStrategy> all;
  all.reserve(strategy_count(k));
  for_each_strategy(k, [&all](const DeterministicStrategy& s) { all.push_back(s); });
  return all;
}

// S_K evaluated on a deterministic strategy; every joint probability is the
// 0/1 indicator of the assigned outcomes.
inline double strategy_s_value(const DeterministicStrategy& strategy) {
  if (strategy.a_assign.size() != strategy.b_assign.size() || strategy.a_assign.size() < 2)
    throw std::domain_error("strategy_s_value: need matching assignments for K+1 >= 2 settings");
  const auto& a = strategy.a_assign;
  const auto& b = strategy.b_assign;
  const int k_max = static_cast<int>(a.size()) - 1;
  double s = (a[k_max] == +1 && b[k_max] == +1 ? 1.0 : 0.0) -
             (a[0] == +1 && b[0] == +1 ? 1.0 : 0.0);
  for (int k = 1; k <= k_max; ++k) {
    s -= (a[k] == +1 && b[k - 1] == -1 ? 1.0 : 0.0);
    s -= (a[k - 1] == -1 && b[k] == +1 ? 1.0 : 0.0);
  }
  return s;
}

// Exhaustive maximum of S_K over all deterministic strategies. Equals 0 for
// every K: the classical bound of the ladder inequality.
inline double lhv_max(int k) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_strategy(k, [&best](const DeterministicStrategy& strategy) {
    const double s = strategy_s_value(strategy);
    if (s > best) best = s;
  });
  return best;
}

// Full table of joint distributions over the (K+1) x (K+1) setting pairs.
struct BehaviorTable {
  int n_settings = 0;
  std::vector<JointDistribution> cells;  // row-major, cells[i * n_settings + j]

  const JointDistribution& at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * n_settings + j];
  }
  JointDistribution& at(int i, int j) {
    return cells[static_cast<std::size_t>(i) * n_settings + j];
  }
};

inline BehaviorTable table_from_state(const NoisyState& state, const LadderAngles& angles) {
  const int n = static_cast<int>(angles.thetas.size());
  BehaviorTable table;
  table.n_settings = n;
  table.cells.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table.cells.push_back(
          distribution(state, alice_setting(angles.thetas[i]), bob_setting(angles.thetas[j])));
  return table;
}

inline BehaviorTable table_from_strategy(const DeterministicStrategy& strategy) {
  const int n = static_cast<int>(strategy.a_assign.size());
  BehaviorTable table;
  table.n_settings = n;
  table.cells.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      JointDistribution cell{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
      const bool a_plus = strategy.a_assign[i] == +1;
      const bool b_plus = strategy.b_assign[j] == +1;
      (a_plus ? (b_plus ? cell.p_pp : cell.p_pm) : (b_plus ? cell.p_mp : cell.p_mm)) = 1.0;
      table.cells.push_back(cell);
    }
  }
  return table;
}

// Marginal consistency: P_A(+) at setting i must not depend on j, and
// P_B(+) at setting j must not depend on i.
inline bool is_no_signaling(const BehaviorTable& table, double tolerance) {
  const int n = table.n_settings;
  for (int i = 0; i < n; ++i) {
    const double reference = marginal_a_plus(table.at(i, 0));
    for (int j = 1; j < n; ++j)
      if (std::abs(marginal_a_plus(table.at(i, j)) - reference) > tolerance) return false;
  }
  for (int j = 0; j < n; ++j) {
    const double reference = marginal_b_plus(table.at(0, j));
    for (int i = 1; i < n; ++i)
      if (std::abs(marginal_b_plus(table.at(i, j)) - reference) > tolerance) return false;
  }
  return true;
}

// S_K read off a behavior table (settings 0..K per side).
inline double s_from_table(const BehaviorTable& table) {
  const int k_max = table.n_settings - 1;
  if (k_max < 1) throw std::domain_error("s_from_table: need at least two settings per side");
  double s = table.at(k_max, k_max).p_pp - table.at(0, 0).p_pp;
  for (int k = 1; k <= k_max; ++k) s -= table.at(k, k - 1).p_pm + table.at(k - 1, k).p_mp;
  return s;
}

// | CH form - Hardy form | on a K = 1 table. The Clauser-Horne combination
//
//   P(a1,b1) + P(a0,b1) + P(a1,b0) - P(a0,b0) - P_A(a1) - P_B(b1)
//
// with the marginals expanded as P_A(a1) = P(a1,b0) + P(a1,~b0) and
// P_B(b1) = P(a0,b1) + P(~a0,b1) collapses term by term onto
// S_1 = P(a1,b1) - P(a0,b0) - P(a1,~b0) - P(~a0,b1). The identity is pure
// algebra, so the residual is rounding noise for any table, normalized,
// signaling or not.
inline double ch_equivalence_residual(const BehaviorTable& table) {
  if (table.n_settings != 2)
    throw std::domain_error("ch_equivalence_residual: table must cover settings {0,1}^2");
  const double marginal_a1 = table.at(1, 0).p_pp + table.at(1, 0).p_pm;
  const double marginal_b1 = table.at(0, 1).p_pp + table.at(0, 1).p_mp;
  const double ch_form = table.at(1, 1).p_pp + table.at(0, 1).p_pp + table.at(1, 0).p_pp -
                         table.at(0, 0).p_pp - marginal_a1 - marginal_b1;
  const double hardy_form =
      table.at(1, 1).p_pp - table.at(0, 0).p_pp - table.at(0, 1).p_mp - table.at(1, 0).p_pm;
  return std::abs(ch_form - hardy_form);
}

// S_K(quantum) minus the exhaustive classical maximum; positive margin
// certifies a violation.
inline double quantum_vs_lhv(const LadderConfig& config, double visibility,
                             double phi = std::numbers::pi) {
  return evaluate_ladder(config, phi, visibility).s_value - lhv_max(config.k);
}

}  // namespace hardy

#endif  // HARDY_LHV_HPP
