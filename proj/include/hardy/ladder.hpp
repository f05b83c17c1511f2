#ifndef HARDY_LADDER_HPP
#define HARDY_LADDER_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hardy/optimize.hpp"
#include "hardy/state.hpp"

// Hardy ladder machinery: the analyzer angle schedule that makes the K-step
// ladder conditions vanish, the resulting Hardy fraction, the
// Garuccio-Mermin statistic
//
//   S_K = P(a_K,b_K) - P(a_0,b_0)
//         - sum_{k=1..K} [ P(a_k, ~b_{k-1}) + P(~a_{k-1}, b_k) ]
//
// (bounded by 0 under any local hidden variable model), and one-dimensional
// optimization of S_K over the entanglement ratio t.

namespace hardy {

struct LadderConfig {
  int k;     // number of ladder steps, >= 1
  double t;  // amplitude ratio in (0, 1]
};

inline void validate_ladder_domain(int k, double t) {
  if (k < 1) throw std::domain_error("ladder: K must be >= 1");
  if (!std::isfinite(t) || t <= 0.0 || t > 1.0)
    throw std::domain_error("ladder: t must lie in (0, 1]");
}

// theta_0 ... theta_K with tan(theta_k) = (-1)^k t^{k + 1/2}. Signs
// alternate starting positive; every cos(theta_k) is positive.
struct LadderAngles {
  std::vector<double> thetas;

  int steps() const { return static_cast<int>(thetas.size()) - 1; }
};

inline LadderAngles ladder_angles(int k, double t) {
  validate_ladder_domain(k, t);
  LadderAngles angles;
  angles.thetas.reserve(static_cast<std::size_t>(k) + 1);
  for (int step = 0; step <= k; ++step) {
    const double magnitude = std::pow(t, step + 0.5);
    angles.thetas.push_back(std::atan(step % 2 == 0 ? magnitude : -magnitude));
  }
  return angles;
}

// Hardy fraction P(a_K, b_K) of the phase-pi state at the matched angle
// schedule, in closed form:
//
//   t^2 (t^{2K} - 1)^2 / [ (t^{2K+1} + 1)^2 (1 + t^2) ].
inline double hardy_fraction_closed_form(int k, double t) {
  validate_ladder_domain(k, t);
  const double t_even = std::pow(t, 2 * k);
  const double t_odd = std::pow(t, 2 * k + 1);
  const double numerator = t * t * (t_even - 1.0) * (t_even - 1.0);
  const double denominator = (t_odd + 1.0) * (t_odd + 1.0) * (1.0 + t * t);
  return numerator / denominator;
}

// The 2K+1 probabilities that the ladder argument needs to vanish, in the
// order [ P(a_0,b_0), then P(~a_{k-1}, b_k), P(a_k, ~b_{k-1}) for k=1..K ].
// All are algebraic zeros when the angles match the state's t, phi = pi and
// V = 1; nothing here assumes that, so the same call measures how badly a
// mismatched or noisy configuration misses.
inline std::vector<double> condition_residuals(const NoisyState& state,
                                               const LadderAngles& angles) {
  const int k_max = angles.steps();
  if (k_max < 1) throw std::domain_error("condition_residuals: need at least two angles");
  std::vector<double> residuals;
  residuals.reserve(2 * static_cast<std::size_t>(k_max) + 1);
  residuals.push_back(noisy_joint_probability(state, alice_setting(angles.thetas[0]),
                                              bob_setting(angles.thetas[0]), Outcome::plus,
                                              Outcome::plus));
  for (int k = 1; k <= k_max; ++k) {
    residuals.push_back(noisy_joint_probability(state, alice_setting(angles.thetas[k - 1]),
                                                bob_setting(angles.thetas[k]), Outcome::minus,
                                                Outcome::plus));
    residuals.push_back(noisy_joint_probability(state, alice_setting(angles.thetas[k]),
                                                bob_setting(angles.thetas[k - 1]), Outcome::plus,
                                                Outcome::minus));
  }
  return residuals;
}

inline double s_statistic(double hardy_fraction, double bottom,
                          std::span<const double> side_terms) {
  const auto check = [](double p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("s_statistic: every probability must lie in [0, 1]");
  };
  check(hardy_fraction);
  check(bottom);
  double s = hardy_fraction - bottom;
  for (const double p : side_terms) {
    check(p);
    s -= p;
  }
  return s;
}

// One-sigma uncertainties attached to a simulated HardyReport; layout
// parallels the report itself.
struct HardyUncertainties {
  double hardy_fraction = 0.0;
  double bottom = 0.0;
  std::vector<double> side_terms;
  double s_value = 0.0;
};

struct HardyReport {
  double hardy_fraction = 0.0;     // P(a_K, b_K)
  double bottom = 0.0;             // P(a_0, b_0)
  std::vector<double> side_terms;  // P(~a_{k-1}, b_k), P(a_k, ~b_{k-1}) for k = 1..K
  double s_value = 0.0;
  std::optional<HardyUncertainties> uncertainties;
};

// Exact (infinite-statistics) ladder evaluation for the given phase and
// visibility. With phi = pi and V = 1 the side terms and bottom vanish and
// s_value equals hardy_fraction_closed_form(K, t).
inline HardyReport evaluate_ladder(const LadderConfig& config, double phi, double visibility) {
  validate_ladder_domain(config.k, config.t);
  const NoisyState state = make_noisy_state(make_state(config.t, phi), visibility);
  const LadderAngles angles = ladder_angles(config.k, config.t);

  HardyReport report;
  report.hardy_fraction =
      noisy_joint_probability(state, alice_setting(angles.thetas[config.k]),
                              bob_setting(angles.thetas[config.k]), Outcome::plus, Outcome::plus);
  const std::vector<double> residuals = condition_residuals(state, angles);
  report.bottom = residuals.front();
  report.side_terms.assign(residuals.begin() + 1, residuals.end());
  report.s_value = s_statistic(report.hardy_fraction, report.bottom, report.side_terms);
  return report;
}

struct OptimizeResult {
  double t_star;
  double s_star;
};

// Maximizes S_K over t in (0, 1): coarse grid with step 0.005, then
// golden-section refinement of the best bracket down to |dt| < 1e-6. The
// grid guards against bracketing mistakes near the endpoints; S_K is smooth
// and empirically unimodal on the domain.
inline OptimizeResult optimize_t(int k, double visibility, double phi) {
  if (k < 1) throw std::domain_error("optimize_t: K must be >= 1");
  const auto s_of = [k, visibility, phi](double t) {
    return evaluate_ladder(LadderConfig{k, t}, phi, visibility).s_value;
  };

  constexpr double step = 0.005;
  constexpr int n_grid = 199;  // t = 0.005, 0.010, ..., 0.995
  double best_t = step;
  double best_s = s_of(best_t);
  for (int i = 2; i <= n_grid; ++i) {
    const double t = i * step;
    const double s = s_of(t);
    if (s > best_s) {
      best_s = s;
      best_t = t;
    }
  }

  const double lo = std::max(best_t - step, 1e-9);
  const double hi = std::min(best_t + step, 1.0);
  const OptimumPoint refined = golden_section_maximize(s_of, lo, hi, 1e-6);
  return OptimizeResult{refined.x, refined.value};
}

// Smallest t above the optimum where S_K(t, V) stops being positive, located
// by a 0.005-step scan followed by bisection to 1e-4. Returns nullopt when
// S_K stays positive all the way up to t = 1 (or never becomes positive at
// all, in which case there is no violation to lose).
inline std::optional<double> violation_threshold(int k, double visibility, double phi) {
  const OptimizeResult optimum = optimize_t(k, visibility, phi);
  if (!(optimum.s_star > 0.0)) return std::nullopt;

  const auto s_of = [k, visibility, phi](double t) {
    return evaluate_ladder(LadderConfig{k, t}, phi, visibility).s_value;
  };

  constexpr double step = 0.005;
  const double t_end = 1.0 - 1e-9;
  double below = optimum.t_star;  // S > 0 here
  double above = -1.0;
  for (int i = 1;; ++i) {
    double t = optimum.t_star + i * step;
    const bool last = t >= t_end;
    if (last) t = t_end;
    if (s_of(t) <= 0.0) {
      above = t;
      break;
    }
    below = t;
    if (last) break;
  }
  if (above < 0.0) return std::nullopt;

  while (above - below > 1e-4) {
    const double mid = 0.5 * (below + above);
    if (s_of(mid) <= 0.0)
      above = mid;
    else
      below = mid;
  }
  return 0.5 * (below + above);
}

}  // namespace hardy

#endif  // HARDY_LADDER_HPP
