#ifndef HARDY_APPARATUS_HPP
#define HARDY_APPARATUS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hardy/ladder.hpp"
#include "hardy/random.hpp"
#include "hardy/state.hpp"

// Optical-bench view of the abstract test, and finite-statistics simulation
// of it. The state ratio t is set by the preparation beam splitters through
// sqrt(T_A T_B / (R_A R_B)) = t; each analyzer angle theta_k maps onto a
// half-wave plate at theta_k / 2 feeding a splitter with sqrt(R) =
// sin(theta_k), sqrt(T) = cos(theta_k). Probabilities are estimated from
// coincidence counts as P = C(outcome) / C_TOT.

namespace hardy {

struct PreparationOptics {
  double vbs1_T_a;  // VBS1 transmittivities; reflectivity is 1 - T per arm
  double vbs1_T_b;
  double hwp1_a;  // HWP1 angles [rad]; transmitted H -> short, reflected V -> long
  double hwp1_b;
};

struct AnalyzerOptics {
  double hwp2;    // theta_k / 2 [rad]
  double vbs2_R;  // sin^2(theta_k), derived as 1 - T so R + T = 1 exactly
  double vbs2_T;  // cos^2(theta_k)
};

struct OpticalSettings {
  PreparationOptics preparation;
  double phase = 0.0;  // interferometer phase [rad]
  std::vector<AnalyzerOptics> analyzers;  // one per ladder setting 0..K
};

// Symmetric preparation split T_a = T_b = t / (1 + t), with HWP1 at
// tan(2h) = 1 / sqrt(t) per arm so that cot(2h_a) cot(2h_b) = t.
inline PreparationOptics settings_for_state(double t) {
  if (!std::isfinite(t) || t <= 0.0 || t > 1.0)
    throw std::domain_error("settings_for_state: t must lie in (0, 1]");
  const double transmit = t / (1.0 + t);
  const double hwp = 0.5 * std::atan(1.0 / std::sqrt(t));
  return PreparationOptics{transmit, transmit, hwp, hwp};
}

inline AnalyzerOptics analyzer_settings(double theta_k) {
  const double c = std::cos(theta_k);
  const double transmit = c * c;
  return AnalyzerOptics{0.5 * theta_k, 1.0 - transmit, transmit};
}

inline OpticalSettings optical_settings(const LadderConfig& config, double phi) {
  OpticalSettings settings{settings_for_state(config.t), phi, {}};
  const LadderAngles angles = ladder_angles(config.k, config.t);
  settings.analyzers.reserve(angles.thetas.size());
  for (const double theta : angles.thetas) settings.analyzers.push_back(analyzer_settings(theta));
  return settings;
}

// Coincidence counts for one setting pair. setting_a / setting_b are the
// ladder indices (i, j); fillers that only have a distribution leave them
// at -1.
struct CountRecord {
  int setting_a = -1;
  int setting_b = -1;
  std::uint64_t c_pp = 0;
  std::uint64_t c_pm = 0;
  std::uint64_t c_mp = 0;
  std::uint64_t c_mm = 0;
  std::uint64_t seed = 0;

  std::uint64_t total() const { return c_pp + c_pm + c_mp + c_mm; }

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

// Draws n coincidences from the four-outcome distribution by CDF inversion
// of uniform_unit draws. Identical (dist, n, seed) give identical counts.
inline CountRecord simulate_counts(const JointDistribution& dist, std::uint64_t n,
                                   std::uint64_t seed) {
  if (n < 1) throw std::domain_error("simulate_counts: need n >= 1");
  const double sum = dist.p_pp + dist.p_pm + dist.p_mp + dist.p_mm;
  const bool entries_ok =
      dist.p_pp >= 0.0 && dist.p_pm >= 0.0 && dist.p_mp >= 0.0 && dist.p_mm >= 0.0;
  if (!entries_ok || std::abs(sum - 1.0) > 1e-9)
    throw std::domain_error("simulate_counts: distribution is not normalized");

  const double edge_pp = dist.p_pp;
  const double edge_pm = edge_pp + dist.p_pm;
  const double edge_mp = edge_pm + dist.p_mp;

  CountRecord record;
  record.seed = seed;
  std::mt19937_64 gen(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = uniform_unit(gen);
    if (u < edge_pp)
      ++record.c_pp;
    else if (u < edge_pm)
      ++record.c_pm;
    else if (u < edge_mp)
      ++record.c_mp;
    else
      ++record.c_mm;
  }
  return record;
}

// P = C / C_TOT with a binomial one-sigma error bar.
struct Estimate {
  double p;
  double sigma;
};

inline Estimate estimate_probability(const CountRecord& record, Outcome outcome_a,
                                     Outcome outcome_b) {
  const std::uint64_t total = record.total();
  if (total == 0) throw std::domain_error("estimate_probability: no counts recorded");
  std::uint64_t count = record.c_mm;
  if (outcome_a == Outcome::plus)
    count = outcome_b == Outcome::plus ? record.c_pp : record.c_pm;
  else if (outcome_b == Outcome::plus)
    count = record.c_mp;
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(count) / n;
  return Estimate{p, std::sqrt(p * (1.0 - p) / n)};
}

// Finite-count Hardy run: for each of the 2K+2 setting pairs the statistic
// needs, draw n_per_setting coincidences (sub-seed derived from the master
// seed and the pair's position), estimate the required probability, and
// assemble S_K with sigma_S^2 = sum of the term variances (settings are
// sampled independently).
inline HardyReport simulated_report(const LadderConfig& config, double phi, double visibility,
                                    std::uint64_t n_per_setting, std::uint64_t seed) {
  validate_ladder_domain(config.k, config.t);
  const NoisyState state = make_noisy_state(make_state(config.t, phi), visibility);
  const LadderAngles angles = ladder_angles(config.k, config.t);

  struct Term {
    int i;
    int j;
    Outcome outcome_a;
    Outcome outcome_b;
  };
  std::vector<Term> terms;
  terms.reserve(2 * static_cast<std::size_t>(config.k) + 2);
  terms.push_back({config.k, config.k, Outcome::plus, Outcome::plus});  // Hardy fraction
  terms.push_back({0, 0, Outcome::plus, Outcome::plus});                // bottom
  for (int k = 1; k <= config.k; ++k) {
    terms.push_back({k - 1, k, Outcome::minus, Outcome::plus});
    terms.push_back({k, k - 1, Outcome::plus, Outcome::minus});
  }

  std::vector<Estimate> estimates;
  estimates.reserve(terms.size());
  for (std::size_t ordinal = 0; ordinal < terms.size(); ++ordinal) {
    const Term& term = terms[ordinal];
    const JointDistribution dist = distribution(state, alice_setting(angles.thetas[term.i]),
                                                bob_setting(angles.thetas[term.j]));
    CountRecord record = simulate_counts(dist, n_per_setting, derive_subseed(seed, ordinal));
    record.setting_a = term.i;
    record.setting_b = term.j;
    estimates.push_back(estimate_probability(record, term.outcome_a, term.outcome_b));
  }

  HardyReport report;
  HardyUncertainties sigmas;
  report.hardy_fraction = estimates[0].p;
  sigmas.hardy_fraction = estimates[0].sigma;
  report.bottom = estimates[1].p;
  sigmas.bottom = estimates[1].sigma;
  double variance = estimates[0].sigma * estimates[0].sigma +
                    estimates[1].sigma * estimates[1].sigma;
  for (std::size_t s = 2; s < estimates.size(); ++s) {
    report.side_terms.push_back(estimates[s].p);
    sigmas.side_terms.push_back(estimates[s].sigma);
    variance += estimates[s].sigma * estimates[s].sigma;
  }
  report.s_value = s_statistic(report.hardy_fraction, report.bottom, report.side_terms);
  sigmas.s_value = std::sqrt(variance);
  report.uncertainties = std::move(sigmas);
  return report;
}

}  // namespace hardy

#endif  // HARDY_APPARATUS_HPP
