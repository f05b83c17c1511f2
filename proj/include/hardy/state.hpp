#ifndef HARDY_STATE_HPP
#define HARDY_STATE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

// Two-mode (short/long path) entangled photon pair and its Born-rule
// statistics under dichotomic path analyzers. The state is
//
//   |Phi> = alpha |S_A S_B> + e^{i phi} beta |L_A L_B>,
//
// parameterized by the amplitude ratio t = alpha/beta > 0 and the
// interferometer phase phi. Analyzers project onto
//
//   |A(theta)>     = cos(theta) |S> + sin(theta) |L>   (outcome +1)
//   |A_perp(theta)> = sin(theta) |S> - cos(theta) |L>  (outcome -1)
//
// and identically for party B.

namespace hardy {

enum class Outcome : int { plus = +1, minus = -1 };

enum class Party { alice, bob };

// Normalized two-mode state. alpha and beta are derived from t; phi is the
// relative phase of the |LL> term in radians.
struct PureState {
  double t;
  double phi;
  double alpha;
  double beta;
};

inline PureState make_state(double t, double phi) {
  if (!std::isfinite(t) || t <= 0.0)
    throw std::domain_error("make_state: amplitude ratio t must be finite and > 0");
  if (!std::isfinite(phi))
    throw std::domain_error("make_state: phase must be finite");
  const double norm = std::hypot(1.0, t);
  return PureState{t, phi, t / norm, 1.0 / norm};
}

// Pure state mixed with its path-diagonal dephased counterpart:
//   rho = V |Phi><Phi| + (1 - V) (alpha^2 |SS><SS| + beta^2 |LL><LL|).
// V is the two-photon fringe visibility.
struct NoisyState {
  PureState pure;
  double visibility;
};

inline NoisyState make_noisy_state(const PureState& pure, double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::domain_error("make_noisy_state: visibility must lie in [0, 1]");
  return NoisyState{pure, visibility};
}

// One analyzer dial. theta is kept in (-pi/2, pi/2]; adding a multiple of pi
// only flips the global sign of the basis vectors, which probabilities
// cannot see.
struct AnalyzerSetting {
  double theta;
  Party party;
};

inline AnalyzerSetting make_setting(double theta, Party party) {
  if (!std::isfinite(theta))
    throw std::domain_error("make_setting: analyzer angle must be finite");
  double reduced = std::remainder(theta, std::numbers::pi);
  if (reduced <= -std::numbers::pi / 2.0) reduced += std::numbers::pi;
  return AnalyzerSetting{reduced, party};
}

inline AnalyzerSetting alice_setting(double theta) { return make_setting(theta, Party::alice); }
inline AnalyzerSetting bob_setting(double theta) { return make_setting(theta, Party::bob); }

// Components of the projected single-photon state on (|S>, |L>).
struct BasisAmplitudes {
  double s;
  double l;
};

inline BasisAmplitudes basis_amplitudes(double theta, Outcome outcome) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return outcome == Outcome::plus ? BasisAmplitudes{c, s} : BasisAmplitudes{s, -c};
}

// |<A(theta_a)| <B(theta_b)| Phi>|^2 for the requested outcome pair.
inline double joint_probability(const PureState& state, const AnalyzerSetting& setting_a,
                                const AnalyzerSetting& setting_b, Outcome outcome_a,
                                Outcome outcome_b) {
  const BasisAmplitudes ua = basis_amplitudes(setting_a.theta, outcome_a);
  const BasisAmplitudes ub = basis_amplitudes(setting_b.theta, outcome_b);
  const std::complex<double> amplitude =
      state.alpha * ua.s * ub.s + std::polar(state.beta, state.phi) * (ua.l * ub.l);
  return std::norm(amplitude);
}

// Same Born expression with the SS/LL interference term deleted.
inline double dephased_joint_probability(const PureState& state, const AnalyzerSetting& setting_a,
                                         const AnalyzerSetting& setting_b, Outcome outcome_a,
                                         Outcome outcome_b) {
  const BasisAmplitudes ua = basis_amplitudes(setting_a.theta, outcome_a);
  const BasisAmplitudes ub = basis_amplitudes(setting_b.theta, outcome_b);
  const double ss = ua.s * ub.s;
  const double ll = ua.l * ub.l;
  return state.alpha * state.alpha * ss * ss + state.beta * state.beta * ll * ll;
}

inline double noisy_joint_probability(const NoisyState& state, const AnalyzerSetting& setting_a,
                                      const AnalyzerSetting& setting_b, Outcome outcome_a,
                                      Outcome outcome_b) {
  const double pure = joint_probability(state.pure, setting_a, setting_b, outcome_a, outcome_b);
  const double dephased =
      dephased_joint_probability(state.pure, setting_a, setting_b, outcome_a, outcome_b);
  return state.visibility * pure + (1.0 - state.visibility) * dephased;
}

// The four outcome-pair probabilities at one pair of dials. Entries sum to 1
// up to rounding; no clamping is applied.
struct JointDistribution {
  double p_pp;
  double p_pm;
  double p_mp;
  double p_mm;
  double theta_a;
  double theta_b;

  double at(Outcome a, Outcome b) const {
    if (a == Outcome::plus) return b == Outcome::plus ? p_pp : p_pm;
    return b == Outcome::plus ? p_mp : p_mm;
  }
};

inline JointDistribution distribution(const NoisyState& state, const AnalyzerSetting& setting_a,
                                      const AnalyzerSetting& setting_b) {
  const auto p = [&](Outcome a, Outcome b) {
    return noisy_joint_probability(state, setting_a, setting_b, a, b);
  };
  return JointDistribution{p(Outcome::plus, Outcome::plus),   p(Outcome::plus, Outcome::minus),
                           p(Outcome::minus, Outcome::plus),  p(Outcome::minus, Outcome::minus),
                           setting_a.theta, setting_b.theta};
}

// Single-party +1 marginals, P_A(+) = P(+,+) + P(+,-) and
// P_B(+) = P(+,+) + P(-,+). No-signaling means these do not depend on the
// other party's dial.
inline double marginal_a_plus(const JointDistribution& dist) { return dist.p_pp + dist.p_pm; }
inline double marginal_b_plus(const JointDistribution& dist) { return dist.p_pp + dist.p_mp; }

}  // namespace hardy

#endif  // HARDY_STATE_HPP
