#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hardy/state.hpp"

using namespace hardy;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent closed form for the Hardy fraction at the matched angles,
// frozen from a high-precision evaluation.
constexpr double kFractionAtPoint46 = 0.09015096408745567;
}  // namespace

TEST_CASE("make_state normalizes the amplitudes") {
  const PureState symmetric = make_state(1.0, kPi);
  REQUIRE(std::abs(symmetric.alpha - 0.7071067811865475) < 1e-12);
  REQUIRE(std::abs(symmetric.beta - 0.7071067811865475) < 1e-12);

  const PureState hardy = make_state(0.46, kPi);
  REQUIRE(std::abs(hardy.alpha - 0.46 / std::hypot(1.0, 0.46)) < 1e-15);
  REQUIRE(std::abs(hardy.beta - 1.0 / std::hypot(1.0, 0.46)) < 1e-15);
  REQUIRE(std::abs(hardy.alpha - 0.4179056082321443) < 1e-12);
  REQUIRE(std::abs(hardy.beta - 0.9084904526785747) < 1e-12);

  for (const double t : {0.05, 0.46, 1.0, 3.7, 250.0, 1e200}) {
    const PureState state = make_state(t, 0.3);
    REQUIRE(std::abs(state.alpha * state.alpha + state.beta * state.beta - 1.0) < 1e-12);
    REQUIRE(std::abs(state.alpha / state.beta - t) < 1e-12 * t);
  }
}

TEST_CASE("make_state rejects out-of-domain parameters") {
  REQUIRE_THROWS_AS(make_state(0.0, kPi), std::domain_error);
  REQUIRE_THROWS_AS(make_state(-1.0, kPi), std::domain_error);
  REQUIRE_THROWS_AS(make_state(std::numeric_limits<double>::infinity(), kPi), std::domain_error);
  REQUIRE_THROWS_AS(make_state(std::nan(""), kPi), std::domain_error);
  REQUIRE_THROWS_AS(make_state(0.5, std::nan("")), std::domain_error);
  REQUIRE_THROWS_AS(make_noisy_state(make_state(0.5, kPi), -0.01), std::domain_error);
  REQUIRE_THROWS_AS(make_noisy_state(make_state(0.5, kPi), 1.01), std::domain_error);
}

TEST_CASE("basis amplitudes follow the analyzer convention") {
  const BasisAmplitudes plus0 = basis_amplitudes(0.0, Outcome::plus);
  REQUIRE(plus0.s == 1.0);
  REQUIRE(plus0.l == 0.0);

  const BasisAmplitudes minus0 = basis_amplitudes(0.0, Outcome::minus);
  REQUIRE(minus0.s == 0.0);
  REQUIRE(minus0.l == -1.0);

  const BasisAmplitudes diag = basis_amplitudes(kPi / 4.0, Outcome::plus);
  REQUIRE(std::abs(diag.s - 0.70710678118654752) < 1e-12);
  REQUIRE(std::abs(diag.l - 0.70710678118654752) < 1e-12);

  for (int i = -20; i <= 20; ++i) {
    const double theta = 0.157 * i;
    for (const Outcome outcome : {Outcome::plus, Outcome::minus}) {
      const BasisAmplitudes u = basis_amplitudes(theta, outcome);
      REQUIRE(std::abs(u.s * u.s + u.l * u.l - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("analyzer settings normalize into (-pi/2, pi/2]") {
  REQUIRE(std::abs(make_setting(0.3, Party::alice).theta - 0.3) < 1e-15);
  REQUIRE(std::abs(make_setting(0.3 + kPi, Party::alice).theta - 0.3) < 1e-12);
  REQUIRE(std::abs(make_setting(0.3 - 3.0 * kPi, Party::bob).theta - 0.3) < 1e-12);
  REQUIRE(make_setting(-kPi / 2.0, Party::alice).theta > 0.0);
  REQUIRE_THROWS_AS(make_setting(std::nan(""), Party::alice), std::domain_error);

  // A pi shift only flips the basis sign, so probabilities cannot move.
  const NoisyState state = make_noisy_state(make_state(0.7, 1.1), 0.9);
  const double before = noisy_joint_probability(state, alice_setting(0.4), bob_setting(-0.2),
                                                Outcome::plus, Outcome::minus);
  const double after = noisy_joint_probability(state, alice_setting(0.4 + kPi),
                                               bob_setting(-0.2 - kPi), Outcome::plus,
                                               Outcome::minus);
  REQUIRE(std::abs(before - after) < 1e-12);
}

TEST_CASE("joint probabilities follow the Born rule") {
  const PureState symmetric = make_state(1.0, kPi);
  REQUIRE(std::abs(joint_probability(symmetric, alice_setting(0.0), bob_setting(0.0),
                                     Outcome::plus, Outcome::plus) -
                   0.5) < 1e-12);
  // Interference null of the phase-pi state at 45 degrees.
  REQUIRE(joint_probability(symmetric, alice_setting(kPi / 4.0), bob_setting(kPi / 4.0),
                            Outcome::plus, Outcome::plus) < 1e-12);

  // Hardy point: the Born value at the matched top angle must agree with the
  // frozen closed-form number.
  const PureState hardy = make_state(0.46, kPi);
  const double theta1 = std::atan(-std::pow(0.46, 1.5));
  const double fraction = joint_probability(hardy, alice_setting(theta1), bob_setting(theta1),
                                            Outcome::plus, Outcome::plus);
  REQUIRE(std::abs(fraction - kFractionAtPoint46) < 1e-13);
  REQUIRE(std::abs(fraction - 0.0901) < 1e-4);
}

TEST_CASE("visibility damps only the interference term") {
  const PureState symmetric = make_state(1.0, kPi);
  const AnalyzerSetting a = alice_setting(kPi / 4.0);
  const AnalyzerSetting b = bob_setting(kPi / 4.0);

  // V = 1 reduces to the pure value exactly.
  const NoisyState clean = make_noisy_state(symmetric, 1.0);
  for (const Outcome oa : {Outcome::plus, Outcome::minus})
    for (const Outcome ob : {Outcome::plus, Outcome::minus})
      REQUIRE(noisy_joint_probability(clean, a, b, oa, ob) ==
              joint_probability(symmetric, a, b, oa, ob));

  // At the interference null the (+,+) probability is (1 - V) / 4.
  for (const double v : {0.0, 0.5, 0.96, 1.0}) {
    const NoisyState noisy = make_noisy_state(symmetric, v);
    REQUIRE(std::abs(noisy_joint_probability(noisy, a, b, Outcome::plus, Outcome::plus) -
                     (1.0 - v) / 4.0) < 1e-15);
  }

  // Diagonal outcomes carry no interference and ignore dephasing.
  const NoisyState fully_dephased = make_noisy_state(symmetric, 0.0);
  REQUIRE(std::abs(noisy_joint_probability(fully_dephased, alice_setting(0.0), bob_setting(0.0),
                                           Outcome::plus, Outcome::plus) -
                   0.5) < 1e-15);
}

TEST_CASE("distributions are normalized, no-signaling and phase periodic") {
  const NoisyState clean = make_noisy_state(make_state(1.0, kPi), 1.0);
  const JointDistribution correlated = distribution(clean, alice_setting(0.0), bob_setting(0.0));
  REQUIRE(std::abs(correlated.p_pp - 0.5) < 1e-12);
  REQUIRE(correlated.p_pm < 1e-12);
  REQUIRE(correlated.p_mp < 1e-12);
  REQUIRE(std::abs(correlated.p_mm - 0.5) < 1e-12);

  const JointDistribution anticorrelated =
      distribution(clean, alice_setting(kPi / 4.0), bob_setting(kPi / 4.0));
  REQUIRE(anticorrelated.p_pp < 1e-12);
  REQUIRE(std::abs(anticorrelated.p_pm - 0.5) < 1e-12);
  REQUIRE(std::abs(anticorrelated.p_mp - 0.5) < 1e-12);
  REQUIRE(anticorrelated.p_mm < 1e-12);

  std::mt19937 gen(20260810u);
  std::uniform_real_distribution<double> ratio(0.02, 4.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const NoisyState state =
        make_noisy_state(make_state(ratio(gen), angle(gen)), unit(gen));
    const AnalyzerSetting a = alice_setting(angle(gen));
    const AnalyzerSetting b = bob_setting(angle(gen));
    const JointDistribution dist = distribution(state, a, b);

    for (const double entry : {dist.p_pp, dist.p_pm, dist.p_mp, dist.p_mm}) {
      REQUIRE(entry >= 0.0);
      REQUIRE(entry <= 1.0 + 1e-12);
    }
    REQUIRE(std::abs(dist.p_pp + dist.p_pm + dist.p_mp + dist.p_mm - 1.0) < 1e-12);

    // Alice's marginal cannot depend on Bob's dial (and vice versa).
    const AnalyzerSetting b_other = bob_setting(angle(gen));
    const JointDistribution moved = distribution(state, a, b_other);
    REQUIRE(std::abs(marginal_a_plus(dist) - marginal_a_plus(moved)) < 1e-12);
    const AnalyzerSetting a_other = alice_setting(angle(gen));
    const JointDistribution moved_a = distribution(state, a_other, b);
    REQUIRE(std::abs(marginal_b_plus(dist) - marginal_b_plus(moved_a)) < 1e-12);

    // 2-pi phase periodicity.
    const NoisyState shifted = make_noisy_state(
        make_state(state.pure.t, state.pure.phi + 2.0 * kPi), state.visibility);
    const JointDistribution periodic = distribution(shifted, a, b);
    REQUIRE(std::abs(periodic.p_pp - dist.p_pp) < 1e-12);
    REQUIRE(std::abs(periodic.p_pm - dist.p_pm) < 1e-12);
  }
}
