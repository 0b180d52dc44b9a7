// Copyright 2026 The qwg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwg/noon.hpp"

#include <random>

#include "gtest/gtest.h"

namespace qwg {
namespace {

TwoPhotonDensityMatrix pure_noon() {
  Eigen::Vector3cd psi;
  psi << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
  return TwoPhotonDensityMatrix(psi * psi.adjoint());
}

TwoPhotonDensityMatrix random_density_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::Matrix3cd a;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = Complex(unit(rng), unit(rng));
  }
  const Eigen::Matrix3cd gram = a * a.adjoint();
  return TwoPhotonDensityMatrix(gram / gram.trace().real());
}

TEST(TwoPhotonDensityMatrixTest, AcceptsValidRejectsInvalid) {
  EXPECT_NO_THROW(pure_noon());
  EXPECT_NO_THROW(TwoPhotonDensityMatrix(
      (Eigen::Vector3d(0.25, 0.5, 0.25)).asDiagonal().toDenseMatrix().cast<Complex>()));

  Eigen::Matrix3cd not_hermitian = Eigen::Matrix3cd::Identity() / 3.0;
  not_hermitian(0, 2) = Complex(0.1, 0.0);
  EXPECT_THROW(TwoPhotonDensityMatrix{not_hermitian}, std::invalid_argument);

  EXPECT_THROW(
      TwoPhotonDensityMatrix{Eigen::Matrix3cd(Eigen::Matrix3cd::Identity() / 2.0)},
      std::invalid_argument);  // trace 1.5

  Eigen::Matrix3cd indefinite = Eigen::Matrix3cd::Zero();
  indefinite(0, 0) = 0.5;
  indefinite(2, 2) = 0.5;
  indefinite(0, 2) = 0.7;  // exceeds sqrt(rho_20 rho_02) = 0.5
  indefinite(2, 0) = 0.7;
  EXPECT_THROW(TwoPhotonDensityMatrix{indefinite}, std::invalid_argument);

  const TwoPhotonDensityMatrix rho = pure_noon();
  EXPECT_NEAR(rho.population(kIndex20), 0.5, 1e-15);
  EXPECT_NEAR(rho.population(kIndex11), 0.0, 1e-15);
  EXPECT_NEAR(rho(kIndex20, kIndex02).real(), -0.5, 1e-15);
}

TEST(NoonStateTest, BalancedCouplerGivesExactSuperposition) {
  const AmplitudeVector state = noon_state(0.5);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT(std::abs(state.amplitude({2, 0}) - Complex(r, 0.0)), 1e-15);
  EXPECT_LT(std::abs(state.amplitude({1, 1})), 1e-15);
  EXPECT_LT(std::abs(state.amplitude({0, 2}) + Complex(r, 0.0)), 1e-15);
}

TEST(NoonStateTest, GeneralEtaAmplitudes) {
  const double eta = 0.534;
  const double t = std::sqrt(eta);
  const double c = std::sqrt(1.0 - eta);
  const AmplitudeVector state = noon_state(eta);
  EXPECT_NEAR(std::abs(state.amplitude({2, 0}) - Complex(std::sqrt(2.0) * t * c, 0.0)),
              0.0, 1e-14);
  EXPECT_NEAR(std::abs(state.amplitude({1, 1}) - Complex(1.0 - 2.0 * eta, 0.0)), 0.0,
              1e-14);
  EXPECT_NEAR(std::abs(state.amplitude({0, 2}) + Complex(std::sqrt(2.0) * t * c, 0.0)),
              0.0, 1e-14);
  // The residual distinguishing probability is (1 - 2 eta)^2.
  EXPECT_NEAR(noon_state(0.45).probability({1, 1}), 0.01, 1e-15);
}

TEST(NoonStateTest, SecondBalancedCouplerRevivesCoincidence) {
  const Eigen::Matrix3cd w =
      internal::two_photon_sector_unitary(signed_coupler_unitary(0.5));
  const AmplitudeVector state = noon_state(0.5);
  Eigen::Vector3cd psi;
  psi << state.amplitudes(kIndex20), state.amplitudes(kIndex11),
      state.amplitudes(kIndex02);
  const Eigen::Vector3cd out = w * psi;
  EXPECT_NEAR(std::norm(out(kIndex11)), 1.0, 1e-14);
  EXPECT_LT(std::abs(out(kIndex20)), 1e-14);
  EXPECT_LT(std::abs(out(kIndex02)), 1e-14);
}

TEST(FidelityToNoonTest, KnownValues) {
  EXPECT_NEAR(fidelity_to_noon(pure_noon()), 1.0, 1e-15);

  Eigen::Matrix3cd coincidence_only = Eigen::Matrix3cd::Zero();
  coincidence_only(kIndex11, kIndex11) = 1.0;
  EXPECT_NEAR(fidelity_to_noon(TwoPhotonDensityMatrix(coincidence_only)), 0.0, 1e-15);

  Eigen::Matrix3cd no_coherence = Eigen::Matrix3cd::Zero();
  no_coherence(kIndex20, kIndex20) = 0.5;
  no_coherence(kIndex02, kIndex02) = 0.5;
  EXPECT_NEAR(fidelity_to_noon(TwoPhotonDensityMatrix(no_coherence)), 0.5, 1e-15);

  // The orthogonal superposition (|20> + |02>)/sqrt(2) has zero fidelity.
  Eigen::Vector3cd plus;
  plus << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(fidelity_to_noon(TwoPhotonDensityMatrix(plus * plus.adjoint())), 0.0,
              1e-15);
}

TEST(CascadedDetectionTest, ValuesAndValidation) {
  EXPECT_DOUBLE_EQ(cascaded_detection_prob(0, 0.5, 0.7), 0.0);
  EXPECT_DOUBLE_EQ(cascaded_detection_prob(1, 0.5, 0.7), 0.0);
  EXPECT_NEAR(cascaded_detection_prob(2, 0.5, 0.7), 2.0 * 0.25 * 0.49, 1e-15);
  EXPECT_NEAR(cascaded_detection_prob(2, 0.3, 1.0), 2.0 * 0.3 * 0.7, 1e-15);
  EXPECT_THROW(cascaded_detection_prob(3, 0.5, 0.7), std::invalid_argument);
  EXPECT_THROW(cascaded_detection_prob(-1, 0.5, 0.7), std::invalid_argument);
  EXPECT_THROW(cascaded_detection_prob(2, 0.0, 0.7), std::invalid_argument);
  EXPECT_THROW(cascaded_detection_prob(2, 1.0, 0.7), std::invalid_argument);
  EXPECT_THROW(cascaded_detection_prob(2, 0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(cascaded_detection_prob(2, 0.5, 1.1), std::invalid_argument);
}

TEST(SynthesizeCountRecordTest, PureNoonRates) {
  const NoonCountRecord record = synthesize_count_record(pure_noon(), 1000.0);
  // cascade = 2 * 0.5 * 0.5 * 0.7^2 = 0.245, e^2 = 0.49.
  EXPECT_NEAR(record.tap_coincidence_rate, 0.0, 1e-12);
  EXPECT_NEAR(record.tap_bunched_rates[0], 1000.0 * 0.5 * 0.245, 1e-9);
  EXPECT_NEAR(record.tap_bunched_rates[1], 1000.0 * 0.5 * 0.245, 1e-9);
  // The ideal second coupler maps the state back to |11> with certainty.
  EXPECT_NEAR(record.out_coincidence_rate, 1000.0 * 0.49, 1e-9);
  EXPECT_NEAR(record.out_bunched_rates[0], 0.0, 1e-9);
  EXPECT_NEAR(record.out_bunched_rates[1], 0.0, 1e-9);
  EXPECT_THROW(synthesize_count_record(pure_noon(), 0.0), std::invalid_argument);
}

TEST(EstimateDensityMatrixTest, RecoversPureNoonExactly) {
  const NoonEstimate estimate =
      estimate_density_matrix(synthesize_count_record(pure_noon(), 1000.0));
  EXPECT_NEAR(estimate.fidelity_lower_bound, 1.0, 1e-12);
  EXPECT_NEAR(estimate.rho.population(kIndex20), 0.5, 1e-12);
  EXPECT_NEAR(estimate.rho.population(kIndex11), 0.0, 1e-12);
  EXPECT_NEAR(estimate.rho(kIndex20, kIndex02).real(), -0.5, 1e-12);
}

TEST(EstimateDensityMatrixTest, RecoversWrongPhaseCoherence) {
  Eigen::Vector3cd plus;
  plus << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  const TwoPhotonDensityMatrix rho(plus * plus.adjoint());
  const NoonEstimate estimate =
      estimate_density_matrix(synthesize_count_record(rho, 500.0));
  // The out coincidence vanishes, so the coherence estimate pins to the
  // positive-real (zero-fidelity) phase.
  EXPECT_NEAR(estimate.rho(kIndex20, kIndex02).real(), 0.5, 1e-12);
  EXPECT_NEAR(estimate.fidelity_lower_bound, 0.0, 1e-12);
  EXPECT_NEAR(fidelity_to_noon(rho), 0.0, 1e-15);
}

TEST(EstimateDensityMatrixTest, DiagonalStatesAreTight) {
  Eigen::Matrix3cd lopsided = Eigen::Matrix3cd::Zero();
  lopsided(kIndex20, kIndex20) = 1.0;
  const TwoPhotonDensityMatrix rho(lopsided);
  const NoonEstimate estimate =
      estimate_density_matrix(synthesize_count_record(rho, 500.0));
  // With rho_02 = 0 the coherence cap is zero and the bound equals the truth.
  EXPECT_NEAR(estimate.fidelity_lower_bound, fidelity_to_noon(rho), 1e-12);
  EXPECT_NEAR(estimate.fidelity_lower_bound, 0.5, 1e-12);
}

TEST(EstimateDensityMatrixTest, LowerBoundSoundOnRandomStates) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const TwoPhotonDensityMatrix rho = random_density_matrix(rng);
    const NoonEstimate estimate =
        estimate_density_matrix(synthesize_count_record(rho, 2000.0));
    EXPECT_LE(estimate.fidelity_lower_bound, fidelity_to_noon(rho) + 1e-9)
        << "trial " << trial;
    // Populations are read back exactly from the corrected tap rates.
    EXPECT_NEAR(estimate.rho.population(kIndex20), rho.population(kIndex20), 1e-12);
    EXPECT_NEAR(estimate.rho.population(kIndex11), rho.population(kIndex11), 1e-12);
    EXPECT_NEAR(estimate.rho.population(kIndex02), rho.population(kIndex02), 1e-12);
  }
}

TEST(EstimateDensityMatrixTest, ValidationErrors) {
  NoonCountRecord record = synthesize_count_record(pure_noon(), 1000.0);
  record.detector_efficiency = 0.0;
  EXPECT_THROW(estimate_density_matrix(record), std::invalid_argument);

  record = synthesize_count_record(pure_noon(), 1000.0);
  record.splitter_ratio = 1.0;
  EXPECT_THROW(estimate_density_matrix(record), std::invalid_argument);

  record = synthesize_count_record(pure_noon(), 1000.0);
  record.tap_coincidence_rate = -1.0;
  EXPECT_THROW(estimate_density_matrix(record), std::invalid_argument);

  record = NoonCountRecord{};
  record.out_coincidence_rate = 10.0;
  EXPECT_THROW(estimate_density_matrix(record), std::runtime_error);  // no tap counts

  record = NoonCountRecord{};
  record.tap_coincidence_rate = 10.0;
  EXPECT_THROW(estimate_density_matrix(record), std::runtime_error);  // no out counts
}

TEST(NoonChainTest, IdealChainStateAndBound) {
  const NoonChainSpec ideal;
  const TwoPhotonDensityMatrix inside = noon_chain_inside_state(ideal);
  EXPECT_NEAR(fidelity_to_noon(inside), 1.0, 1e-12);

  const NoonCountRecord record = simulate_noon_chain(ideal);
  EXPECT_NEAR(record.tap_coincidence_rate, 0.0, 1e-12);
  // pair flux = 4000 * 0.6^2 = 1440; out coincidence = flux * e^2.
  EXPECT_NEAR(record.out_coincidence_rate, 1440.0 * 0.49, 1e-9);

  const NoonEstimate estimate = estimate_density_matrix(record);
  EXPECT_LT(1.0 - estimate.fidelity_lower_bound, 1e-12);
}

TEST(NoonChainTest, ImperfectChainFrozenNumbers) {
  NoonChainSpec spec;
  spec.delta_eta = 0.034;
  spec.epsilon = 0.052;

  const double eta = 0.534;
  const double tc2 = eta * (1.0 - eta);  // t^2 c^2
  const double indist = 1.0 - spec.epsilon;

  const TwoPhotonDensityMatrix inside = noon_chain_inside_state(spec);
  const double expected_p20 = indist * 2.0 * tc2 + spec.epsilon * tc2;
  EXPECT_NEAR(inside.population(kIndex20), expected_p20, 1e-12);
  EXPECT_NEAR(inside.population(kIndex02), expected_p20, 1e-12);
  const double expected_p11 =
      indist * (1.0 - 2.0 * eta) * (1.0 - 2.0 * eta) +
      spec.epsilon * (eta * eta + (1.0 - eta) * (1.0 - eta));
  EXPECT_NEAR(inside.population(kIndex11), expected_p11, 1e-12);
  // Only the interfering branch contributes coherence.
  EXPECT_NEAR(inside(kIndex20, kIndex02).real(), -indist * 2.0 * tc2, 1e-12);
  const double f_true = fidelity_to_noon(inside);
  EXPECT_NEAR(f_true, 0.956556336, 1e-9);

  const NoonEstimate estimate = estimate_density_matrix(simulate_noon_chain(spec));
  EXPECT_NEAR(estimate.fidelity_lower_bound, 0.951564421840896, 1e-9);
  EXPECT_GT(estimate.fidelity_lower_bound, 0.92);
  // The imperfect second coupler only loses revival, so the bound stays a
  // lower bound for the state at the tap.
  EXPECT_LE(estimate.fidelity_lower_bound, f_true + 1e-9);
  // Tap populations survive the estimate exactly.
  EXPECT_NEAR(estimate.rho.population(kIndex20), expected_p20, 1e-12);
  EXPECT_NEAR(estimate.rho.population(kIndex11), expected_p11, 1e-12);
}

TEST(NoonChainTest, RejectsBadParameters) {
  NoonChainSpec spec;
  spec.transmission = 0.0;
  EXPECT_THROW(simulate_noon_chain(spec), std::invalid_argument);
  spec.transmission = 1.5;
  EXPECT_THROW(simulate_noon_chain(spec), std::invalid_argument);
  spec = NoonChainSpec{};
  spec.pair_rate = -1.0;
  EXPECT_THROW(simulate_noon_chain(spec), std::invalid_argument);
}

}  // namespace
}  // namespace qwg
