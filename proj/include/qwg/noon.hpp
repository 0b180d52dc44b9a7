// Copyright 2026 The qwg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWG_NOON_HPP_
#define QWG_NOON_HPP_

#include <array>
#include <cmath>
#include <stdexcept>

#include "qwg/circuit.hpp"
#include "qwg/fock.hpp"
#include "qwg/interference.hpp"

namespace qwg {

// Basis indices of the two-mode two-photon sector, matching
// enumerate_fock_basis(2, 2).
inline constexpr int kIndex20 = 0;
inline constexpr int kIndex11 = 1;
inline constexpr int kIndex02 = 2;

// Density matrix over (|20>, |11>, |02>): Hermitian, unit trace, positive
// semidefinite, all verified on construction to 1e-9.
class TwoPhotonDensityMatrix {
 public:
  explicit TwoPhotonDensityMatrix(Eigen::Matrix3cd entries) : entries_(std::move(entries)) {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
      throw std::invalid_argument("TwoPhotonDensityMatrix: not Hermitian");
    }
    if (std::abs(entries_.trace().real() - 1.0) > 1e-9 ||
        std::abs(entries_.trace().imag()) > 1e-9) {
      throw std::invalid_argument("TwoPhotonDensityMatrix: trace must be 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(entries_);
    if (solver.eigenvalues().minCoeff() < -1e-9) {
      throw std::invalid_argument("TwoPhotonDensityMatrix: not positive semidefinite");
    }
    const double bound = std::sqrt(entries_(kIndex20, kIndex20).real() *
                                   entries_(kIndex02, kIndex02).real());
    if (std::abs(entries_(kIndex20, kIndex02)) > bound + 1e-9) {
      throw std::invalid_argument(
          "TwoPhotonDensityMatrix: |rho_{20,02}| exceeds sqrt(rho_20 rho_02)");
    }
  }

  const Eigen::Matrix3cd& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }
  double population(int index) const { return entries_(index, index).real(); }

 private:
  Eigen::Matrix3cd entries_;
};

// |11> through a coupler realized with its convention-repair phases (the
// signed convention), so eta = 1/2 yields exactly (|20> - |02>)/sqrt(2).
// Away from 1/2 the residual |11> probability is (1 - 2 eta)^2.
inline AmplitudeVector noon_state(double eta) {
  return evolve(ModeUnitary(signed_coupler_unitary(eta)), FockState{1, 1});
}

// Fidelity to the path-entangled target (|20> - |02>)/sqrt(2):
// F = (rho_{20,20} + rho_{02,02})/2 - Re(rho_{20,02}).
inline double fidelity_to_noon(const TwoPhotonDensityMatrix& rho) {
  return 0.5 * (rho.population(kIndex20) + rho.population(kIndex02)) -
         rho(kIndex20, kIndex02).real();
}

// Probability that both detectors of a splitter-plus-two-detector cascade
// fire when n photons enter the cascaded output: requires the two photons to
// split (2 s (1-s)) and both detections to succeed (e^2).
inline double cascaded_detection_prob(int n, double splitter_ratio, double efficiency) {
  if (n < 0 || n > 2) {
    throw std::invalid_argument("cascaded_detection_prob: n must be in {0, 1, 2}");
  }
  if (!(splitter_ratio > 0.0 && splitter_ratio < 1.0)) {
    throw std::invalid_argument("cascaded_detection_prob: splitter ratio must be in (0, 1)");
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("cascaded_detection_prob: efficiency must be in (0, 1]");
  }
  if (n < 2) return 0.0;
  return 2.0 * splitter_ratio * (1.0 - splitter_ratio) * efficiency * efficiency;
}

// Detected count rates for the path-entanglement experiment. "tap" rates are
// measured between the two couplers, "out" rates after the second coupler.
// The coincidence rate counts one photon in each arm; the bunched rates
// count two photons in one arm, registered through a cascade of two
// detectors behind a splitter_ratio beamsplitter.
struct NoonCountRecord {
  double tap_coincidence_rate = 0.0;
  std::array<double, 2> tap_bunched_rates{0.0, 0.0};  // {both in arm 0, both in arm 1}
  double out_coincidence_rate = 0.0;
  std::array<double, 2> out_bunched_rates{0.0, 0.0};
  double detector_efficiency = 0.70;
  double splitter_ratio = 0.5;
};

namespace internal {

// Two-photon sector transfer matrix W_{out,in} = <out|U|in> over
// (|20>, |11>, |02>).
inline Eigen::Matrix3cd two_photon_sector_unitary(const Eigen::Matrix2cd& u) {
  const ModeUnitary mode_u((Eigen::MatrixXcd(u)));
  const std::vector<FockState> basis = enumerate_fock_basis(2, 2);
  Eigen::Matrix3cd w;
  for (int out = 0; out < 3; ++out) {
    for (int in = 0; in < 3; ++in) {
      w(out, in) = transition_amplitude(mode_u, basis[in], basis[out]);
    }
  }
  return w;
}

}  // namespace internal

// Exact detected rates the measurement model predicts for a given state
// between the couplers: populations are read at the tap, and the out rates
// come from sending the state through an ideal 50:50 second coupler (signed
// convention). pair_flux is the rate of photon pairs surviving to the
// detectors, before detector efficiency.
inline NoonCountRecord synthesize_count_record(const TwoPhotonDensityMatrix& rho,
                                               double pair_flux,
                                               double detector_efficiency = 0.70,
                                               double splitter_ratio = 0.5) {
  if (!(pair_flux > 0.0)) {
    throw std::invalid_argument("synthesize_count_record: pair_flux must be positive");
  }
  const double e2 = detector_efficiency * detector_efficiency;
  const double cascade = cascaded_detection_prob(2, splitter_ratio, detector_efficiency);
  const Eigen::Matrix3cd w = internal::two_photon_sector_unitary(signed_coupler_unitary(0.5));
  const Eigen::Matrix3cd rho_out = w * rho.matrix() * w.adjoint();

  NoonCountRecord record;
  record.detector_efficiency = detector_efficiency;
  record.splitter_ratio = splitter_ratio;
  record.tap_coincidence_rate = pair_flux * rho.population(kIndex11) * e2;
  record.tap_bunched_rates = {pair_flux * rho.population(kIndex20) * cascade,
                              pair_flux * rho.population(kIndex02) * cascade};
  record.out_coincidence_rate = pair_flux * rho_out(kIndex11, kIndex11).real() * e2;
  record.out_bunched_rates = {pair_flux * rho_out(kIndex20, kIndex20).real() * cascade,
                              pair_flux * rho_out(kIndex02, kIndex02).real() * cascade};
  return record;
}

// Parameters of the two-coupler path-entanglement chain: |11> into a
// coupler, a tap measurement between the couplers, and a second coupler
// closing the interferometer. Both couplers share the design reflectivity
// and fabrication offset; epsilon is the photon-pair mode mismatch.
struct NoonChainSpec {
  double design_eta = 0.5;
  double delta_eta = 0.0;
  double epsilon = 0.0;
  double pair_rate = 4000.0;       // detected pairs per second at the source
  double transmission = 0.60;      // per-photon transmission through the device
  double detector_efficiency = 0.70;
  double splitter_ratio = 0.5;
};

// The state between the couplers: indistinguishable-pair amplitude with
// weight 1 - epsilon plus the classical (distinguishable) populations with
// weight epsilon. The distinguishable branch carries no |20><02| coherence,
// because its two photons occupy orthogonal internal states.
inline TwoPhotonDensityMatrix noon_chain_inside_state(const NoonChainSpec& spec) {
  const double eta = std::clamp(spec.design_eta + spec.delta_eta, 0.0, 1.0);
  const Eigen::Matrix2cd u = signed_coupler_unitary(eta);
  const ModeUnitary mode_u((Eigen::MatrixXcd(u)));
  const DistinguishabilitySpec d = DistinguishabilitySpec::from_mode_mismatch(spec.epsilon);
  const double i = d.indistinguishability();

  const AmplitudeVector pure = evolve(mode_u, FockState{1, 1});
  Eigen::Vector3cd psi;
  psi << pure.amplitudes(kIndex20), pure.amplitudes(kIndex11), pure.amplitudes(kIndex02);

  Eigen::Vector3d classical;
  classical << std::norm(u(0, 0)) * std::norm(u(0, 1)),
      std::norm(u(0, 0)) * std::norm(u(1, 1)) + std::norm(u(0, 1)) * std::norm(u(1, 0)),
      std::norm(u(1, 0)) * std::norm(u(1, 1));

  const Eigen::Matrix3cd rho =
      i * (psi * psi.adjoint()) + (1.0 - i) * classical.asDiagonal().toDenseMatrix().cast<Complex>();
  return TwoPhotonDensityMatrix(rho);
}

// Exact (noise-free) detected rates for the full chain. The out stage uses
// the chain's own (imperfect) second coupler, unlike synthesize_count_record
// which models the idealized measurement.
//
// The two couplers form a Mach-Zehnder with nothing between them. Each
// signed coupler stands for a bare coupler wrapped in -pi/2 phases, so two
// bare couplers in sequence appear in this gauge with a pi phase on the
// second arm between them. All detected populations equal those of the bare
// device; the gauge only fixes the coherence phase to match Eq-1-style
// bookkeeping in fidelity_to_noon.
inline NoonCountRecord simulate_noon_chain(const NoonChainSpec& spec) {
  if (!(spec.pair_rate > 0.0) || !(spec.transmission > 0.0) || spec.transmission > 1.0) {
    throw std::invalid_argument("simulate_noon_chain: invalid source or loss parameters");
  }
  const double eta = std::clamp(spec.design_eta + spec.delta_eta, 0.0, 1.0);
  const DistinguishabilitySpec d = DistinguishabilitySpec::from_mode_mismatch(spec.epsilon);
  const double pair_flux = spec.pair_rate * spec.transmission * spec.transmission;
  const double e2 = spec.detector_efficiency * spec.detector_efficiency;
  const double cascade =
      cascaded_detection_prob(2, spec.splitter_ratio, spec.detector_efficiency);

  const Eigen::Matrix2cd u1 = signed_coupler_unitary(eta);
  Eigen::Matrix2cd arm_phase = Eigen::Matrix2cd::Identity();
  arm_phase(1, 1) = -1.0;
  const Eigen::Matrix2cd full = signed_coupler_unitary(eta) * arm_phase * u1;
  const std::vector<FockState> basis = enumerate_fock_basis(2, 2);

  const auto mixture_probs = [&](const Eigen::Matrix2cd& u) {
    const ModeUnitary mode_u((Eigen::MatrixXcd(u)));
    Eigen::Vector3d probs;
    for (int k = 0; k < 3; ++k) {
      probs(k) = two_photon_mixture_probability(mode_u, 0, 1, basis[k], d);
    }
    return probs;
  };
  const Eigen::Vector3d inside = mixture_probs(u1);
  const Eigen::Vector3d outside = mixture_probs(full);

  NoonCountRecord record;
  record.detector_efficiency = spec.detector_efficiency;
  record.splitter_ratio = spec.splitter_ratio;
  record.tap_coincidence_rate = pair_flux * inside(kIndex11) * e2;
  record.tap_bunched_rates = {pair_flux * inside(kIndex20) * cascade,
                              pair_flux * inside(kIndex02) * cascade};
  record.out_coincidence_rate = pair_flux * outside(kIndex11) * e2;
  record.out_bunched_rates = {pair_flux * outside(kIndex20) * cascade,
                              pair_flux * outside(kIndex02) * cascade};
  return record;
}

struct NoonEstimate {
  TwoPhotonDensityMatrix rho;
  double fidelity_lower_bound;
};

// Worst-case density-matrix estimate from count rates.
//
// Populations come from the efficiency-corrected tap rates (the common flux
// scale cancels in the normalization). The out-coincidence revival fraction
// R bounds the usable coherence: an ideal 50:50 second coupler maps
// (|20> - |02>)/sqrt(2) to |11>, so R = (P20 + P02)/2 - Re(rho_{20,02}) +
// (terms only lowered by residual |11> population). The coherence estimate
// c = R - P11 - (P20 + P02)/2 is therefore never above the true value;
// clamping to the positivity bound sqrt(P20 P02) keeps rho physical. The
// four coherences to |11> cannot be measured in this scheme; the fidelity
// does not depend on them, and the worst case consistent with positivity is
// zero, which is what the estimate reports.
inline NoonEstimate estimate_density_matrix(const NoonCountRecord& record) {
  const double e = record.detector_efficiency;
  const double s = record.splitter_ratio;
  if (!(e > 0.0 && e <= 1.0) || !(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("estimate_density_matrix: invalid efficiency or ratio");
  }
  const std::array<double, 6> rates{
      record.tap_coincidence_rate, record.tap_bunched_rates[0],
      record.tap_bunched_rates[1], record.out_coincidence_rate,
      record.out_bunched_rates[0], record.out_bunched_rates[1]};
  for (double rate : rates) {
    if (!std::isfinite(rate) || rate < 0.0) {
      throw std::invalid_argument("estimate_density_matrix: rates must be finite and >= 0");
    }
  }
  const double e2 = e * e;
  const double cascade = cascaded_detection_prob(2, s, e);

  const double tap11 = record.tap_coincidence_rate / e2;
  const double tap20 = record.tap_bunched_rates[0] / cascade;
  const double tap02 = record.tap_bunched_rates[1] / cascade;
  const double tap_total = tap11 + tap20 + tap02;
  if (!(tap_total > 0.0)) {
    throw std::runtime_error("estimate_density_matrix: no tap counts to normalize by");
  }
  const double p20 = tap20 / tap_total;
  const double p11 = tap11 / tap_total;
  const double p02 = tap02 / tap_total;

  const double out11 = record.out_coincidence_rate / e2;
  const double out_total = out11 + record.out_bunched_rates[0] / cascade +
                           record.out_bunched_rates[1] / cascade;
  if (!(out_total > 0.0)) {
    throw std::runtime_error("estimate_density_matrix: no out counts to normalize by");
  }
  const double revival = out11 / out_total;

  const double coherence_cap = std::sqrt(p20 * p02);
  const double coherence =
      std::clamp(revival - p11 - 0.5 * (p20 + p02), -coherence_cap, coherence_cap);

  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
  rho(kIndex20, kIndex20) = p20;
  rho(kIndex11, kIndex11) = p11;
  rho(kIndex02, kIndex02) = p02;
  rho(kIndex20, kIndex02) = -coherence;
  rho(kIndex02, kIndex20) = -coherence;
  TwoPhotonDensityMatrix estimate(rho);
  return NoonEstimate{estimate, fidelity_to_noon(estimate)};
}

}  // namespace qwg

#endif  // QWG_NOON_HPP_
