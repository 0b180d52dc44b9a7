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

#ifndef QWG_INTERFERENCE_HPP_
#define QWG_INTERFERENCE_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qwg/circuit.hpp"
#include "qwg/fock.hpp"

namespace qwg {

// Internal-state overlap gamma = <psi_1|psi_2> of the two photons.
// Indistinguishability I = |gamma|^2; mode mismatch epsilon = 1 - I.
// For two photons, evolution is exactly a mixture: with weight I the pair
// interferes fully, with weight 1 - I it behaves classically.
struct DistinguishabilitySpec {
  Complex gamma = Complex(1.0, 0.0);

  DistinguishabilitySpec() = default;
  explicit DistinguishabilitySpec(Complex overlap) : gamma(overlap) {
    if (std::abs(gamma) > 1.0 + 1e-12) {
      throw std::invalid_argument("DistinguishabilitySpec: |gamma| must be <= 1");
    }
  }

  static DistinguishabilitySpec from_indistinguishability(double i) {
    if (!(i >= 0.0 && i <= 1.0)) {
      throw std::invalid_argument("from_indistinguishability: I must be in [0, 1]");
    }
    return DistinguishabilitySpec(Complex(std::sqrt(i), 0.0));
  }

  static DistinguishabilitySpec from_mode_mismatch(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw std::invalid_argument("from_mode_mismatch: epsilon must be in [0, 1]");
    }
    return from_indistinguishability(1.0 - epsilon);
  }

  double indistinguishability() const { return std::norm(gamma); }
  double mode_mismatch() const { return 1.0 - std::norm(gamma); }
};

// Degenerate photon-pair source behind interference filters.
struct SourceSpec {
  double center_wavelength = 804e-9;  // meters
  double filter_fwhm = 2e-9;          // meters
  double pair_rate = 4000.0;          // detected pairs per second

  void validate() const {
    if (!(center_wavelength > 0.0) || !(filter_fwhm > 0.0) || !(pair_rate > 0.0)) {
      throw std::invalid_argument("SourceSpec: all fields must be positive");
    }
  }
};

// Angular-frequency standard deviation of a Gaussian spectrum with the given
// FWHM in wavelength: sigma_omega = 2 pi c dlambda / (lambda^2 sqrt(8 ln 2)).
inline double spectral_sigma_omega(const SourceSpec& source) {
  source.validate();
  constexpr double kSpeedOfLight = 299792458.0;
  return 2.0 * kPi * kSpeedOfLight * source.filter_fwhm /
         (source.center_wavelength * source.center_wavelength *
          std::sqrt(8.0 * std::log(2.0)));
}

// Coincidence probability for |11> into a single coupler:
//   P = eta^2 + (1 - eta)^2 - 2 eta (1 - eta) |gamma|^2,
// the I-weighted mixture of the interfering and classical cases.
inline double coincidence_probability(double eta, const DistinguishabilitySpec& d) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("coincidence_probability: eta must be in [0, 1]");
  }
  return eta * eta + (1.0 - eta) * (1.0 - eta) -
         2.0 * eta * (1.0 - eta) * d.indistinguishability();
}

// Dip contrast V = (max - min) / max of the coincidence rate, where max is
// the distinguishable baseline:
//   V = 2 eta (1 - eta) |gamma|^2 / (eta^2 + (1 - eta)^2).
// At eta in {0, 1} there is no dip, so the quantity is undefined.
inline double visibility(double eta, const DistinguishabilitySpec& d) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("visibility: eta must be in [0, 1]");
  }
  if (eta == 0.0 || eta == 1.0) {
    throw std::domain_error("visibility: undefined at eta in {0, 1} (no dip)");
  }
  return 2.0 * eta * (1.0 - eta) * d.indistinguishability() /
         (eta * eta + (1.0 - eta) * (1.0 - eta));
}

// Overlap at relative arrival delay tau for a Gaussian spectral model:
// gamma(tau) = gamma_floor exp(-sigma_omega^2 tau^2 / 2), so that
// I(tau) = I_floor exp(-sigma_omega^2 tau^2).
inline DistinguishabilitySpec overlap_vs_delay(double tau, const SourceSpec& source,
                                               const DistinguishabilitySpec& floor) {
  if (!std::isfinite(tau)) {
    throw std::invalid_argument("overlap_vs_delay: tau must be finite");
  }
  const double sigma = spectral_sigma_omega(source);
  return DistinguishabilitySpec(floor.gamma * std::exp(-0.5 * sigma * sigma * tau * tau));
}

// Coincidence probability versus relative photon arrival delay.
struct DelayScan {
  std::vector<double> delays;             // seconds
  std::vector<double> coincidence_probs;  // aligned with delays
};

inline DelayScan hom_scan(double eta, const SourceSpec& source,
                          const DistinguishabilitySpec& floor,
                          const std::vector<double>& delays) {
  DelayScan scan;
  scan.delays = delays;
  scan.coincidence_probs.reserve(delays.size());
  for (double tau : delays) {
    scan.coincidence_probs.push_back(
        coincidence_probability(eta, overlap_vs_delay(tau, source, floor)));
  }
  return scan;
}

// Visibility at a design reflectivity after the fabrication offset; the
// realized coupler may land on {0, 1} where visibility is undefined.
struct VisibilityPoint {
  double design_eta;
  std::optional<double> visibility;
};

inline std::vector<VisibilityPoint> visibility_curve(
    const std::vector<double>& eta_values, double delta_eta, double epsilon) {
  const DistinguishabilitySpec d = DistinguishabilitySpec::from_mode_mismatch(epsilon);
  std::vector<VisibilityPoint> curve;
  curve.reserve(eta_values.size());
  for (double design_eta : eta_values) {
    const double realized = std::clamp(design_eta + delta_eta, 0.0, 1.0);
    if (realized <= 0.0 || realized >= 1.0) {
      curve.push_back(VisibilityPoint{design_eta, std::nullopt});
    } else {
      curve.push_back(VisibilityPoint{design_eta, visibility(realized, d)});
    }
  }
  return curve;
}

// Probability that two photons entering modes (in_a, in_b) of the network
// leave in the occupation pattern `output`, for partially distinguishable
// photons: I-weighted quantum amplitude plus (1 - I)-weighted classical
// per-photon transport. Exact for two photons.
inline double two_photon_mixture_probability(const ModeUnitary& u, int in_a, int in_b,
                                             const FockState& output,
                                             const DistinguishabilitySpec& d) {
  const int m = u.modes();
  if (in_a < 0 || in_a >= m || in_b < 0 || in_b >= m) {
    throw std::invalid_argument("two_photon_mixture_probability: input mode out of range");
  }
  if (static_cast<int>(output.size()) != m || total_photons(output) != 2) {
    throw std::invalid_argument(
        "two_photon_mixture_probability: output must hold exactly 2 photons");
  }
  FockState input(m, 0);
  input[in_a] += 1;
  input[in_b] += 1;
  const double quantum = std::norm(transition_amplitude(u, input, output));

  int out_a = -1;
  int out_b = -1;
  for (int mode = 0; mode < m; ++mode) {
    for (int p = 0; p < output[mode]; ++p) {
      (out_a < 0 ? out_a : out_b) = mode;
    }
  }
  double classical;
  if (out_a == out_b) {
    classical = std::norm(u(out_a, in_a)) * std::norm(u(out_a, in_b));
  } else {
    classical = std::norm(u(out_a, in_a)) * std::norm(u(out_b, in_b)) +
                std::norm(u(out_b, in_a)) * std::norm(u(out_a, in_b));
  }
  const double i = d.indistinguishability();
  return i * quantum + (1.0 - i) * classical;
}

}  // namespace qwg

#endif  // QWG_INTERFERENCE_HPP_
