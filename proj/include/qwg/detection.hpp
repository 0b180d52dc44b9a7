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

#ifndef QWG_DETECTION_HPP_
#define QWG_DETECTION_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qwg/rng.hpp"

namespace qwg {

struct DetectorSpec {
  double efficiency = 0.70;

  void validate() const {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
      throw std::invalid_argument("DetectorSpec: efficiency must be in (0, 1]");
    }
  }
};

// Aggregate per-photon transmission through the device (fiber coupling and
// propagation). Uniform loss commutes with the linear network, so it is
// applied once, at the output.
struct LossSpec {
  double transmission = 0.60;

  void validate() const {
    if (!(transmission > 0.0 && transmission <= 1.0)) {
      throw std::invalid_argument("LossSpec: transmission must be in (0, 1]");
    }
  }
};

struct ExperimentConfig {
  double pair_rate = 4000.0;      // photon pairs per second
  double integration_time = 1.0;  // seconds
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (!(pair_rate > 0.0) || !(integration_time > 0.0)) {
      throw std::invalid_argument("ExperimentConfig: rate and time must be positive");
    }
  }
};

// A two-photon outcome distribution after loss and detector efficiency:
// every coincidence outcome is scaled by (transmission * efficiency)^2 and
// the removed mass is accounted under no_detection.
struct DetectedDistribution {
  std::vector<double> probabilities;
  double no_detection = 0.0;
};

inline DetectedDistribution detected_pair_probability(const std::vector<double>& event_probs,
                                                      const LossSpec& loss,
                                                      const DetectorSpec& detector) {
  loss.validate();
  detector.validate();
  double sum = 0.0;
  for (double p : event_probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("detected_pair_probability: negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("detected_pair_probability: input must be normalized");
  }
  const double scale = loss.transmission * detector.efficiency;
  const double pair_scale = scale * scale;
  DetectedDistribution detected;
  detected.probabilities.reserve(event_probs.size());
  double kept = 0.0;
  for (double p : event_probs) {
    detected.probabilities.push_back(p * pair_scale);
    kept += p * pair_scale;
  }
  detected.no_detection = 1.0 - kept;
  return detected;
}

// Poisson counts for each outcome over the integration time, means
// pair_rate * integration_time * p. Outcomes draw from independent,
// seed-derived substreams, so inserting an outcome does not disturb the
// counts of the others.
inline std::vector<std::uint64_t> sample_counts(const DetectedDistribution& distribution,
                                                const ExperimentConfig& config) {
  config.validate();
  double total = distribution.no_detection;
  for (double p : distribution.probabilities) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("sample_counts: negative probability");
    }
    total += p;
  }
  if (!(distribution.no_detection >= 0.0) || std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "sample_counts: distribution plus no_detection must be normalized");
  }
  const double events = config.pair_rate * config.integration_time;
  std::vector<std::uint64_t> counts;
  counts.reserve(distribution.probabilities.size());
  for (std::size_t i = 0; i < distribution.probabilities.size(); ++i) {
    CounterRng rng(CounterRng::substream_seed(config.rng_seed, i));
    counts.push_back(rng.poisson(events * distribution.probabilities[i]));
  }
  return counts;
}

struct VisibilityEstimate {
  double visibility;
  double standard_error;
};

// V = (baseline - dip) / baseline with first-order Poisson error
// propagation: Var(V) = dip / baseline^2 + dip^2 / baseline^3.
inline VisibilityEstimate estimate_visibility(std::uint64_t counts_dip,
                                              std::uint64_t counts_baseline) {
  if (counts_baseline == 0) {
    throw std::invalid_argument("estimate_visibility: baseline counts must be > 0");
  }
  const double dip = static_cast<double>(counts_dip);
  const double baseline = static_cast<double>(counts_baseline);
  const double visibility = (baseline - dip) / baseline;
  const double variance =
      dip / (baseline * baseline) + dip * dip / (baseline * baseline * baseline);
  return VisibilityEstimate{visibility, std::sqrt(variance)};
}

}  // namespace qwg

#endif  // QWG_DETECTION_HPP_
