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

#ifndef QWG_GATES_HPP_
#define QWG_GATES_HPP_

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qwg/circuit.hpp"
#include "qwg/fock.hpp"
#include "qwg/interference.hpp"

namespace qwg {

// Dual-rail encoding: a qubit is one photon across two waveguides, |0> in
// the first listed mode and |1> in the second. Defaults match the rail
// order of cnot_netlist (C0=1, C1=2, T0=3, T1=4).
struct DualRailEncoding {
  std::array<int, 2> control_modes{1, 2};
  std::array<int, 2> target_modes{3, 4};

  void validate(int mode_count) const {
    const std::array<int, 4> all{control_modes[0], control_modes[1],
                                 target_modes[0], target_modes[1]};
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i] < 0 || all[i] >= mode_count) {
        throw std::invalid_argument("DualRailEncoding: mode index out of range");
      }
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (all[i] == all[j]) {
          throw std::invalid_argument("DualRailEncoding: mode indices must be distinct");
        }
      }
    }
  }

  // Fock state with the control photon at logical value c and the target
  // photon at logical value t.
  FockState fock_state(int mode_count, int c, int t) const {
    FockState state(mode_count, 0);
    state[control_modes[c]] += 1;
    state[target_modes[t]] += 1;
    return state;
  }
};

// Post-selected two-qubit state over (|00>, |01>, |10>, |11>).
struct LogicalState {
  Eigen::Vector4cd amplitudes;
  double success_prob;
};

// Post-selected logical probabilities: rows are inputs 00, 01, 10, 11 and
// columns outputs; each row renormalized, with the pre-normalization
// coincidence probability kept in success_probs.
struct TruthTable {
  Eigen::Matrix4d probs;
  Eigen::Vector4d success_probs;
};

// Evolves the logical basis input through the network and projects onto the
// four control-photon/target-photon coincidence patterns. success_prob is
// the squared norm before renormalization; a zero-success projection yields
// all-zero amplitudes rather than a division error.
inline LogicalState postselect_logical(const ModeUnitary& u, const DualRailEncoding& enc,
                                       int input) {
  enc.validate(u.modes());
  if (input < 0 || input > 3) {
    throw std::invalid_argument("postselect_logical: input index must be in 0..3");
  }
  const FockState in_state = enc.fock_state(u.modes(), input >> 1, input & 1);
  Eigen::Vector4cd amplitudes;
  for (int out = 0; out < 4; ++out) {
    const FockState out_state = enc.fock_state(u.modes(), out >> 1, out & 1);
    amplitudes(out) = transition_amplitude(u, in_state, out_state);
  }
  const double success = amplitudes.squaredNorm();
  if (success < 1e-30) {
    return LogicalState{Eigen::Vector4cd::Zero(), 0.0};
  }
  return LogicalState{amplitudes / std::sqrt(success), success};
}

// Truth table for partially distinguishable photons: each entry is the
// two-branch mixture probability (exact for two photons), renormalized over
// the four coincidence outcomes. The default spec is fully indistinguishable
// photons, which reproduces the pure-state table.
inline TruthTable truth_table(const ModeUnitary& u, const DualRailEncoding& enc = {},
                              const DistinguishabilitySpec& d = {}) {
  enc.validate(u.modes());
  TruthTable table;
  for (int input = 0; input < 4; ++input) {
    const int in_c = enc.control_modes[input >> 1];
    const int in_t = enc.target_modes[input & 1];
    Eigen::Vector4d row;
    for (int out = 0; out < 4; ++out) {
      const FockState out_state = enc.fock_state(u.modes(), out >> 1, out & 1);
      row(out) = two_photon_mixture_probability(u, in_c, in_t, out_state, d);
    }
    const double success = row.sum();
    if (success < 1e-30) {
      throw std::runtime_error("truth_table: zero post-selection success for input " +
                               std::to_string(input));
    }
    table.probs.row(input) = row.transpose() / success;
    table.success_probs(input) = success;
  }
  return table;
}

namespace internal {

inline void check_distribution(const Eigen::Vector4d& p, const char* name) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!(p(i) >= 0.0)) {
      throw std::invalid_argument(std::string("classical_fidelity: ") + name +
                                  " has a negative entry");
    }
    sum += p(i);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string("classical_fidelity: ") + name +
                                " does not sum to 1");
  }
}

}  // namespace internal

// Bhattacharyya fidelity between two probability distributions:
// F = (sum_i sqrt(p_i q_i))^2. Equals p_correct when q is deterministic.
inline double classical_fidelity(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
  internal::check_distribution(p, "p");
  internal::check_distribution(q, "q");
  double overlap = 0.0;
  for (int i = 0; i < 4; ++i) {
    overlap += std::sqrt(p(i) * q(i));
  }
  return overlap * overlap;
}

// Mean over the four logical inputs of the per-row classical fidelity.
inline double logical_basis_fidelity(const TruthTable& measured, const TruthTable& ideal) {
  double total = 0.0;
  for (int row = 0; row < 4; ++row) {
    total += classical_fidelity(measured.probs.row(row).transpose(),
                                ideal.probs.row(row).transpose());
  }
  return total / 4.0;
}

// CNOT on the logical basis (00, 01, 10, 11): flips the target when the
// control is 1.
inline Eigen::Matrix4cd logical_cnot() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

// Hadamard on the control qubit, identity on the target.
inline Eigen::Matrix4cd hadamard_on_control() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  for (int t = 0; t < 2; ++t) {
    u(0 + t, 0 + t) = s;
    u(0 + t, 2 + t) = s;
    u(2 + t, 0 + t) = s;
    u(2 + t, 2 + t) = -s;
  }
  return u;
}

inline TruthTable ideal_cnot_truth_table() {
  TruthTable table;
  table.probs = logical_cnot().cwiseAbs2().real();
  table.success_probs = Eigen::Vector4d::Constant(1.0 / 9.0);
  return table;
}

struct LogicalEquivalence {
  bool equivalent;
  double distance;
};

// Tests whether the post-selected 4x4 logical matrix of U equals the target
// up to a global phase and per-qubit diagonal phases on inputs and outputs.
// The overlap |tr(L^dag D_out T D_in)| / (||L|| ||T||) is maximized over the
// four phase parameters by coordinate ascent (each coordinate update is
// closed-form); distance = 1 - best overlap.
inline LogicalEquivalence logical_equivalence(const ModeUnitary& u,
                                              const DualRailEncoding& enc,
                                              const Eigen::Matrix4cd& target,
                                              double tolerance = 1e-8) {
  enc.validate(u.modes());
  Eigen::Matrix4cd t_raw;
  for (int input = 0; input < 4; ++input) {
    const FockState in_state = enc.fock_state(u.modes(), input >> 1, input & 1);
    for (int out = 0; out < 4; ++out) {
      const FockState out_state = enc.fock_state(u.modes(), out >> 1, out & 1);
      t_raw(out, input) = transition_amplitude(u, in_state, out_state);
    }
  }
  const double t_norm = t_raw.norm();
  const double l_norm = target.norm();
  if (t_norm < 1e-15 || l_norm < 1e-15) {
    return LogicalEquivalence{false, 1.0};
  }

  // Phase bit of index k for each of the four parameters
  // (alpha_c, alpha_t, beta_c, beta_t): inputs use alpha, outputs beta.
  const auto bit = [](int index, int qubit) { return (qubit == 0) ? (index >> 1) & 1 : index & 1; };

  double best = 0.0;
  for (int restart = 0; restart < 8; ++restart) {
    std::array<double, 4> phase{};
    for (int p = 0; p < 4; ++p) {
      phase[p] = ((restart >> p) & 1) ? kPi / 2.0 : 0.0;
    }
    double previous = -1.0;
    for (int iter = 0; iter < 200; ++iter) {
      for (int p = 0; p < 4; ++p) {
        // Split the objective into terms with the p-th phase bit 0 vs 1:
        // S = S0 + e^{i phase[p]} S1, maximized at phase[p] = arg(S0 conj(S1)).
        Complex s0(0.0, 0.0);
        Complex s1(0.0, 0.0);
        for (int out = 0; out < 4; ++out) {
          for (int input = 0; input < 4; ++input) {
            const std::array<int, 4> bits{bit(input, 0), bit(input, 1), bit(out, 0),
                                          bit(out, 1)};
            Complex term = std::conj(target(out, input)) * t_raw(out, input);
            for (int q = 0; q < 4; ++q) {
              if (q == p) continue;
              if (bits[q]) term *= std::exp(Complex(0.0, phase[q]));
            }
            (bits[p] ? s1 : s0) += term;
          }
        }
        phase[p] = (std::abs(s1) < 1e-300) ? 0.0 : std::arg(s0 * std::conj(s1));
      }
      Complex total(0.0, 0.0);
      for (int out = 0; out < 4; ++out) {
        for (int input = 0; input < 4; ++input) {
          const std::array<int, 4> bits{bit(input, 0), bit(input, 1), bit(out, 0),
                                        bit(out, 1)};
          Complex term = std::conj(target(out, input)) * t_raw(out, input);
          for (int q = 0; q < 4; ++q) {
            if (bits[q]) term *= std::exp(Complex(0.0, phase[q]));
          }
          total += term;
        }
      }
      const double value = std::abs(total);
      if (value <= previous * (1.0 + 1e-15)) {
        previous = std::max(previous, value);
        break;
      }
      previous = value;
    }
    best = std::max(best, previous);
  }

  const double overlap = best / (t_norm * l_norm);
  const double distance = std::max(0.0, 1.0 - overlap);
  return LogicalEquivalence{distance < tolerance, distance};
}

// Ideal two-qubit Bell states over the logical basis (00, 01, 10, 11).
inline Eigen::Vector4cd bell_phi_plus() {
  return Eigen::Vector4cd(1, 0, 0, 1) / std::sqrt(2.0);
}
inline Eigen::Vector4cd bell_phi_minus() {
  return Eigen::Vector4cd(1, 0, 0, -1) / std::sqrt(2.0);
}
inline Eigen::Vector4cd bell_psi_plus() {
  return Eigen::Vector4cd(0, 1, 1, 0) / std::sqrt(2.0);
}
inline Eigen::Vector4cd bell_psi_minus() {
  return Eigen::Vector4cd(0, 1, -1, 0) / std::sqrt(2.0);
}

// Post-selected outputs of the Bell-state preparer (Hadamard on the control
// followed by CNOT) for the four logical basis inputs.
inline std::array<LogicalState, 4> bell_state_outputs(double eta_half, double eta_third) {
  const ModeUnitary u =
      compile(cnot_with_hadamards(eta_half, eta_third, /*h_before=*/true,
                                  /*h_after=*/false));
  std::array<LogicalState, 4> outputs;
  for (int input = 0; input < 4; ++input) {
    outputs[input] = postselect_logical(u, DualRailEncoding{}, input);
  }
  return outputs;
}

struct FidelityPoint {
  double design_eta;
  double fidelity;
};

// Logical basis fidelity of the CNOT against the ideal table as the design
// reflectivity is swept: the "1/2" couplers are built at eta and the "1/3"
// couplers at 2 eta / 3, then delta_eta is added to every coupler and the
// truth table is evaluated at mode mismatch epsilon.
inline std::vector<FidelityPoint> fidelity_vs_eta(const std::vector<double>& eta_half_values,
                                                  double delta_eta, double epsilon) {
  const DistinguishabilitySpec d = DistinguishabilitySpec::from_mode_mismatch(epsilon);
  const TruthTable ideal = ideal_cnot_truth_table();
  std::vector<FidelityPoint> points;
  points.reserve(eta_half_values.size());
  for (double eta : eta_half_values) {
    const ModeUnitary u =
        compile(cnot_netlist(eta, 2.0 * eta / 3.0), ImperfectionSpec{delta_eta});
    const TruthTable table = truth_table(u, DualRailEncoding{}, d);
    points.push_back(FidelityPoint{eta, logical_basis_fidelity(table, ideal)});
  }
  return points;
}

}  // namespace qwg

#endif  // QWG_GATES_HPP_
