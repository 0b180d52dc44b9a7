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

#ifndef QWG_CIRCUIT_HPP_
#define QWG_CIRCUIT_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qwg/fock.hpp"

namespace qwg {

// Directional coupler between two waveguide modes. eta is the reflectivity
// (fraction staying in its waveguide); the coupling ratio is 1 - eta.
struct CouplerSpec {
  int mode_a;
  int mode_b;
  double eta;

  friend bool operator==(const CouplerSpec&, const CouplerSpec&) = default;
};

struct PhaseShifterSpec {
  int mode;
  double phi;

  friend bool operator==(const PhaseShifterSpec&, const PhaseShifterSpec&) = default;
};

using NetlistElement = std::variant<CouplerSpec, PhaseShifterSpec>;

// Uniform additive offset applied to every coupler's reflectivity when the
// netlist is compiled; the realized value is clamped to [0, 1].
struct ImperfectionSpec {
  double delta_eta = 0.0;
};

// Ordered list of couplers and phase shifters over a fixed set of modes.
// Element order is execution order, input to output.
class CircuitNetlist {
 public:
  explicit CircuitNetlist(int mode_count) : mode_count_(mode_count) {
    if (mode_count < 1) {
      throw std::invalid_argument("CircuitNetlist: mode count must be >= 1");
    }
  }

  int mode_count() const { return mode_count_; }
  const std::vector<NetlistElement>& elements() const { return elements_; }
  const std::map<int, std::string>& labels() const { return labels_; }

  void add_coupler(int mode_a, int mode_b, double eta) {
    check_mode(mode_a);
    check_mode(mode_b);
    if (mode_a == mode_b) {
      throw std::invalid_argument("add_coupler: modes must differ");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("add_coupler: eta must be in [0, 1]");
    }
    elements_.push_back(CouplerSpec{mode_a, mode_b, eta});
  }

  void add_phase_shifter(int mode, double phi) {
    check_mode(mode);
    if (!std::isfinite(phi)) {
      throw std::invalid_argument("add_phase_shifter: phi must be finite");
    }
    elements_.push_back(PhaseShifterSpec{mode, phi});
  }

  // Label names must survive the text format, so they cannot be empty or
  // contain whitespace or '#'.
  void set_label(int mode, std::string name) {
    check_mode(mode);
    if (name.empty() || name.find_first_of(" \t\n\r#") != std::string::npos) {
      throw std::invalid_argument("set_label: invalid label name '" + name + "'");
    }
    labels_[mode] = std::move(name);
  }

  friend bool operator==(const CircuitNetlist&, const CircuitNetlist&) = default;

 private:
  void check_mode(int mode) const {
    if (mode < 0 || mode >= mode_count_) {
      throw std::invalid_argument("mode index " + std::to_string(mode) +
                                  " out of range for " + std::to_string(mode_count_) +
                                  " modes");
    }
  }

  int mode_count_;
  std::vector<NetlistElement> elements_;
  std::map<int, std::string> labels_;
};

// Symmetric directional-coupler convention:
//   [[sqrt(eta),            i sqrt(1 - eta)],
//    [i sqrt(1 - eta),      sqrt(eta)     ]]
// The cross path picks up the evanescent-coupling phase i.
inline Eigen::Matrix2cd coupler_unitary(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("coupler_unitary: eta must be in [0, 1]");
  }
  const double t = std::sqrt(eta);
  const double c = std::sqrt(1.0 - eta);
  Eigen::Matrix2cd u;
  u << Complex(t, 0.0), Complex(0.0, c), Complex(0.0, c), Complex(t, 0.0);
  return u;
}

// Real beamsplitter matrix realized by a coupler with a -pi/2 phase shifter
// on the flip mode before and after it (see append_signed_coupler):
//   [[sqrt(eta),        sqrt(1 - eta)],
//    [sqrt(1 - eta),   -sqrt(eta)    ]]
// with the minus sign on the flip mode's through path.
inline Eigen::Matrix2cd signed_coupler_unitary(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::domain_error("signed_coupler_unitary: eta must be in [0, 1]");
  }
  const double t = std::sqrt(eta);
  const double c = std::sqrt(1.0 - eta);
  Eigen::Matrix2cd u;
  u << Complex(t, 0.0), Complex(c, 0.0), Complex(c, 0.0), Complex(-t, 0.0);
  return u;
}

// Compiles the netlist to its m x m unitary: each element's 2x2 (or 1x1
// phase) block is embedded in the identity and multiplied in execution
// order, so psi_out = U psi_in. delta_eta is added to every coupler before
// embedding, clamped to [0, 1].
inline ModeUnitary compile(const CircuitNetlist& netlist,
                           const ImperfectionSpec& imperfections = {}) {
  const int m = netlist.mode_count();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  for (const NetlistElement& element : netlist.elements()) {
    if (const auto* coupler = std::get_if<CouplerSpec>(&element)) {
      const double eta =
          std::clamp(coupler->eta + imperfections.delta_eta, 0.0, 1.0);
      const Eigen::Matrix2cd block = coupler_unitary(eta);
      const Eigen::RowVectorXcd row_a = u.row(coupler->mode_a);
      const Eigen::RowVectorXcd row_b = u.row(coupler->mode_b);
      u.row(coupler->mode_a) = block(0, 0) * row_a + block(0, 1) * row_b;
      u.row(coupler->mode_b) = block(1, 0) * row_a + block(1, 1) * row_b;
    } else {
      const auto& shifter = std::get<PhaseShifterSpec>(element);
      u.row(shifter.mode) *= std::exp(Complex(0.0, shifter.phi));
    }
  }
  return ModeUnitary(std::move(u));
}

// Appends a coupler that acts as signed_coupler_unitary(eta) on
// (keep_mode, flip_mode): a -pi/2 phase shifter on the flip mode on each
// side of the coupler turns the symmetric i-convention into the real
// convention with the minus sign on the flip mode. Phase shifters are not
// subject to delta_eta, so the identity holds for imperfect couplers too.
inline void append_signed_coupler(CircuitNetlist& netlist, int keep_mode,
                                  int flip_mode, double eta) {
  netlist.add_phase_shifter(flip_mode, -kPi / 2.0);
  netlist.add_coupler(keep_mode, flip_mode, eta);
  netlist.add_phase_shifter(flip_mode, -kPi / 2.0);
}

namespace internal {

inline CircuitNetlist labeled_cnot_rails() {
  CircuitNetlist netlist(6);
  netlist.set_label(0, "V_A");
  netlist.set_label(1, "C0");
  netlist.set_label(2, "C1");
  netlist.set_label(3, "T0");
  netlist.set_label(4, "T1");
  netlist.set_label(5, "V_B");
  return netlist;
}

inline void append_cnot_core(CircuitNetlist& netlist, double eta_half,
                             double eta_third) {
  append_signed_coupler(netlist, 3, 4, eta_half);
  append_signed_coupler(netlist, 1, 0, eta_third);
  append_signed_coupler(netlist, 3, 2, eta_third);
  append_signed_coupler(netlist, 4, 5, eta_third);
  append_signed_coupler(netlist, 3, 4, eta_half);
}

}  // namespace internal

// Six-mode post-selected CNOT: rails V_A, C0, C1, T0, T1, V_B (top to
// bottom). The target rails pass through an eta_half / eta_half
// interferometer whose inner arms meet the control rail C1 and the vacuum
// rails through eta_third couplers. With (1/2, 1/3) the post-selected
// logical action is exactly CNOT with success probability 1/9.
inline CircuitNetlist cnot_netlist(double eta_half = 0.5,
                                   double eta_third = 1.0 / 3.0) {
  if (!(eta_half >= 0.0 && eta_half <= 1.0) ||
      !(eta_third >= 0.0 && eta_third <= 1.0)) {
    throw std::domain_error("cnot_netlist: reflectivities must be in [0, 1]");
  }
  CircuitNetlist netlist = internal::labeled_cnot_rails();
  internal::append_cnot_core(netlist, eta_half, eta_third);
  return netlist;
}

// CNOT with a Hadamard on the control qubit before and/or after: an
// eta_half coupler across (C0, C1) in the signed convention is exactly
// H = [[1, 1], [1, -1]] / sqrt(2) at eta_half = 1/2.
inline CircuitNetlist cnot_with_hadamards(double eta_half, double eta_third,
                                          bool h_before, bool h_after) {
  if (!(eta_half >= 0.0 && eta_half <= 1.0) ||
      !(eta_third >= 0.0 && eta_third <= 1.0)) {
    throw std::domain_error("cnot_with_hadamards: reflectivities must be in [0, 1]");
  }
  CircuitNetlist netlist = internal::labeled_cnot_rails();
  if (h_before) append_signed_coupler(netlist, 1, 2, eta_half);
  internal::append_cnot_core(netlist, eta_half, eta_third);
  if (h_after) append_signed_coupler(netlist, 1, 2, eta_half);
  return netlist;
}

// Single coupler over two modes.
inline CircuitNetlist coupler_netlist(double eta) {
  CircuitNetlist netlist(2);
  netlist.add_coupler(0, 1, eta);
  return netlist;
}

// Mach-Zehnder interferometer: two couplers with an internal phase on mode 1.
inline CircuitNetlist mzi_netlist(double eta_first, double eta_second, double phi) {
  CircuitNetlist netlist(2);
  netlist.add_coupler(0, 1, eta_first);
  if (phi != 0.0) netlist.add_phase_shifter(1, phi);
  netlist.add_coupler(0, 1, eta_second);
  return netlist;
}

}  // namespace qwg

#endif  // QWG_CIRCUIT_HPP_
