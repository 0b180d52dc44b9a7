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

#ifndef QWG_FOCK_HPP_
#define QWG_FOCK_HPP_

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwg {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Photon occupation numbers per waveguide mode.
using FockState = std::vector<int>;

inline int total_photons(const FockState& state) {
  return std::accumulate(state.begin(), state.end(), 0);
}

// Number of n-photon states over m modes: C(m+n-1, n).
inline std::uint64_t fock_basis_size(int modes, int photons) {
  if (modes < 1 || photons < 0) {
    throw std::invalid_argument("fock_basis_size: need modes >= 1, photons >= 0");
  }
  std::uint64_t result = 1;
  for (int k = 1; k <= photons; ++k) {
    result = result * static_cast<std::uint64_t>(modes - 1 + k) /
             static_cast<std::uint64_t>(k);
  }
  return result;
}

// All n-photon states over m modes in descending lexicographic order, e.g.
// (2, 2) -> |20>, |11>, |02>. The order is part of the library contract:
// golden files and density-matrix indices depend on it.
inline std::vector<FockState> enumerate_fock_basis(int modes, int photons) {
  const std::uint64_t size = fock_basis_size(modes, photons);
  std::vector<FockState> basis;
  basis.reserve(size);
  FockState state(modes, 0);
  state[0] = photons;
  basis.push_back(state);
  while (true) {
    // Successor: decrement the rightmost nonzero entry left of the last mode
    // and pack everything to its right into the next position.
    int k = -1;
    for (int i = modes - 2; i >= 0; --i) {
      if (state[i] > 0) {
        k = i;
        break;
      }
    }
    if (k < 0) break;
    int tail = 0;
    for (int i = k + 1; i < modes; ++i) {
      tail += state[i];
      state[i] = 0;
    }
    state[k] -= 1;
    state[k + 1] = tail + 1;
    basis.push_back(state);
  }
  return basis;
}

// Ordered n-photon basis with O(log N) state-to-index lookup.
class FockBasis {
 public:
  FockBasis(int modes, int photons)
      : modes_(modes), photons_(photons), states_(enumerate_fock_basis(modes, photons)) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      index_[states_[i]] = i;
    }
  }

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  std::size_t size() const { return states_.size(); }
  const FockState& state(std::size_t i) const { return states_.at(i); }
  const std::vector<FockState>& states() const { return states_; }

  std::size_t index_of(const FockState& state) const {
    auto it = index_.find(state);
    if (it == index_.end()) {
      throw std::out_of_range("FockBasis::index_of: state not in basis");
    }
    return it->second;
  }

 private:
  int modes_;
  int photons_;
  std::vector<FockState> states_;
  std::map<FockState, std::size_t> index_;
};

// An m x m matrix verified unitary on construction (max |(U^dag U - I)_ij|
// <= 1e-10), so downstream amplitude sums are guaranteed to normalize.
class ModeUnitary {
 public:
  explicit ModeUnitary(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
      throw std::invalid_argument("ModeUnitary: matrix must be square");
    }
    const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
    const double defect =
        (gram - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (defect > 1e-10) {
      throw std::invalid_argument("ModeUnitary: matrix is not unitary (defect " +
                                  std::to_string(defect) + ")");
    }
  }

  static ModeUnitary identity(int modes) {
    return ModeUnitary(Eigen::MatrixXcd::Identity(modes, modes));
  }

  int modes() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

  ModeUnitary adjoint() const { return ModeUnitary(matrix_.adjoint()); }

 private:
  Eigen::MatrixXcd matrix_;
};

// Permanent by Ryser's formula with Gray-code subset iteration, O(2^k k).
// per(A) = (-1)^k sum_{S != empty} (-1)^|S| prod_i sum_{j in S} a_ij.
inline Complex permanent(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("permanent: matrix must be square");
  }
  const int k = static_cast<int>(a.rows());
  if (k == 0) return Complex(1.0, 0.0);
  if (k > 20) {
    throw std::length_error("permanent: dimension > 20 not supported");
  }
  std::vector<Complex> row_sum(k, Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << k;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    const std::uint64_t next = s ^ (s >> 1);
    const std::uint64_t flipped = next ^ gray;
    const int col = std::countr_zero(flipped);
    if (next & flipped) {
      for (int i = 0; i < k; ++i) row_sum[i] += a(i, col);
    } else {
      for (int i = 0; i < k; ++i) row_sum[i] -= a(i, col);
    }
    gray = next;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < k; ++i) prod *= row_sum[i];
    if ((k - std::popcount(gray)) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

namespace internal {

inline double factorial(int n) {
  static constexpr double kTable[] = {
      1.0,        1.0,         2.0,          6.0,           24.0,
      120.0,      720.0,       5040.0,       40320.0,       362880.0,
      3628800.0,  39916800.0,  479001600.0,  6227020800.0,  87178291200.0,
      1307674368000.0,         20922789888000.0,            355687428096000.0,
      6402373705728000.0,      121645100408832000.0,        2432902008176640000.0};
  if (n < 0 || n > 20) throw std::invalid_argument("factorial: out of range");
  return kTable[n];
}

}  // namespace internal

// <output| U |input> = per(U_sub) / sqrt(prod_i input_i! prod_j output_j!),
// where U_sub repeats column c input_c times and row r output_r times.
inline Complex transition_amplitude(const ModeUnitary& u, const FockState& input,
                                    const FockState& output) {
  const int m = u.modes();
  if (static_cast<int>(input.size()) != m || static_cast<int>(output.size()) != m) {
    throw std::invalid_argument("transition_amplitude: state length != mode count");
  }
  for (int v : input) {
    if (v < 0) throw std::invalid_argument("transition_amplitude: negative occupation");
  }
  for (int v : output) {
    if (v < 0) throw std::invalid_argument("transition_amplitude: negative occupation");
  }
  const int n = total_photons(input);
  if (n != total_photons(output)) {
    throw std::invalid_argument("transition_amplitude: photon number not conserved");
  }
  std::vector<int> in_modes;
  std::vector<int> out_modes;
  in_modes.reserve(n);
  out_modes.reserve(n);
  for (int mode = 0; mode < m; ++mode) {
    for (int p = 0; p < input[mode]; ++p) in_modes.push_back(mode);
    for (int p = 0; p < output[mode]; ++p) out_modes.push_back(mode);
  }
  Eigen::MatrixXcd sub(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      sub(r, c) = u(out_modes[r], in_modes[c]);
    }
  }
  double norm = 1.0;
  for (int mode = 0; mode < m; ++mode) {
    norm *= internal::factorial(input[mode]) * internal::factorial(output[mode]);
  }
  return permanent(sub) / std::sqrt(norm);
}

// A state in the n-photon sector: amplitudes aligned with a FockBasis.
struct AmplitudeVector {
  FockBasis basis;
  Eigen::VectorXcd amplitudes;

  Complex amplitude(const FockState& state) const {
    return amplitudes(static_cast<Eigen::Index>(basis.index_of(state)));
  }
  double probability(const FockState& state) const {
    return std::norm(amplitude(state));
  }
};

// Evolves a Fock input through the network, producing amplitudes on the full
// n-photon basis. Basis sizes above 1e5 are refused as a resource guard.
inline AmplitudeVector evolve(const ModeUnitary& u, const FockState& input) {
  const int m = u.modes();
  if (static_cast<int>(input.size()) != m) {
    throw std::invalid_argument("evolve: state length != mode count");
  }
  const int n = total_photons(input);
  if (fock_basis_size(m, n) > 100000) {
    throw std::length_error("evolve: basis size exceeds 1e5 states");
  }
  FockBasis basis(m, n);
  Eigen::VectorXcd amplitudes(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    amplitudes(static_cast<Eigen::Index>(i)) =
        transition_amplitude(u, input, basis.state(i));
  }
  return AmplitudeVector{std::move(basis), std::move(amplitudes)};
}

}  // namespace qwg

#endif  // QWG_FOCK_HPP_
