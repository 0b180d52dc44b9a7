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
//
// Line-oriented text format for waveguide netlists (.wgn):
//
//   # comment (also allowed after a directive)
//   modes <m>                  required first directive, exactly once
//   label <index> <name>
//   dc <a> <b> eta=<float>     directional coupler
//   ps <mode> phi=<float>      phase shifter
//
// Floats are serialized with 17 significant digits so that
// parse(serialize(x)) reproduces x bit-exactly.

#ifndef QWG_NETLIST_IO_HPP_
#define QWG_NETLIST_IO_HPP_

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwg/circuit.hpp"

namespace qwg {

class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

namespace internal {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline int parse_int(std::string_view token, int line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw parse_error(line, std::string("malformed ") + what + " '" +
                                std::string(token) + "'");
  }
  return value;
}

inline double parse_keyed_float(std::string_view token, std::string_view key,
                                int line) {
  if (token.substr(0, key.size()) != key) {
    throw parse_error(line, "expected '" + std::string(key) + "<float>', got '" +
                                std::string(token) + "'");
  }
  const std::string_view body = token.substr(key.size());
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(value)) {
    throw parse_error(line, "malformed float in '" + std::string(token) + "'");
  }
  return value;
}

inline std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace internal

inline CircuitNetlist parse_netlist(std::string_view text) {
  std::optional<CircuitNetlist> netlist;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;

    const std::vector<std::string_view> tokens = internal::split_tokens(line);
    if (!tokens.empty()) {
      const std::string_view directive = tokens[0];
      try {
        if (directive == "modes") {
          if (netlist.has_value()) {
            throw parse_error(line_number, "duplicate 'modes' directive");
          }
          if (tokens.size() != 2) {
            throw parse_error(line_number, "'modes' takes exactly one argument");
          }
          const int m = internal::parse_int(tokens[1], line_number, "mode count");
          if (m < 1) {
            throw parse_error(line_number, "mode count must be >= 1");
          }
          netlist.emplace(m);
        } else if (!netlist.has_value()) {
          throw parse_error(line_number,
                            "first directive must be 'modes', got '" +
                                std::string(directive) + "'");
        } else if (directive == "label") {
          if (tokens.size() != 3) {
            throw parse_error(line_number, "'label' takes <index> <name>");
          }
          const int mode = internal::parse_int(tokens[1], line_number, "mode index");
          netlist->set_label(mode, std::string(tokens[2]));
        } else if (directive == "dc") {
          if (tokens.size() != 4) {
            throw parse_error(line_number, "'dc' takes <a> <b> eta=<float>");
          }
          const int a = internal::parse_int(tokens[1], line_number, "mode index");
          const int b = internal::parse_int(tokens[2], line_number, "mode index");
          const double eta = internal::parse_keyed_float(tokens[3], "eta=", line_number);
          netlist->add_coupler(a, b, eta);
        } else if (directive == "ps") {
          if (tokens.size() != 3) {
            throw parse_error(line_number, "'ps' takes <mode> phi=<float>");
          }
          const int mode = internal::parse_int(tokens[1], line_number, "mode index");
          const double phi = internal::parse_keyed_float(tokens[2], "phi=", line_number);
          netlist->add_phase_shifter(mode, phi);
        } else {
          throw parse_error(line_number,
                            "unknown directive '" + std::string(directive) + "'");
        }
      } catch (const std::invalid_argument& e) {
        // Structural validation errors get the offending line attached.
        throw parse_error(line_number, e.what());
      } catch (const std::domain_error& e) {
        throw parse_error(line_number, e.what());
      }
    }

    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  if (!netlist.has_value()) {
    throw parse_error(line_number, "missing 'modes' directive");
  }
  return *std::move(netlist);
}

inline std::string serialize_netlist(const CircuitNetlist& netlist) {
  std::ostringstream out;
  out << "modes " << netlist.mode_count() << "\n";
  for (const auto& [mode, name] : netlist.labels()) {
    out << "label " << mode << " " << name << "\n";
  }
  for (const NetlistElement& element : netlist.elements()) {
    if (const auto* coupler = std::get_if<CouplerSpec>(&element)) {
      out << "dc " << coupler->mode_a << " " << coupler->mode_b << " eta="
          << internal::format_float(coupler->eta) << "\n";
    } else {
      const auto& shifter = std::get<PhaseShifterSpec>(element);
      out << "ps " << shifter.mode << " phi="
          << internal::format_float(shifter.phi) << "\n";
    }
  }
  return out.str();
}

}  // namespace qwg

#endif  // QWG_NETLIST_IO_HPP_
