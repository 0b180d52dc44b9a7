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
//
// qwg: waveguide-circuit simulation front-end.
//
// Every subcommand is deterministic given its flags (plus --seed where
// sampling is involved) and emits machine-readable JSON (schema-tagged) or
// CSV with a fixed header row. Exit codes: 0 success, 1 runtime error,
// 2 usage or netlist parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwg/qwg.hpp"

namespace {

using nlohmann::ordered_json;
using qwg::Complex;

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + output_path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + output_path + "'");
  }
}

qwg::CircuitNetlist load_netlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open netlist file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return qwg::parse_netlist(buffer.str());
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(points - 1));
  }
  return grid;
}

ordered_json unitary_to_json(const qwg::ModeUnitary& u) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < u.modes(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < u.modes(); ++c) {
      row.push_back({u(r, c).real(), u(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// hom-scan

struct HomScanOptions {
  double eta = 0.5;
  double epsilon = 0.0;
  double tau_min = -4e-12;
  double tau_max = 4e-12;
  int points = 81;
  double wavelength = 804e-9;
  double fwhm = 2e-9;
  bool with_counts = false;
  double pair_rate = 4000.0;
  double transmission = 0.60;
  double efficiency = 0.70;
  double integration_time = 1.0;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;
};

void run_hom_scan(const HomScanOptions& opt) {
  qwg::SourceSpec source;
  source.center_wavelength = opt.wavelength;
  source.filter_fwhm = opt.fwhm;
  source.pair_rate = opt.pair_rate;
  const qwg::DistinguishabilitySpec floor =
      qwg::DistinguishabilitySpec::from_mode_mismatch(opt.epsilon);
  const std::vector<double> delays = linspace(opt.tau_min, opt.tau_max, opt.points);
  const qwg::DelayScan scan = qwg::hom_scan(opt.eta, source, floor, delays);

  const bool dip_defined = opt.eta > 0.0 && opt.eta < 1.0;
  const double visibility_floor =
      dip_defined ? qwg::visibility(opt.eta, floor) : 0.0;

  std::vector<std::uint64_t> counts;
  std::vector<double> count_errors;
  if (opt.with_counts) {
    const qwg::LossSpec loss{opt.transmission};
    const qwg::DetectorSpec detector{opt.efficiency};
    for (std::size_t i = 0; i < scan.delays.size(); ++i) {
      const double p = scan.coincidence_probs[i];
      const qwg::DetectedDistribution detected =
          qwg::detected_pair_probability({p, 1.0 - p}, loss, detector);
      qwg::ExperimentConfig config;
      config.pair_rate = opt.pair_rate;
      config.integration_time = opt.integration_time;
      config.rng_seed = qwg::CounterRng::substream_seed(opt.seed, i);
      counts.push_back(qwg::sample_counts(detected, config)[0]);
      count_errors.push_back(std::sqrt(static_cast<double>(counts.back())));
    }
  }

  if (opt.format == "csv") {
    std::ostringstream out;
    out << "tau,coincidence_prob";
    if (opt.with_counts) out << ",counts,counts_error";
    out << "\n";
    for (std::size_t i = 0; i < scan.delays.size(); ++i) {
      out << format_double(scan.delays[i]) << ","
          << format_double(scan.coincidence_probs[i]);
      if (opt.with_counts) {
        out << "," << counts[i] << "," << format_double(count_errors[i]);
      }
      out << "\n";
    }
    emit(out.str(), opt.output);
    return;
  }

  ordered_json doc;
  doc["schema"] = "qwg.hom-scan/1";
  doc["eta"] = opt.eta;
  doc["epsilon"] = opt.epsilon;
  doc["indistinguishability_floor"] = floor.indistinguishability();
  doc["source"] = {{"center_wavelength", source.center_wavelength},
                   {"filter_fwhm", source.filter_fwhm},
                   {"pair_rate", source.pair_rate}};
  if (dip_defined) {
    doc["visibility"] = visibility_floor;
  } else {
    doc["visibility"] = nullptr;
  }
  doc["delays"] = scan.delays;
  doc["coincidence_probs"] = scan.coincidence_probs;
  if (opt.with_counts) {
    doc["sampling"] = {{"transmission", opt.transmission},
                       {"efficiency", opt.efficiency},
                       {"integration_time", opt.integration_time},
                       {"seed", opt.seed}};
    doc["counts"] = counts;
    doc["counts_error"] = count_errors;
  }
  emit(doc.dump(2) + "\n", opt.output);
}

// ---------------------------------------------------------------------------
// visibility-curve

struct VisibilityCurveOptions {
  double delta_eta = 0.0;
  double epsilon = 0.0;
  bool custom = false;
  double eta_min = 0.4;
  double eta_max = 0.6;
  int points = 21;
  std::string format = "json";
  std::string output;
};

void run_visibility_curve(const VisibilityCurveOptions& opt) {
  struct Family {
    std::string name;
    std::vector<qwg::VisibilityPoint> points;
  };
  std::vector<Family> families;
  if (opt.custom) {
    families.push_back({"custom", qwg::visibility_curve(
                                      linspace(opt.eta_min, opt.eta_max, opt.points),
                                      opt.delta_eta, opt.epsilon)});
  } else {
    families.push_back(
        {"half", qwg::visibility_curve(linspace(0.4, 0.6, 21), opt.delta_eta,
                                       opt.epsilon)});
    families.push_back(
        {"third", qwg::visibility_curve(linspace(0.27, 0.40, 14), opt.delta_eta,
                                        opt.epsilon)});
  }

  if (opt.format == "csv") {
    std::ostringstream out;
    out << "family,design_eta,visibility\n";
    for (const Family& family : families) {
      for (const qwg::VisibilityPoint& point : family.points) {
        out << family.name << "," << format_double(point.design_eta) << ",";
        if (point.visibility.has_value()) out << format_double(*point.visibility);
        out << "\n";
      }
    }
    emit(out.str(), opt.output);
    return;
  }

  ordered_json doc;
  doc["schema"] = "qwg.visibility-curve/1";
  doc["delta_eta"] = opt.delta_eta;
  doc["epsilon"] = opt.epsilon;
  doc["families"] = ordered_json::array();
  for (const Family& family : families) {
    ordered_json points = ordered_json::array();
    for (const qwg::VisibilityPoint& point : family.points) {
      ordered_json entry;
      entry["design_eta"] = point.design_eta;
      if (point.visibility.has_value()) {
        entry["visibility"] = *point.visibility;
      } else {
        entry["visibility"] = nullptr;
      }
      points.push_back(std::move(entry));
    }
    doc["families"].push_back({{"name", family.name}, {"points", std::move(points)}});
  }
  emit(doc.dump(2) + "\n", opt.output);
}

// ---------------------------------------------------------------------------
// truth-table

struct TruthTableOptions {
  std::string circuit;
  double eta_half = 0.5;
  double eta_third = 1.0 / 3.0;
  double delta_eta = 0.0;
  double epsilon = 0.0;
  bool h_before = false;
  bool h_after = false;
  double sweep_min = 0.0;
  double sweep_max = 0.0;
  int sweep_points = 0;
  std::string format = "json";
  std::string output;
};

void run_truth_table_sweep(const TruthTableOptions& opt) {
  const std::vector<qwg::FidelityPoint> points = qwg::fidelity_vs_eta(
      linspace(opt.sweep_min, opt.sweep_max, opt.sweep_points), opt.delta_eta,
      opt.epsilon);
  if (opt.format == "csv") {
    std::ostringstream out;
    out << "design_eta,fidelity\n";
    for (const qwg::FidelityPoint& point : points) {
      out << format_double(point.design_eta) << "," << format_double(point.fidelity)
          << "\n";
    }
    emit(out.str(), opt.output);
    return;
  }
  ordered_json doc;
  doc["schema"] = "qwg.truth-table-sweep/1";
  doc["delta_eta"] = opt.delta_eta;
  doc["epsilon"] = opt.epsilon;
  doc["points"] = ordered_json::array();
  for (const qwg::FidelityPoint& point : points) {
    doc["points"].push_back(
        {{"design_eta", point.design_eta}, {"fidelity", point.fidelity}});
  }
  emit(doc.dump(2) + "\n", opt.output);
}

void run_truth_table(const TruthTableOptions& opt) {
  if (opt.sweep_points > 0) {
    run_truth_table_sweep(opt);
    return;
  }
  qwg::CircuitNetlist netlist = [&] {
    if (!opt.circuit.empty()) return load_netlist(opt.circuit);
    return qwg::cnot_with_hadamards(opt.eta_half, opt.eta_third, opt.h_before,
                                    opt.h_after);
  }();
  const qwg::ModeUnitary u =
      qwg::compile(netlist, qwg::ImperfectionSpec{opt.delta_eta});
  const qwg::DistinguishabilitySpec d =
      qwg::DistinguishabilitySpec::from_mode_mismatch(opt.epsilon);
  const qwg::TruthTable table = qwg::truth_table(u, qwg::DualRailEncoding{}, d);

  // Ideal target with the same Hadamard dressing as the device.
  Eigen::Matrix4cd target = qwg::logical_cnot();
  if (opt.h_before) target = target * qwg::hadamard_on_control();
  if (opt.h_after) target = qwg::hadamard_on_control() * target;
  qwg::TruthTable ideal;
  ideal.probs = target.cwiseAbs2().real();
  ideal.success_probs = Eigen::Vector4d::Constant(1.0 / 9.0);
  const double fidelity = qwg::logical_basis_fidelity(table, ideal);

  if (opt.format == "csv") {
    std::ostringstream out;
    out << "input,p00,p01,p10,p11,success_prob,fidelity\n";
    const char* inputs[] = {"00", "01", "10", "11"};
    for (int row = 0; row < 4; ++row) {
      out << inputs[row];
      for (int col = 0; col < 4; ++col) {
        out << "," << format_double(table.probs(row, col));
      }
      out << "," << format_double(table.success_probs(row)) << ","
          << format_double(fidelity) << "\n";
    }
    emit(out.str(), opt.output);
    return;
  }

  ordered_json doc;
  doc["schema"] = "qwg.truth-table/1";
  if (!opt.circuit.empty()) {
    doc["circuit"] = opt.circuit;
  } else {
    doc["circuit"] = "cnot";
    doc["eta_half"] = opt.eta_half;
    doc["eta_third"] = opt.eta_third;
    doc["h_before"] = opt.h_before;
    doc["h_after"] = opt.h_after;
  }
  doc["delta_eta"] = opt.delta_eta;
  doc["epsilon"] = opt.epsilon;
  auto matrix_rows = [](const Eigen::Matrix4d& m) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < 4; ++r) {
      rows.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
    }
    return rows;
  };
  doc["probs"] = matrix_rows(table.probs);
  doc["success_probs"] = {table.success_probs(0), table.success_probs(1),
                          table.success_probs(2), table.success_probs(3)};
  doc["ideal_probs"] = matrix_rows(ideal.probs);
  doc["fidelity"] = fidelity;
  emit(doc.dump(2) + "\n", opt.output);
}

// ---------------------------------------------------------------------------
// noon

struct NoonOptions {
  qwg::NoonChainSpec spec;
  double integration_time = 0.0;  // 0 = exact rates, no sampling
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;
};

void run_noon(const NoonOptions& opt) {
  const qwg::TwoPhotonDensityMatrix inside = qwg::noon_chain_inside_state(opt.spec);
  const qwg::NoonCountRecord exact = qwg::simulate_noon_chain(opt.spec);

  qwg::NoonCountRecord measured = exact;
  std::vector<std::uint64_t> sampled;
  if (opt.integration_time > 0.0) {
    const std::array<double, 6> rates{
        exact.tap_coincidence_rate, exact.tap_bunched_rates[0],
        exact.tap_bunched_rates[1], exact.out_coincidence_rate,
        exact.out_bunched_rates[0], exact.out_bunched_rates[1]};
    std::array<double, 6> observed{};
    for (std::size_t i = 0; i < rates.size(); ++i) {
      qwg::CounterRng rng(qwg::CounterRng::substream_seed(opt.seed, i));
      const std::uint64_t count = rng.poisson(rates[i] * opt.integration_time);
      sampled.push_back(count);
      observed[i] = static_cast<double>(count) / opt.integration_time;
    }
    measured.tap_coincidence_rate = observed[0];
    measured.tap_bunched_rates = {observed[1], observed[2]};
    measured.out_coincidence_rate = observed[3];
    measured.out_bunched_rates = {observed[4], observed[5]};
  }
  const qwg::NoonEstimate estimate = qwg::estimate_density_matrix(measured);

  if (opt.format == "csv") {
    std::ostringstream out;
    out << "key,value\n";
    auto row = [&out](const char* key, double value) {
      out << key << "," << format_double(value) << "\n";
    };
    row("design_eta", opt.spec.design_eta);
    row("delta_eta", opt.spec.delta_eta);
    row("epsilon", opt.spec.epsilon);
    row("inside_p20", inside.population(qwg::kIndex20));
    row("inside_p11", inside.population(qwg::kIndex11));
    row("inside_p02", inside.population(qwg::kIndex02));
    row("inside_coherence_re", inside(qwg::kIndex20, qwg::kIndex02).real());
    row("inside_fidelity", qwg::fidelity_to_noon(inside));
    row("tap_coincidence_rate", exact.tap_coincidence_rate);
    row("tap_bunched_rate_0", exact.tap_bunched_rates[0]);
    row("tap_bunched_rate_1", exact.tap_bunched_rates[1]);
    row("out_coincidence_rate", exact.out_coincidence_rate);
    row("out_bunched_rate_0", exact.out_bunched_rates[0]);
    row("out_bunched_rate_1", exact.out_bunched_rates[1]);
    row("estimate_p20", estimate.rho.population(qwg::kIndex20));
    row("estimate_p11", estimate.rho.population(qwg::kIndex11));
    row("estimate_p02", estimate.rho.population(qwg::kIndex02));
    row("estimate_coherence_re", estimate.rho(qwg::kIndex20, qwg::kIndex02).real());
    row("fidelity_lower_bound", estimate.fidelity_lower_bound);
    emit(out.str(), opt.output);
    return;
  }

  ordered_json doc;
  doc["schema"] = "qwg.noon/1";
  doc["spec"] = {{"design_eta", opt.spec.design_eta},
                 {"delta_eta", opt.spec.delta_eta},
                 {"epsilon", opt.spec.epsilon},
                 {"pair_rate", opt.spec.pair_rate},
                 {"transmission", opt.spec.transmission},
                 {"detector_efficiency", opt.spec.detector_efficiency},
                 {"splitter_ratio", opt.spec.splitter_ratio}};
  doc["inside"] = {{"populations",
                    {inside.population(qwg::kIndex20), inside.population(qwg::kIndex11),
                     inside.population(qwg::kIndex02)}},
                   {"coherence_re", inside(qwg::kIndex20, qwg::kIndex02).real()},
                   {"fidelity", qwg::fidelity_to_noon(inside)}};
  doc["rates"] = {{"tap_coincidence", exact.tap_coincidence_rate},
                  {"tap_bunched", {exact.tap_bunched_rates[0], exact.tap_bunched_rates[1]}},
                  {"out_coincidence", exact.out_coincidence_rate},
                  {"out_bunched", {exact.out_bunched_rates[0], exact.out_bunched_rates[1]}}};
  if (opt.integration_time > 0.0) {
    doc["counts"] = {{"integration_time", opt.integration_time},
                     {"seed", opt.seed},
                     {"tap_coincidence", sampled[0]},
                     {"tap_bunched", {sampled[1], sampled[2]}},
                     {"out_coincidence", sampled[3]},
                     {"out_bunched", {sampled[4], sampled[5]}}};
  }
  doc["estimate"] = {
      {"populations",
       {estimate.rho.population(qwg::kIndex20), estimate.rho.population(qwg::kIndex11),
        estimate.rho.population(qwg::kIndex02)}},
      {"coherence_re", estimate.rho(qwg::kIndex20, qwg::kIndex02).real()},
      {"fidelity_lower_bound", estimate.fidelity_lower_bound}};
  emit(doc.dump(2) + "\n", opt.output);
}

// ---------------------------------------------------------------------------
// compile

struct CompileOptions {
  std::string circuit;
  std::string builtin;
  double eta = 0.5;
  double eta2 = 0.5;
  double phi = 0.0;
  double eta_half = 0.5;
  double eta_third = 1.0 / 3.0;
  double delta_eta = 0.0;
  bool check_cnot = false;
  std::string format = "json";
  std::string output;
};

qwg::CircuitNetlist builtin_netlist(const CompileOptions& opt) {
  if (opt.builtin == "coupler") return qwg::coupler_netlist(opt.eta);
  if (opt.builtin == "mzi") return qwg::mzi_netlist(opt.eta, opt.eta2, opt.phi);
  if (opt.builtin == "cnot") return qwg::cnot_netlist(opt.eta_half, opt.eta_third);
  if (opt.builtin == "cnot-h") {
    return qwg::cnot_with_hadamards(opt.eta_half, opt.eta_third, true, false);
  }
  if (opt.builtin == "cnot-hh") {
    return qwg::cnot_with_hadamards(opt.eta_half, opt.eta_third, true, true);
  }
  throw std::runtime_error("unknown builtin circuit '" + opt.builtin + "'");
}

void run_compile(const CompileOptions& opt) {
  const qwg::CircuitNetlist netlist =
      opt.circuit.empty() ? builtin_netlist(opt) : load_netlist(opt.circuit);
  const qwg::ModeUnitary u =
      qwg::compile(netlist, qwg::ImperfectionSpec{opt.delta_eta});
  const double defect = (u.matrix().adjoint() * u.matrix() -
                         Eigen::MatrixXcd::Identity(u.modes(), u.modes()))
                            .cwiseAbs()
                            .maxCoeff();

  if (opt.format == "csv") {
    std::ostringstream out;
    out << "row,col,re,im\n";
    for (int r = 0; r < u.modes(); ++r) {
      for (int c = 0; c < u.modes(); ++c) {
        out << r << "," << c << "," << format_double(u(r, c).real()) << ","
            << format_double(u(r, c).imag()) << "\n";
      }
    }
    emit(out.str(), opt.output);
    return;
  }

  ordered_json doc;
  doc["schema"] = "qwg.compile/1";
  doc["circuit"] = opt.circuit.empty() ? opt.builtin : opt.circuit;
  doc["modes"] = u.modes();
  ordered_json labels = ordered_json::object();
  for (const auto& [mode, name] : netlist.labels()) {
    labels[std::to_string(mode)] = name;
  }
  doc["labels"] = std::move(labels);
  doc["element_count"] = netlist.elements().size();
  doc["delta_eta"] = opt.delta_eta;
  doc["unitary"] = unitary_to_json(u);
  doc["unitarity_defect"] = defect;
  if (opt.check_cnot) {
    const qwg::LogicalEquivalence result =
        qwg::logical_equivalence(u, qwg::DualRailEncoding{}, qwg::logical_cnot());
    doc["cnot_check"] = {{"equivalent", result.equivalent},
                         {"distance", result.distance}};
  }
  emit(doc.dump(2) + "\n", opt.output);
}

void add_format_options(CLI::App* cmd, std::string& format, std::string& output) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", output, "Output file path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for photon pairs in directional-coupler waveguide circuits"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  HomScanOptions hom;
  CLI::App* hom_cmd = app.add_subcommand(
      "hom-scan", "Two-photon coincidence probability versus arrival delay");
  hom_cmd->add_option("--eta", hom.eta, "Coupler reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  hom_cmd
      ->add_option("--epsilon", hom.epsilon,
                   "Photon mode mismatch at zero delay (1 - indistinguishability)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  hom_cmd->add_option("--tau-min", hom.tau_min, "Scan start, seconds")
      ->capture_default_str();
  hom_cmd->add_option("--tau-max", hom.tau_max, "Scan end, seconds")
      ->capture_default_str();
  hom_cmd->add_option("--points", hom.points, "Number of scan points")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  hom_cmd->add_option("--wavelength", hom.wavelength, "Source center wavelength, meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  hom_cmd->add_option("--fwhm", hom.fwhm, "Filter FWHM, meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  hom_cmd->add_flag("--counts", hom.with_counts,
                    "Also sample detected coincidence counts per point");
  hom_cmd->add_option("--pair-rate", hom.pair_rate, "Generated pairs per second")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  hom_cmd->add_option("--transmission", hom.transmission, "Per-photon transmission")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  hom_cmd->add_option("--efficiency", hom.efficiency, "Detector efficiency")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  hom_cmd
      ->add_option("--integration-time", hom.integration_time,
                   "Counting time per point, seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  hom_cmd->add_option("--seed", hom.seed, "Sampling seed")->capture_default_str();
  add_format_options(hom_cmd, hom.format, hom.output);
  hom_cmd->callback([&hom] { run_hom_scan(hom); });

  VisibilityCurveOptions curve;
  CLI::App* curve_cmd = app.add_subcommand(
      "visibility-curve", "Interference visibility versus design reflectivity");
  curve_cmd->add_option("--delta-eta", curve.delta_eta, "Fabrication offset on eta")
      ->check(CLI::Range(-1.0, 1.0))
      ->capture_default_str();
  curve_cmd->add_option("--epsilon", curve.epsilon, "Photon mode mismatch")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  CLI::Option* eta_min_opt =
      curve_cmd->add_option("--eta-min", curve.eta_min, "Custom grid start")
          ->check(CLI::Range(0.0, 1.0));
  curve_cmd->add_option("--eta-max", curve.eta_max, "Custom grid end")
      ->check(CLI::Range(0.0, 1.0))
      ->needs(eta_min_opt);
  curve_cmd->add_option("--points", curve.points, "Custom grid point count")
      ->check(CLI::Range(1, 100000))
      ->needs(eta_min_opt);
  add_format_options(curve_cmd, curve.format, curve.output);
  curve_cmd->callback([&curve, eta_min_opt] {
    curve.custom = eta_min_opt->count() > 0;
    run_visibility_curve(curve);
  });

  TruthTableOptions table;
  CLI::App* table_cmd = app.add_subcommand(
      "truth-table", "Post-selected logical truth table of the two-qubit gate");
  CLI::Option* table_circuit =
      table_cmd->add_option("--circuit", table.circuit, "Netlist file (.wgn)")
          ->check(CLI::ExistingFile);
  table_cmd->add_option("--eta-half", table.eta_half, "Reflectivity of the 1/2 couplers")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str()
      ->excludes(table_circuit);
  table_cmd
      ->add_option("--eta-third", table.eta_third, "Reflectivity of the 1/3 couplers")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str()
      ->excludes(table_circuit);
  CLI::Option* h_before_opt =
      table_cmd->add_flag("--h-before", table.h_before, "Hadamard on the control input")
          ->excludes(table_circuit);
  CLI::Option* h_after_opt =
      table_cmd->add_flag("--h-after", table.h_after, "Hadamard on the control output")
          ->excludes(table_circuit);
  table_cmd->add_option("--delta-eta", table.delta_eta, "Fabrication offset on eta")
      ->check(CLI::Range(-1.0, 1.0))
      ->capture_default_str();
  table_cmd->add_option("--epsilon", table.epsilon, "Photon mode mismatch")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  CLI::Option* sweep_points_opt =
      table_cmd
          ->add_option("--sweep-points", table.sweep_points,
                       "Sweep eta-half over a grid and report fidelity per point")
          ->check(CLI::Range(2, 100000))
          ->excludes(table_circuit)
          ->excludes(h_before_opt)
          ->excludes(h_after_opt);
  table_cmd->add_option("--sweep-min", table.sweep_min, "Sweep grid start")
      ->check(CLI::Range(0.0, 1.0))
      ->needs(sweep_points_opt);
  table_cmd->add_option("--sweep-max", table.sweep_max, "Sweep grid end")
      ->check(CLI::Range(0.0, 1.0))
      ->needs(sweep_points_opt);
  add_format_options(table_cmd, table.format, table.output);
  table_cmd->callback([&table] { run_truth_table(table); });

  NoonOptions noon;
  CLI::App* noon_cmd = app.add_subcommand(
      "noon", "Two-photon path entanglement: generation, detection, estimation");
  noon_cmd->add_option("--design-eta", noon.spec.design_eta, "Design reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  noon_cmd->add_option("--delta-eta", noon.spec.delta_eta, "Fabrication offset on eta")
      ->check(CLI::Range(-1.0, 1.0))
      ->capture_default_str();
  noon_cmd->add_option("--epsilon", noon.spec.epsilon, "Photon mode mismatch")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  noon_cmd->add_option("--pair-rate", noon.spec.pair_rate, "Generated pairs per second")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  noon_cmd
      ->add_option("--transmission", noon.spec.transmission, "Per-photon transmission")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  noon_cmd
      ->add_option("--efficiency", noon.spec.detector_efficiency, "Detector efficiency")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  noon_cmd
      ->add_option("--splitter-ratio", noon.spec.splitter_ratio,
                   "Cascade splitter ratio")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  noon_cmd
      ->add_option("--integration-time", noon.integration_time,
                   "Counting time in seconds; 0 uses exact rates")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  noon_cmd->add_option("--seed", noon.seed, "Sampling seed")->capture_default_str();
  add_format_options(noon_cmd, noon.format, noon.output);
  noon_cmd->callback([&noon] { run_noon(noon); });

  CompileOptions compile_opt;
  CLI::App* compile_cmd =
      app.add_subcommand("compile", "Compile a netlist to its mode unitary");
  CLI::Option* compile_circuit =
      compile_cmd->add_option("--circuit", compile_opt.circuit, "Netlist file (.wgn)")
          ->check(CLI::ExistingFile);
  compile_cmd
      ->add_option("--builtin", compile_opt.builtin,
                   "Builtin circuit: coupler, mzi, cnot, cnot-h, cnot-hh")
      ->check(CLI::IsMember({"coupler", "mzi", "cnot", "cnot-h", "cnot-hh"}))
      ->excludes(compile_circuit);
  compile_cmd->add_option("--eta", compile_opt.eta, "coupler/mzi first reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  compile_cmd->add_option("--eta2", compile_opt.eta2, "mzi second reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  compile_cmd->add_option("--phi", compile_opt.phi, "mzi internal phase, radians")
      ->capture_default_str();
  compile_cmd
      ->add_option("--eta-half", compile_opt.eta_half, "cnot 1/2-coupler reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  compile_cmd
      ->add_option("--eta-third", compile_opt.eta_third,
                   "cnot 1/3-coupler reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  compile_cmd->add_option("--delta-eta", compile_opt.delta_eta, "Fabrication offset")
      ->check(CLI::Range(-1.0, 1.0))
      ->capture_default_str();
  compile_cmd->add_flag("--check-cnot", compile_opt.check_cnot,
                        "Report logical equivalence to the ideal gate");
  add_format_options(compile_cmd, compile_opt.format, compile_opt.output);
  compile_cmd->callback([&compile_opt] {
    if (compile_opt.circuit.empty() && compile_opt.builtin.empty()) {
      throw CLI::ValidationError("compile", "need --circuit or --builtin");
    }
    if (compile_opt.check_cnot && compile_opt.format == "csv") {
      throw CLI::ValidationError("compile", "--check-cnot requires --format json");
    }
    run_compile(compile_opt);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qwg::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
