// Copyright 2026 The qcmap Authors
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

#include "qcmap/circuit.hpp"
#include "qcmap/decomposer.hpp"
#include "qcmap/device.hpp"
#include "qcmap/errors.hpp"
#include "qcmap/pipeline.hpp"
#include "qcmap/simulator.hpp"
#include "qcmap/verifier.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace fs = std::filesystem;
using namespace qcmap;

namespace {

enum Exit { kOk = 0, kInputError = 1, kRoutingError = 2, kVerifyError = 3 };

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path + "'");
  }
  out << text;
}

std::string kinds_to_string(const std::set<GateKind>& kinds) {
  std::string out;
  for (const auto k : kinds) {
    out += (out.empty() ? "" : ",") + std::string(mnemonic(k));
  }
  return out;
}

struct MapArgs {
  std::string device;
  std::string in;
  std::string placer = "greedy";
  std::string router = "lookahead";
  std::string cost = "hops";
  double w0 = 1.0;
  double w1 = 0.5;
  int window = 20;
  int exact_qubits = 5;
  int exact_gates = 8;
  std::uint64_t seed = 0;
  std::string out;
  std::string schedule;
  std::string metrics;
  bool verify = false;
};

int cmd_map(const MapArgs& a) {
  Circuit circuit;
  std::optional<Device> device;
  MapOptions opt;
  try {
    device.emplace(load_device_file(a.device));
    circuit = load_circuit_file(a.in);
    opt.placer = a.placer == "identity" ? PlacerStrategy::Identity : PlacerStrategy::InteractionGreedy;
    opt.router.strategy = a.router == "naive"   ? RouterStrategy::Naive
                          : a.router == "exact" ? RouterStrategy::Exact
                                                : RouterStrategy::Lookahead;
    opt.router.cost = a.cost == "reliability" ? CostMode::Reliability : CostMode::Hops;
    opt.router.w0 = a.w0;
    opt.router.w1 = a.w1;
    opt.router.window = a.window;
    opt.router.exact_max_qubits = a.exact_qubits;
    opt.router.exact_max_two_qubit_gates = a.exact_gates;
    opt.router.seed = a.seed;
    opt.router.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  MapResult result;
  try {
    result = map_circuit(circuit, *device, opt);
  } catch (const std::exception& e) {
    std::cerr << "routing error: " << e.what() << "\n";
    return kRoutingError;
  }

  try {
    const auto text = print_circuit(result.mapped);
    if (a.out.empty()) {
      std::cout << text;
    } else {
      write_file(a.out, text);
    }
    if (!a.schedule.empty()) {
      write_file(a.schedule, dump_schedule(result.schedule));
    }
    if (!a.metrics.empty()) {
      write_file(a.metrics, format_metrics(result.metrics));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (a.verify) {
    const auto violations = check_constraints(result.mapped, *device);
    for (const auto& v : violations) {
      std::cerr << format_violation(v) << "\n";
    }
    if (!violations.empty()) {
      return kVerifyError;
    }
    try {
      const auto eq = equivalent(circuit, result.mapped, result.routed.initial_placement,
                                 result.routed.final_placement, a.seed);
      if (!eq.equivalent) {
        std::cerr << "verify: not equivalent (fidelity deficit " << eq.deficit << ")\n";
        return kVerifyError;
      }
    } catch (const std::exception& e) {
      std::cerr << "verify: " << e.what() << "\n";
      return kVerifyError;
    }
  }
  return kOk;
}

int cmd_check(const std::string& device_path, const std::string& in) {
  try {
    const auto device = load_device_file(device_path);
    const auto circuit = load_circuit_file(in);
    const auto violations = check_constraints(circuit, device);
    for (const auto& v : violations) {
      std::cout << format_violation(v) << "\n";
    }
    return violations.empty() ? kOk : kVerifyError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_sim(const std::string& in, const std::string& bits) {
  try {
    const auto circuit = load_circuit_file(in);
    const int n = circuit.qubit_count();
    std::uint64_t basis = 0;
    if (!bits.empty()) {
      if (static_cast<int>(bits.size()) != n || bits.find_first_not_of("01") != std::string::npos) {
        throw Error("--state must be " + std::to_string(n) + " characters of 0/1");
      }
      for (int q = 0; q < n; ++q) {
        if (bits[q] == '1') {
          basis |= std::uint64_t{1} << q;
        }
      }
    }
    const auto state = simulate(circuit, basis);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const auto amp = state[b];
      if (std::abs(amp) <= 1e-12) {
        continue;
      }
      std::string ket;
      for (int q = 0; q < n; ++q) {
        ket += ((b >> q) & 1) ? '1' : '0';
      }
      char buf[96];
      if (std::abs(amp.imag()) > 1e-12) {
        std::snprintf(buf, sizeof buf, "%.15g%+.15gi", amp.real(), amp.imag());
      } else {
        std::snprintf(buf, sizeof buf, "%.15g", amp.real());
      }
      std::cout << b << " |" << ket << "> " << buf << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_devices(const std::string& dir) {
  try {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".dev") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const auto d = load_device_file(f.string());
      std::cout << d.name() << " " << d.qubit_count() << " qubits 1q=" << kinds_to_string(d.native_1q(0))
                << " 2q=" << mnemonic(d.native_2q()) << (d.symmetric_2q() ? " symmetric" : " directed") << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_rules(const std::string& device_path) {
  try {
    const auto device = load_device_file(device_path);
    for (const auto* rule : rules_for(device)) {
      std::cout << format_rule(*rule) << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcmap: map quantum circuits onto constrained devices"};
  app.require_subcommand(1);

  MapArgs m;
  auto* map = app.add_subcommand("map", "place, route and schedule a circuit");
  map->add_option("--device", m.device, "device file")->required();
  map->add_option("--in", m.in, "input circuit")->required();
  map->add_option("--placer", m.placer)->check(CLI::IsMember({"identity", "greedy"}));
  map->add_option("--router", m.router)->check(CLI::IsMember({"naive", "lookahead", "exact"}));
  map->add_option("--cost", m.cost)->check(CLI::IsMember({"hops", "reliability"}));
  map->add_option("--w0", m.w0);
  map->add_option("--w1", m.w1);
  map->add_option("--window", m.window);
  map->add_option("--exact-max-qubits", m.exact_qubits);
  map->add_option("--exact-max-2q", m.exact_gates);
  map->add_option("--seed", m.seed);
  map->add_option("--out", m.out, "mapped circuit (stdout if omitted)");
  map->add_option("--schedule", m.schedule, "schedule dump");
  map->add_option("--metrics", m.metrics, "metrics sidecar");
  map->add_flag("--verify", m.verify, "check constraints and equivalence");

  std::string device_path;
  std::string in;
  auto* check = app.add_subcommand("check", "list constraint violations");
  check->add_option("--device", device_path)->required();
  check->add_option("--in", in)->required();

  std::string state;
  auto* sim = app.add_subcommand("sim", "print the output state vector");
  sim->add_option("--in", in)->required();
  sim->add_option("--state", state, "input bitstring, character i is qubit i");

  std::string dir;
  auto* devices = app.add_subcommand("devices", "list device files in a directory");
  devices->add_option("dir", dir)->required();

  auto* rules = app.add_subcommand("rules", "print the rewrite rules used for a device");
  rules->add_option("--device", device_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  if (map->parsed()) {
    return cmd_map(m);
  }
  if (check->parsed()) {
    return cmd_check(device_path, in);
  }
  if (sim->parsed()) {
    return cmd_sim(in, state);
  }
  if (devices->parsed()) {
    return cmd_devices(dir);
  }
  return cmd_rules(device_path);
}
