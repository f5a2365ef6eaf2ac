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

#pragma once

#include "qcmap/circuit.hpp"
#include "qcmap/decomposer.hpp"
#include "qcmap/device.hpp"
#include "qcmap/mapper.hpp"
#include "qcmap/scheduler.hpp"
#include "qcmap/verifier.hpp"

namespace qcmap {

struct MapOptions {
  PlacerStrategy placer = PlacerStrategy::InteractionGreedy;
  RouterConfig router;
};

/// Everything one compilation produces.
struct MapResult {
  Circuit native_input; // decomposed program, before routing
  RoutedResult routed;  // SWAPs still symbolic
  Circuit mapped;       // fully native, what the machine runs
  SwapMarkers markers;
  Schedule schedule;
  MetricsReport metrics;
};

/// parse output -> decompose -> place -> route -> decompose -> schedule.
MapResult map_circuit(const Circuit& circuit, const Device& device, const MapOptions& options = {});

} // namespace qcmap
