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

#include "qcmap/pipeline.hpp"

namespace qcmap {

MapResult map_circuit(const Circuit& circuit, const Device& device, const MapOptions& options) {
  MapResult r;
  r.native_input = decompose_to_native(circuit, device);
  const auto initial = initial_placement(r.native_input, device, options.placer);
  r.routed = route(r.native_input, device, initial, options.router);
  auto lowered = decompose_with_provenance(r.routed.circuit, device);
  r.markers = swap_markers(r.routed.circuit, lowered.source_index);
  r.mapped = std::move(lowered.circuit);
  Scheduler scheduler(r.mapped, device, r.routed.initial_placement, r.markers);
  scheduler.run();
  r.schedule = scheduler.schedule();
  r.metrics = metrics(r.native_input, r.routed, r.schedule, device);
  return r;
}

} // namespace qcmap
