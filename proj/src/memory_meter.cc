// Copyright 2026 The PPGNN Authors.
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

#include "ppgnn/memory_meter.h"

#include <atomic>

namespace ppgnn::memory {
namespace {

std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};

}  // namespace

std::size_t LiveBytes() { return g_live.load(std::memory_order_relaxed); }

std::size_t PeakBytes() { return g_peak.load(std::memory_order_relaxed); }

void ResetPeak() { g_peak.store(LiveBytes(), std::memory_order_relaxed); }

void RecordAllocation(std::size_t bytes) {
  const std::size_t now =
      g_live.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  std::size_t peak = g_peak.load(std::memory_order_relaxed);
  while (now > peak &&
         !g_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
  }
}

void RecordDeallocation(std::size_t bytes) {
  g_live.fetch_sub(bytes, std::memory_order_relaxed);
}

}  // namespace ppgnn::memory
