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

// Process-wide meter of live dense-matrix bytes.
//
// Every Matrix<T> allocates through TrackingAllocator, so the meter sees the
// working set that would sit in accelerator memory: hop matrices of the
// Resident tier, batch slots, model parameters and activations. Host-side
// staging buffers use plain allocators and are not counted.

#ifndef PPGNN_MEMORY_METER_H_
#define PPGNN_MEMORY_METER_H_

#include <cstddef>
#include <new>

namespace ppgnn::memory {

std::size_t LiveBytes();
std::size_t PeakBytes();

// Sets the peak to the current live byte count.
void ResetPeak();

void RecordAllocation(std::size_t bytes);
void RecordDeallocation(std::size_t bytes);

template <typename T>
struct TrackingAllocator {
  using value_type = T;

  TrackingAllocator() noexcept = default;
  template <typename U>
  TrackingAllocator(const TrackingAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    T* p = static_cast<T*>(::operator new(n * sizeof(T)));
    RecordAllocation(n * sizeof(T));
    return p;
  }

  void deallocate(T* p, std::size_t n) noexcept {
    RecordDeallocation(n * sizeof(T));
    ::operator delete(p);
  }

  template <typename U>
  bool operator==(const TrackingAllocator<U>&) const noexcept {
    return true;
  }
};

}  // namespace ppgnn::memory

#endif  // PPGNN_MEMORY_METER_H_
