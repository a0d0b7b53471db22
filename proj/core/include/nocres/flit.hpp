/*
 * Copyright 2026 The noc-resilience Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NOCRES_FLIT_HPP
#define NOCRES_FLIT_HPP

#include <cstdint>

#include "nocres/geometry.hpp"

namespace nocres::noc {

enum class FlitKind : std::uint8_t { kHead, kBody, kTail, kSingle };

inline bool is_head(FlitKind k) {
  return k == FlitKind::kHead || k == FlitKind::kSingle;
}
inline bool is_tail(FlitKind k) {
  return k == FlitKind::kTail || k == FlitKind::kSingle;
}

struct Flit {
  FlitKind kind = FlitKind::kSingle;
  Coord dest;
  /// Look-ahead routing field: the output port to take at the router this
  /// flit is about to enter. Meaningful on HEAD/SINGLE flits only.
  Port next_port = Port::kLocal;
  std::uint32_t payload = 0;
  std::uint64_t packet_id = 0;
  std::uint32_t seq = 0;
  std::uint64_t inject_cycle = 0;
};

}  // namespace nocres::noc

#endif  // NOCRES_FLIT_HPP
