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

#include "nocres/geometry.hpp"

namespace nocres::noc {

const char* port_name(Port p) {
  switch (p) {
    case Port::kLocal: return "LOCAL";
    case Port::kEast: return "EAST";
    case Port::kWest: return "WEST";
    case Port::kNorth: return "NORTH";
    case Port::kSouth: return "SOUTH";
    case Port::kUp: return "UP";
    case Port::kDown: return "DOWN";
  }
  return "?";
}

std::optional<Coord> neighbor(const Coord& at, Port p, const Dims& dims) {
  Coord n = at;
  switch (p) {
    case Port::kLocal: return std::nullopt;
    case Port::kEast: ++n.x; break;
    case Port::kWest: --n.x; break;
    case Port::kNorth: ++n.y; break;
    case Port::kSouth: --n.y; break;
    case Port::kUp: ++n.z; break;
    case Port::kDown: --n.z; break;
  }
  if (!dims.contains(n)) return std::nullopt;
  return n;
}

Port compute_next_port(const Coord& at, const Coord& dest) {
  if (dest.x > at.x) return Port::kEast;
  if (dest.x < at.x) return Port::kWest;
  if (dest.y > at.y) return Port::kNorth;
  if (dest.y < at.y) return Port::kSouth;
  if (dest.z > at.z) return Port::kUp;
  if (dest.z < at.z) return Port::kDown;
  return Port::kLocal;
}

std::string to_string(const Coord& c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," +
         std::to_string(c.z) + ")";
}

}  // namespace nocres::noc
