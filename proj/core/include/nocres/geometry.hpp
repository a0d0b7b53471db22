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

#ifndef NOCRES_GEOMETRY_HPP
#define NOCRES_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

namespace nocres::noc {

// 7-port router: local core plus the six mesh neighbors.
enum class Port : std::uint8_t {
  kLocal = 0,
  kEast,
  kWest,
  kNorth,
  kSouth,
  kUp,
  kDown,
};
inline constexpr std::size_t kNumPorts = 7;

inline constexpr std::array<Port, kNumPorts> kAllPorts = {
    Port::kLocal, Port::kEast,  Port::kWest, Port::kNorth,
    Port::kSouth, Port::kUp,    Port::kDown};

const char* port_name(Port p);

struct Coord {
  int x = 0;
  int y = 0;
  int z = 0;

  bool operator==(const Coord&) const = default;
};

struct Dims {
  int x = 1;
  int y = 1;
  int z = 1;

  bool contains(const Coord& c) const {
    return c.x >= 0 && c.x < x && c.y >= 0 && c.y < y && c.z >= 0 && c.z < z;
  }
  int nodes() const { return x * y * z; }
  int index_of(const Coord& c) const { return (c.z * y + c.y) * x + c.x; }
  Coord coord_of(int index) const {
    return {index % x, (index / x) % y, index / (x * y)};
  }
};

/// Neighbor of `at` through `p`; nullopt for kLocal or off-mesh.
std::optional<Coord> neighbor(const Coord& at, Port p, const Dims& dims);

/// Dimension-order XYZ routing: resolve X, then Y, then Z; kLocal when
/// at == dest. Minimal and deadlock-free on an edge (non-torus) mesh.
Port compute_next_port(const Coord& at, const Coord& dest);

inline int manhattan(const Coord& a, const Coord& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

std::string to_string(const Coord& c);

}  // namespace nocres::noc

#endif  // NOCRES_GEOMETRY_HPP
