// Copyright 2026 The otoc-tn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOC_SITE_HPP
#define OTOC_SITE_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace otoc {

/// Lattice coordinate. Lines use y == 0. Ordering is lexicographic (x, y);
/// every "site-lexicographic" rule in file formats and sweeps refers to this.
struct Site {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Site&, const Site&) = default;
};

inline std::string to_string(const Site& s) {
  return std::to_string(s.x) + "," + std::to_string(s.y);
}

inline bool adjacent(const Site& a, const Site& b) {
  const int dx = a.x - b.x, dy = a.y - b.y;
  return (dx * dx + dy * dy) == 1;
}

enum class GeometryKind { Line, Grid };

struct Geometry {
  GeometryKind kind = GeometryKind::Line;
  int width = 1;   // extent in x
  int height = 1;  // extent in y; 1 for lines

  bool contains(const Site& s) const {
    return s.x >= 0 && s.x < width && s.y >= 0 && s.y < height;
  }
  bool is_line() const { return kind == GeometryKind::Line || height == 1; }
};

inline Geometry line_geometry(int width) { return {GeometryKind::Line, width, 1}; }
inline Geometry grid_geometry(int width, int height) {
  return {GeometryKind::Grid, width, height};
}

}  // namespace otoc

#endif
