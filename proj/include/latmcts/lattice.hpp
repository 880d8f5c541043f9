#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "latmcts/rng.hpp"

namespace latmcts {

// Lattice coordinate on the N x N torus, 1-based on both axes.
struct Position {
  int x = 1;
  int y = 1;
  friend bool operator==(const Position&, const Position&) = default;
};

enum class Direction : int { Up = 0, Down = 1, Right = 2, Left = 3 };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::Up, Direction::Down, Direction::Right, Direction::Left};

constexpr int dx(Direction d) {
  switch (d) {
    case Direction::Right: return 1;
    case Direction::Left: return -1;
    default: return 0;
  }
}

constexpr int dy(Direction d) {
  switch (d) {
    case Direction::Up: return 1;
    case Direction::Down: return -1;
    default: return 0;
  }
}

constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Right: return Direction::Left;
    case Direction::Left: return Direction::Right;
  }
  return Direction::Up;
}

const char* name(Direction d);

struct GridConfig {
  int side = 2;           // N, cells per axis
  int vision_radius = 0;  // r_v, l1 detection radius
  Position start{1, 1};

  // throws std::invalid_argument on violation
  void validate() const;
};

// ((v - 1) mod N) + 1, total over all integers
inline int wrap_coord(int v, int side) {
  int m = (v - 1) % side;
  if (m < 0) m += side;
  return m + 1;
}

inline Position step(Position pos, Direction dir, const GridConfig& cfg) {
  return {wrap_coord(pos.x + dx(dir), cfg.side), wrap_coord(pos.y + dy(dir), cfg.side)};
}

// minimum number of unit moves between a and b on the torus
inline int torus_l1(Position a, Position b, int side) {
  int ax = std::abs(a.x - b.x);
  int ay = std::abs(a.y - b.y);
  return std::min(ax, side - ax) + std::min(ay, side - ay);
}

inline bool detected(Position searcher, Position target, const GridConfig& cfg) {
  return torus_l1(searcher, target, cfg.side) <= cfg.vision_radius;
}

inline Direction random_direction(Rng& rng) {
  return kDirections[static_cast<size_t>(rng.direction_index())];
}

// Dense per-cell storage addressed by Position.
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int side, T init = T{}) : side_(side), cells_(static_cast<size_t>(side) * side, init) {}

  int side() const { return side_; }
  size_t index(Position p) const {
    return static_cast<size_t>(p.y - 1) * static_cast<size_t>(side_) + static_cast<size_t>(p.x - 1);
  }
  T& at(Position p) { return cells_[index(p)]; }
  const T& at(Position p) const { return cells_[index(p)]; }
  T& at_index(size_t i) { return cells_[i]; }
  const T& at_index(size_t i) const { return cells_[i]; }
  size_t size() const { return cells_.size(); }
  void fill(T v) { std::fill(cells_.begin(), cells_.end(), v); }

 private:
  int side_ = 0;
  std::vector<T> cells_;
};

}  // namespace latmcts
