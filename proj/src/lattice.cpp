#include "latmcts/lattice.hpp"

#include <stdexcept>
#include <string>

namespace latmcts {

const char* name(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Right: return "right";
    case Direction::Left: return "left";
  }
  return "?";
}

void GridConfig::validate() const {
  if (side < 2) throw std::invalid_argument("grid.n must be >= 2, got " + std::to_string(side));
  if (vision_radius < 0)
    throw std::invalid_argument("grid.rv must be >= 0, got " + std::to_string(vision_radius));
  if (2 * vision_radius >= side)
    throw std::invalid_argument("grid.rv must be < N/2, got rv=" + std::to_string(vision_radius) +
                                " for N=" + std::to_string(side));
  if (start.x < 1 || start.x > side || start.y < 1 || start.y > side)
    throw std::invalid_argument("grid start must lie in [1,N]^2");
}

}  // namespace latmcts
