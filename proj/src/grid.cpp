#include "sqg/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sqg/errors.hpp"

namespace sqg {

Grid::Grid(int n, double box_length) : n_(n), box_length_(box_length), k0_(0.0) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConfigError("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("box length must be positive and finite");
  k0_ = 2.0 * std::numbers::pi / box_length;
}

}  // namespace sqg
