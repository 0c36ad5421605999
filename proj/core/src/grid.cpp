#include "vll/grid.hpp"

#include <stdexcept>
#include <string>

namespace vll {

TorusGrid::TorusGrid(int n) : n_(n) {
  if (n < 4) throw std::invalid_argument("TorusGrid: n must be >= 4, got " + std::to_string(n));
  if (n % 2 != 0) throw std::invalid_argument("TorusGrid: n must be even, got " + std::to_string(n));
}

}  // namespace vll
