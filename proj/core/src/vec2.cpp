#include "shepherd/vec2.hpp"

#include <ostream>

namespace shepherd {

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << '(' << v.x << ", " << v.y << ')';
}

}  // namespace shepherd
