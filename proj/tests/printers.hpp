#pragma once

#include "qfano/basket.hpp"
#include "qfano/rational.hpp"

#include <ostream>

namespace qfano {
inline std::ostream& operator<<(std::ostream& o, const Rational& r) { return o << r.str(); }
inline std::ostream& operator<<(std::ostream& o, const Basket& b) { return o << b.str(); }
}  // namespace qfano
