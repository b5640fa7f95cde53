#pragma once

#include "kmz/gcm.hpp"
#include "kmz/lambda.hpp"
#include "kmz/rational.hpp"

namespace kmz::test {

inline CartanMatrix sl2() { return validate_gcm({{2}}); }
inline CartanMatrix a2() { return validate_gcm({{2, -1}, {-1, 2}}); }
inline CartanMatrix affine() { return validate_gcm({{2, -2}, {-2, 2}}); }
inline CartanMatrix hyperbolic() { return validate_gcm({{2, -3}, {-3, 2}}); }
inline LambdaData ones() { return {{1, 1}}; }

inline Rational q(const char* s) { return parse_rational(s); }

}  // namespace kmz::test
