#pragma once

#include "logcap/integers.hpp"

namespace logcap {

// Fundamental unit of the maximal order of Q(sqrt(d)), d > 1 squarefree,
// as x + y*w with w = sqrt(d) or (1+sqrt(d))/2 for d = 1 mod 4.
// Computed from the continued fraction of w; norm is +1 or -1.
struct RealQuadUnit {
  BigInt x, y;     // unit = x + y*w
  BigInt d;
  bool half_basis;  // w = (1+sqrt(d))/2
  int norm;         // N(unit)
  // coordinates as a + b*sqrt(d) with a,b in (1/2)Z
  BigRat a() const;
  BigRat b() const;
};

RealQuadUnit fundamental_unit_real_quadratic(const BigInt& d);

}  // namespace logcap
