#pragma once

#include "logcap/matrix.hpp"
#include "logcap/polynomial.hpp"

namespace logcap {

// Closed rational interval [lo, hi]; the exact value is guaranteed inside.
struct RatInterval {
  BigRat lo, hi;
  RatInterval() : lo(0), hi(0) {}
  RatInterval(BigRat l, BigRat h) : lo(std::move(l)), hi(std::move(h)) {}
  static RatInterval point(const BigRat& x) { return {x, x}; }
  BigRat width() const { return hi - lo; }
  BigRat mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval iv_scale(const RatInterval& a, const BigRat& s);
// sqrt of an interval with lo >= 0, to absolute width <= eps.
RatInterval iv_sqrt(const RatInterval& a, const BigRat& eps);

struct CplxInterval {
  RatInterval re, im;
};

CplxInterval operator+(const CplxInterval& a, const CplxInterval& b);
CplxInterval operator*(const CplxInterval& a, const CplxInterval& b);
CplxInterval cx_conj(const CplxInterval& a);
RatInterval cx_abs2(const CplxInterval& a);

// Evaluate a rational polynomial on a complex interval.
CplxInterval cx_eval(const QPoly& f, const CplxInterval& x);

}  // namespace logcap
