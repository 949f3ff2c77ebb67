#include "logcap/embeddings.hpp"

#include <algorithm>

namespace logcap {

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  BigRat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  BigRat lo = std::min(std::min(c1, c2), std::min(c3, c4));
  BigRat hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return {lo, hi};
}

RatInterval iv_scale(const RatInterval& a, const BigRat& s) {
  if (s >= 0) return {a.lo * s, a.hi * s};
  return {a.hi * s, a.lo * s};
}

RatInterval iv_sqrt(const RatInterval& a, const BigRat& eps) {
  if (a.lo < 0) throw InputError("iv_sqrt: negative interval");
  // Bisection on both endpoints.
  auto sq_lower = [&](const BigRat& v) {
    // largest x with x^2 <= v up to eps
    BigRat lo(0), hi = v < 1 ? BigRat(1) : v;
    while (hi - lo > eps) {
      BigRat mid = (lo + hi) / 2;
      if (mid * mid <= v)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };
  auto sq_upper = [&](const BigRat& v) {
    BigRat lo(0), hi = v < 1 ? BigRat(1) : v;
    while (hi - lo > eps) {
      BigRat mid = (lo + hi) / 2;
      if (mid * mid >= v)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };
  return {sq_lower(a.lo), sq_upper(a.hi)};
}

CplxInterval operator+(const CplxInterval& a, const CplxInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
CplxInterval operator*(const CplxInterval& a, const CplxInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CplxInterval cx_conj(const CplxInterval& a) { return {a.re, -a.im}; }
RatInterval cx_abs2(const CplxInterval& a) { return a.re * a.re + a.im * a.im; }

CplxInterval cx_eval(const QPoly& f, const CplxInterval& x) {
  CplxInterval r{RatInterval::point(BigRat(0)), RatInterval::point(BigRat(0))};
  for (long i = f.deg(); i >= 0; --i) {
    r = r * x;
    r.re = r.re + RatInterval::point(f.c[i]);
  }
  return r;
}

}  // namespace logcap
