#pragma once

#include "logcap/integers.hpp"

namespace logcap {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
struct QPoly {
  std::vector<BigRat> c;

  QPoly() = default;
  explicit QPoly(std::vector<BigRat> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly from_ints(const std::vector<long>& v);
  static QPoly x_power(long n);

  void trim();
  long deg() const { return (long)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  const BigRat& lead() const { return c.back(); }
  BigRat coeff(long i) const { return (i >= 0 && i < (long)c.size()) ? c[i] : BigRat(0); }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const BigRat& s) const;
  bool operator==(const QPoly& o) const { return c == o.c; }

  BigRat eval(const BigRat& x) const;
  QPoly derivative() const;
  std::string str() const;
};

void qpoly_divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly qpoly_gcd(QPoly a, QPoly b);  // monic gcd
BigInt qpoly_resultant_int(const QPoly& a, const QPoly& b);  // for integer polys
BigRat qpoly_resultant(const QPoly& a, const QPoly& b);
BigRat qpoly_disc(const QPoly& f);
bool qpoly_squarefree(const QPoly& f);

// Multiply through by the lcm of denominators: primitive integer coefficients.
std::vector<BigInt> qpoly_scaled_int_coeffs(const QPoly& f, BigInt* denom = nullptr);

// Number of real roots in (a, b] (Sturm); pass open = true for all of R.
long sturm_count_real_roots(const QPoly& f);
long sturm_count_in_interval(const QPoly& f, const BigRat& a, const BigRat& b);

// Isolating intervals (lo, hi] for every real root, refined to width <= eps.
std::vector<std::pair<BigRat, BigRat>> isolate_real_roots(const QPoly& f, const BigRat& eps);

// ---- integer polynomials modulo p^N ----

// Coefficients reduced into [0, p^N).  All polynomials monic unless noted.
struct ZModPoly {
  BigInt modulus;
  std::vector<BigInt> c;
  long deg() const { return (long)c.size() - 1; }
  void trim();
};

ZModPoly zmod_from(const std::vector<BigInt>& coeffs, const BigInt& modulus);
ZModPoly zmod_mul(const ZModPoly& a, const ZModPoly& b);
ZModPoly zmod_add(const ZModPoly& a, const ZModPoly& b);
ZModPoly zmod_sub(const ZModPoly& a, const ZModPoly& b);
// b monic.
void zmod_divrem(const ZModPoly& a, const ZModPoly& b, ZModPoly& q, ZModPoly& r);
BigInt zmod_eval(const ZModPoly& a, const BigInt& x);

// Hensel: f monic over Z, f = prod(factors) mod p with the factors monic and
// pairwise coprime mod p; lifts them to monic factors mod p^N.
std::vector<ZModPoly> hensel_lift(const std::vector<BigInt>& f_int, long p,
                                  const std::vector<std::vector<BigInt>>& factors_mod_p, long N);

}  // namespace logcap
