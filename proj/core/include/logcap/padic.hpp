#pragma once

#include "logcap/integers.hpp"

namespace logcap {

// Truncated element of Q_ell, ell an odd prime.  Value is ell^val * unit
// with unit coprime to ell and known modulo ell^prec, i.e. the value is
// known to absolute precision ell^(val+prec).  A zero holds only the
// absolute precision bound: "0 mod ell^abs".
class PadicNumber {
 public:
  PadicNumber() : prime_(3), zero_(true), val_(0), unit_(0), prec_(0) {}

  static PadicNumber zero(long prime, long abs_prec);
  static PadicNumber from_integer(const BigInt& x, long prime, int prec);
  static PadicNumber from_rational(const BigRat& x, long prime, int prec);
  // ell^val * unit, unit must be coprime to ell (reduced mod ell^prec).
  static PadicNumber make(long prime, long val, const BigInt& unit, int prec);

  long prime() const { return prime_; }
  bool is_zero() const { return zero_; }
  // For zero this is the absolute precision bound ("valuation >= this").
  long valuation() const { return val_; }
  int precision() const { return prec_; }
  long abs_precision() const { return zero_ ? val_ : val_ + prec_; }
  const BigInt& unit_part() const { return unit_; }

  PadicNumber operator+(const PadicNumber& o) const;
  PadicNumber operator-(const PadicNumber& o) const;
  PadicNumber operator-() const;
  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber operator/(const PadicNumber& o) const;
  PadicNumber inverse() const;
  PadicNumber pow(long e) const;

  // Multiply by ell^k (exact shift).
  PadicNumber shift(long k) const;
  // Truncate to at most n significant digits.
  PadicNumber truncated(int n) const;

  // Residue of the value modulo ell^k as an integer in [0, ell^k).
  // Requires val >= 0 and abs_precision >= k.
  BigInt residue(long k) const;

  // Equal as far as both precisions allow.
  bool same_value(const PadicNumber& o) const;

  std::string str() const;

 private:
  long prime_;
  bool zero_;
  long val_;
  BigInt unit_;
  int prec_;

  void normalize();
};

// Iwasawa logarithm on Q_ell^x: kills ell and all roots of unity, agrees
// with the usual series on principal units.  The result is reported to the
// absolute precision justified by the input (at most ell^target_abs when
// target_abs >= 0 is given).  Throws PrecisionError when fewer than one
// significant digit survives, InputError on zero.
PadicNumber iwasawa_log(const PadicNumber& x, long target_abs = -1);

// Convenience: Log of an exact rational at absolute precision ell^abs.
PadicNumber iwasawa_log_rational(const BigRat& x, long prime, long abs);

}  // namespace logcap
