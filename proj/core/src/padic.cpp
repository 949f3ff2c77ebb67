#include "logcap/padic.hpp"

#include <algorithm>

namespace logcap {

namespace {

BigInt pow_of(long prime, long e) { return int_pow(BigInt(prime), (unsigned long)e); }

}  // namespace

void PadicNumber::normalize() {
  if (zero_) {
    unit_ = 0;
    prec_ = 0;
    return;
  }
  if (prec_ <= 0) throw PrecisionError("padic: no significant digits left");
  BigInt m = pow_of(prime_, prec_);
  unit_ = mod_pos(unit_, m);
  if (unit_ == 0) {
    // All known digits are zero: the value is 0 mod ell^(val+prec).
    zero_ = true;
    val_ = val_ + prec_;
    prec_ = 0;
    return;
  }
  if (unit_ % prime_ == 0) {
    long v = padic_val(unit_, prime_);
    if (v >= prec_) {
      zero_ = true;
      val_ = val_ + prec_;
      unit_ = 0;
      prec_ = 0;
      return;
    }
    val_ += v;
    prec_ -= (int)v;
    unit_ /= pow_of(prime_, v);
    unit_ = mod_pos(unit_, pow_of(prime_, prec_));
  }
}

PadicNumber PadicNumber::zero(long prime, long abs_prec) {
  PadicNumber z;
  z.prime_ = prime;
  z.zero_ = true;
  z.val_ = abs_prec;
  z.prec_ = 0;
  return z;
}

PadicNumber PadicNumber::make(long prime, long val, const BigInt& unit, int prec) {
  PadicNumber x;
  x.prime_ = prime;
  x.zero_ = false;
  x.val_ = val;
  x.unit_ = unit;
  x.prec_ = prec;
  x.normalize();
  return x;
}

PadicNumber PadicNumber::from_integer(const BigInt& x, long prime, int prec) {
  if (x == 0) return zero(prime, prec);
  long v = padic_val(x, prime);
  return make(prime, v, x / pow_of(prime, v), prec);
}

PadicNumber PadicNumber::from_rational(const BigRat& x, long prime, int prec) {
  if (x == 0) return zero(prime, prec);
  BigInt n = rat_num(x), d = rat_den(x);
  long v = 0;
  if (n % prime == 0) {
    v = padic_val(n, prime);
    n /= pow_of(prime, v);
  }
  if (d % prime == 0) {
    long w = padic_val(d, prime);
    v -= w;
    d /= pow_of(prime, w);
  }
  BigInt m = pow_of(prime, prec);
  return make(prime, v, mod_pos(n, m) * mod_inverse(d, m), prec);
}

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  if (prime_ != o.prime_) throw InputError("padic: prime mismatch");
  if (zero_ || o.zero_) {
    // v(xy) >= v-bound(x) + v-lower(y)
    long vx = zero_ ? val_ : val_;
    long vy = o.zero_ ? o.val_ : o.val_;
    return zero(prime_, vx + vy);
  }
  int prec = std::min(prec_, o.prec_);
  return make(prime_, val_ + o.val_, unit_ * o.unit_, prec);
}

PadicNumber PadicNumber::inverse() const {
  if (zero_) throw InputError("padic: inverse of zero");
  BigInt m = pow_of(prime_, prec_);
  return make(prime_, -val_, mod_inverse(unit_, m), prec_);
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const { return *this * o.inverse(); }

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  return make(prime_, val_, pow_of(prime_, prec_) - unit_, prec_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
  if (prime_ != o.prime_) throw InputError("padic: prime mismatch");
  long abs = std::min(abs_precision(), o.abs_precision());
  if (zero_ && o.zero_) return zero(prime_, abs);
  if (zero_) {
    if (o.zero_) return zero(prime_, abs);
    if (o.val_ >= abs) return zero(prime_, abs);
    PadicNumber r = o;
    r.prec_ = (int)(abs - o.val_);
    r.normalize();
    return r;
  }
  if (o.zero_) return o + *this;
  long v = std::min(val_, o.val_);
  if (abs <= v) return zero(prime_, abs);
  BigInt m = pow_of(prime_, abs - v);
  BigInt s = mod_pos(unit_ * pow_of(prime_, val_ - v) + o.unit_ * pow_of(prime_, o.val_ - v), m);
  if (s == 0) return zero(prime_, abs);
  return make(prime_, v, s, (int)(abs - v));
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::pow(long e) const {
  if (e == 0) {
    if (zero_) throw InputError("padic: 0^0");
    return make(prime_, 0, 1, prec_);
  }
  PadicNumber base = e < 0 ? inverse() : *this;
  unsigned long k = (unsigned long)(e < 0 ? -e : e);
  if (base.zero_) return zero(prime_, base.val_ * (long)k);
  PadicNumber r = make(prime_, 0, 1, base.prec_);
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

PadicNumber PadicNumber::shift(long k) const {
  PadicNumber r = *this;
  r.val_ += k;
  return r;
}

PadicNumber PadicNumber::truncated(int n) const {
  if (zero_ || prec_ <= n) return *this;
  PadicNumber r = *this;
  r.prec_ = n;
  r.normalize();
  return r;
}

BigInt PadicNumber::residue(long k) const {
  if (k <= 0) return 0;
  if (abs_precision() < k) throw PrecisionError("padic: residue beyond precision");
  if (zero_) return 0;
  if (val_ < 0) throw InputError("padic: residue of non-integral value");
  if (val_ >= k) return 0;
  return mod_pos(unit_ * pow_of(prime_, val_), pow_of(prime_, k));
}

bool PadicNumber::same_value(const PadicNumber& o) const {
  if (prime_ != o.prime_) return false;
  PadicNumber d = *this - o;
  return d.is_zero();
}

std::string PadicNumber::str() const {
  if (zero_) return "O(" + std::to_string(prime_) + "^" + std::to_string(val_) + ")";
  return unit_.str() + "*" + std::to_string(prime_) + "^" + std::to_string(val_) + " + O(" +
         std::to_string(prime_) + "^" + std::to_string(abs_precision()) + ")";
}

namespace {

// log(1+t) for t with val(t) >= 1, computed modulo ell^abs.
PadicNumber log_one_plus(long prime, const BigInt& t_int, long t_val, long abs) {
  // Work with enough guard digits to absorb divisions by k.
  long guard = 2;
  {
    long k = 1;
    while (pow_of(prime, k) < abs + guard) ++k;
    guard = k + 2;
  }
  long work = abs + guard;
  BigInt m = pow_of(prime, work);
  BigInt t = mod_pos(t_int, m);  // valuation >= 1
  (void)t_val;
  PadicNumber acc = PadicNumber::zero(prime, abs);
  // Terms t^k/k die once k - v_p(k) >= abs.
  long kmax = abs + guard + 2;
  BigInt tk = 1;
  for (long k = 1; k <= kmax; ++k) {
    tk = (tk * t) % m;
    if (tk == 0) break;
    // term = (-1)^(k+1) t^k / k, computed as (t^k / p^v(k)) * inv(k / p^v(k))
    BigInt num = tk;
    long vk = 0;
    BigInt kk = k;
    while (kk % prime == 0) {
      kk /= prime;
      ++vk;
    }
    if (vk > 0) {
      BigInt pv = pow_of(prime, vk);
      if (num % pv != 0) throw InvariantViolation("padic log: division mismatch");
      num /= pv;
    }
    num = (num * mod_inverse(kk, m)) % m;
    PadicNumber term_p;
    if (num == 0) {
      term_p = PadicNumber::zero(prime, work - vk);
    } else {
      long vn = padic_val(num, prime);
      term_p = PadicNumber::make(prime, vn, num / pow_of(prime, vn), (int)(work - vk - vn));
    }
    if (k % 2 == 0) term_p = -term_p;
    acc = acc + term_p;
  }
  if (acc.is_zero()) return PadicNumber::zero(prime, std::min(abs, acc.abs_precision()));
  if (acc.abs_precision() > abs)
    return PadicNumber::make(prime, acc.valuation(), acc.unit_part(),
                             (int)(abs - acc.valuation()));
  return acc;
}

}  // namespace

PadicNumber iwasawa_log(const PadicNumber& x, long target_abs) {
  if (x.is_zero()) throw InputError("iwasawa_log: zero input");
  long prime = x.prime();
  long abs = x.precision();  // unit part known mod ell^prec => Log known mod ell^prec
  if (target_abs >= 0) abs = std::min(abs, target_abs);
  if (abs < 1) throw PrecisionError("iwasawa_log: input precision too low");
  // Kill the Teichmueller component: w = u^(ell-1) is a principal unit and
  // Log(u) = Log(w)/(ell-1).  ell^val is killed by convention.
  long work = abs + 2;
  BigInt m = pow_of(prime, work);
  BigInt u = mod_pos(x.unit_part() % m, m);
  if (x.precision() < work) {
    // Lift arbitrarily; the final truncation to `abs` makes this harmless.
    u = mod_pos(x.unit_part(), m);
  }
  BigInt w = mod_pow(u, prime - 1, m);
  BigInt t = mod_pos(w - 1, m);
  PadicNumber lw = t == 0 ? PadicNumber::zero(prime, abs)
                          : log_one_plus(prime, t, padic_val(t, prime), abs);
  PadicNumber inv = PadicNumber::from_integer(prime - 1, prime, (int)work).inverse();
  PadicNumber r = lw * inv;
  if (r.is_zero()) return PadicNumber::zero(prime, abs);
  if (r.valuation() >= abs) return PadicNumber::zero(prime, abs);
  return PadicNumber::make(prime, r.valuation(), r.unit_part(), (int)(abs - r.valuation()));
}

PadicNumber iwasawa_log_rational(const BigRat& x, long prime, long abs) {
  PadicNumber v = PadicNumber::from_rational(x, prime, (int)abs);
  return iwasawa_log(v, abs);
}

}  // namespace logcap
