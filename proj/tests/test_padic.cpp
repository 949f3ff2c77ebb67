#include "doctest.h"

#include "logcap/padic.hpp"

using namespace logcap;

namespace {

// Independent series oracle: log(1+x) = sum (-1)^(k+1) x^k / k summed as an
// exact rational, reduced mod 3^prec.  Valid because the dropped tail has
// valuation >= prec for the inputs used here.
BigInt log_series_oracle(const BigRat& x, long prime, long prec, long terms) {
  BigRat acc(0);
  BigRat xp(1);
  for (long k = 1; k <= terms; ++k) {
    xp *= x;
    BigRat term = xp / BigRat(k);
    if (k % 2 == 0) term = -term;
    acc += term;
  }
  // acc = a/b with b prime to `prime` for our inputs
  BigInt m = int_pow(BigInt(prime), (unsigned long)prec);
  return mod_pos(rat_num(acc) * mod_inverse(rat_den(acc), m), m);
}

}  // namespace

TEST_CASE("padic basics and normalization") {
  auto x = PadicNumber::from_integer(18, 3, 10);  // 18 = 2*3^2
  CHECK(x.valuation() == 2);
  CHECK(x.unit_part() == 2);
  auto y = PadicNumber::from_rational(BigRat(1, 3), 3, 10);
  CHECK(y.valuation() == -1);
  auto p = x * y;
  CHECK(p.valuation() == 1);
  CHECK(p.residue(2) == 6);

  auto z = x - x;
  CHECK(z.is_zero());
  CHECK(z.abs_precision() == 12);
}

TEST_CASE("padic addition tracks cancellation") {
  auto a = PadicNumber::from_integer(1, 3, 6);
  auto b = PadicNumber::from_integer(-1 + 729, 3, 6);  // = -1 mod 3^6
  auto s = a + b;
  CHECK(s.is_zero());  // 729 = 3^6 invisible at this precision
}

TEST_CASE("padic multiplication round-trip") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    long prime = 3;
    BigInt u = 1 + 3 * BigInt(rng.below(10000));
    BigInt w = 2 + 3 * BigInt(rng.below(10000));
    auto x = PadicNumber::make(prime, (long)rng.below(5) - 2, u, 20);
    auto y = PadicNumber::make(prime, (long)rng.below(5) - 2, w, 20);
    auto q = (x * y) / y;
    CHECK(q.same_value(x));
  }
}

TEST_CASE("iwasawa log: identity and torsion vanish") {
  // Log(1) = 0
  auto one = PadicNumber::from_integer(1, 3, 16);
  CHECK(iwasawa_log(one).is_zero());
  // Log(-1) = 0 (root of unity)
  auto minus_one = PadicNumber::from_integer(-1, 3, 16);
  CHECK(iwasawa_log(minus_one).is_zero());
  // Log(3) = 0 by the ell-convention, Log(-3) too
  auto three = PadicNumber::from_integer(3, 3, 16);
  CHECK(iwasawa_log(three).is_zero());
  // Teichmueller lift of 2 mod 3^8: the (q-1)-torsion unit; Log kills it.
  BigInt m = int_pow(BigInt(3), 8);
  BigInt t = 2;
  for (int i = 0; i < 12; ++i) t = mod_pow(t, 3, m);
  auto teich = PadicNumber::make(3, 0, t, 8);
  CHECK(iwasawa_log(teich).is_zero());
}

TEST_CASE("iwasawa log of 4 matches the series oracle at 3^8") {
  // Log(4) = log(1+3) termwise; oracle with rigorous tail cut (terms with
  // k - v_3(k) >= 8 are dropped; k up to 24 is far beyond that).
  BigInt expected = log_series_oracle(BigRat(3), 3, 8, 24);
  auto x = PadicNumber::from_integer(4, 3, 8);
  auto lg = iwasawa_log(x);
  CHECK(lg.residue(8) == expected);
  CHECK(lg.valuation() == 1);
}

TEST_CASE("iwasawa log is a homomorphism on random units") {
  Rng rng(7);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    BigInt a = 1 + BigInt(rng.below(1000000));
    BigInt b = 1 + BigInt(rng.below(1000000));
    if (a % 3 == 0 || b % 3 == 0) continue;
    ++checked;
    auto xa = PadicNumber::from_integer(a, 3, 14);
    auto xb = PadicNumber::from_integer(b, 3, 14);
    auto sum = iwasawa_log(xa) + iwasawa_log(xb);
    auto prod = iwasawa_log(xa * xb);
    CHECK(sum.same_value(prod));
  }
  CHECK(checked > 400);
}

TEST_CASE("iwasawa log kills ell-power torsion scaling") {
  // Log(x^(3^k * m)) = 3^k * m * Log(x)
  auto x = PadicNumber::from_integer(5, 3, 12);
  auto lhs = iwasawa_log(x.pow(18));  // 18 = 2 * 3^2
  auto rhs = iwasawa_log(x) * PadicNumber::from_integer(18, 3, 12);
  CHECK(lhs.same_value(rhs));
}

TEST_CASE("iwasawa log error paths") {
  CHECK_THROWS_AS(iwasawa_log(PadicNumber::zero(3, 8)), InputError);
  auto coarse = PadicNumber::make(3, 0, 2, 1);
  // One digit of unit precision: Log has < 1 significant digit.
  CHECK_THROWS_AS((void)iwasawa_log(coarse, 0), PrecisionError);
}

TEST_CASE("ell = 5 also works") {
  auto x = PadicNumber::from_integer(6, 5, 10);
  auto lg = iwasawa_log(x);
  BigInt expected = log_series_oracle(BigRat(5), 5, 10, 30);
  CHECK(lg.residue(10) == expected);
}
