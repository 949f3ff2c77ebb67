#include "doctest.h"

#include "logcap/localfield.hpp"

using namespace logcap;

TEST_CASE("local factorization: x^2+3 over Q_3 is ramified") {
  // Eisenstein at 3: single place, e = 2, f = 1.
  auto places = local_factor({3, 0, 1}, 3, 24);
  REQUIRE(places.size() == 1);
  CHECK(places[0].e == 2);
  CHECK(places[0].f == 1);
  // the root really is a square root of -3
  const auto& pl = places[0];
  TElem sq = t_mul(pl.T, pl.root, pl.root);
  TElem expect = t_from_int(pl.T, -3);
  CHECK(t_val(pl.T, t_sub(pl.T, sq, expect)) >= pl.T.mprec() / 2);
}

TEST_CASE("local factorization: x^2+1 over Q_3 is inert") {
  // -1 is not a square mod 3: unramified quadratic.
  auto places = local_factor({1, 0, 1}, 3, 24);
  REQUIRE(places.size() == 1);
  CHECK(places[0].e == 1);
  CHECK(places[0].f == 2);
}

TEST_CASE("local factorization: x^2-1 over Q_3 splits") {
  auto places = local_factor({-1, 0, 1}, 3, 24);
  REQUIRE(places.size() == 2);
  CHECK(places[0].e == 1);
  CHECK(places[0].f == 1);
  CHECK(places[1].e == 1);
  CHECK(places[1].f == 1);
}

TEST_CASE("local factorization: mixed split/ramified block") {
  // (x^2+3)(x^2-2x+4): both factors congruent to (x+1)^2-ish shapes mod 3.
  // x^2-2x+4 has discriminant -12, also ramified at 3.
  // product = x^4 - 2x^3 + 7x^2 - 6x + 12
  auto places = local_factor({12, -6, 7, -2, 1}, 3, 24);
  long total = 0;
  for (auto& pl : places) total += pl.e * pl.f;
  CHECK(total == 4);
  for (auto& pl : places) CHECK(pl.e == 2);
}

TEST_CASE("local factorization: biquadratic pattern at 3 (two ramified quadratics)") {
  // theta = sqrt(142)+sqrt(-3): x^4 - 278x^2 + 21025; 142 is a square in Q_3
  // so there are two places, each e=2, f=1.
  auto places = local_factor({21025, 0, -278, 0, 1}, 3, 28);
  REQUIRE(places.size() == 2);
  for (auto& pl : places) {
    CHECK(pl.e == 2);
    CHECK(pl.f == 1);
  }
}

TEST_CASE("local factorization: unique place with e=2 f=2") {
  // theta = sqrt(29)+sqrt(-3): x^4 + 2(3-29)x^2 + (29+3)^2 = x^4 -52x^2 +1024.
  // 29 is not a square mod 3: one place, e=2, f=2.
  auto places = local_factor({1024, 0, -52, 0, 1}, 3, 28);
  REQUIRE(places.size() == 1);
  CHECK(places[0].e == 2);
  CHECK(places[0].f == 2);
}

TEST_CASE("tower arithmetic basics") {
  LocalField T = make_tame(3, 1, 2, 1, 20);  // Q_3(sqrt(3*g))
  TElem t = t_uniformizer(T);
  CHECK(t_val(T, t) == 1);
  CHECK(t_val(T, t_from_int(T, 3)) == 2);
  CHECK(t_val(T, t_from_int(T, 5)) == 0);
  TElem u = t_add(T, t_one(T), t);  // 1 + t
  TElem inv = t_inv_unit(T, u);
  CHECK(t_val(T, t_sub(T, t_mul(T, u, inv), t_one(T))) >= T.mprec() - 2);
  // norm of uniformizer has valuation 1; norm of 3 has valuation 2
  CHECK(t_norm(T, t).valuation() == 1);
  CHECK(t_norm(T, t_from_int(T, 3)).valuation() == 2);
}

TEST_CASE("mu_ell detection in local fields") {
  // Q_3 has no cube roots of unity
  LocalField q3 = make_unramified(3, 1, 20);
  CHECK(t_mu_ell_part(q3).a == 0);
  // Q_3(zeta_3) = Q_3(sqrt(-3)): exactly one of the two ramified quadratic
  // classes contains mu_3.
  int with_mu = 0;
  for (long cls = 0; cls < 2; ++cls) {
    LocalField T = make_tame(3, 1, 2, cls, 20);
    auto mu = t_mu_ell_part(T);
    if (mu.a >= 1) {
      ++with_mu;
      CHECK(mu.a == 1);
      // zeta^3 = 1, zeta != 1
      TElem z3 = t_pow(T, mu.zeta, 3);
      CHECK(t_val(T, t_sub(T, z3, t_one(T))) >= T.mprec() / 2);
      CHECK(t_val(T, t_sub(T, mu.zeta, t_one(T))) < T.mprec() / 2);
    }
  }
  CHECK(with_mu == 1);
}

TEST_CASE("cube test agrees with exhaustive check in Q_3(zeta_3)") {
  // find the class containing zeta_3
  LocalField T = make_tame(3, 1, 2, 0, 16);
  if (t_mu_ell_part(T).a == 0) T = make_tame(3, 1, 2, 1, 16);
  REQUIRE(t_mu_ell_part(T).a == 1);

  // perfect cubes are cubes
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    TElem x = t_from_int(T, 1 + (long)rng.below(50));
    TElem x3 = t_pow(T, x, 3);
    CHECK(t_is_lth_power(T, x3));
  }
  // zeta_3 is not a cube (else zeta_9 would live in a field with e=2)
  auto mu = t_mu_ell_part(T);
  CHECK(!t_is_lth_power(T, mu.zeta));
  // 4 = 1+3 is not a cube here (v(4-1) = 2, not divisible by 3, below crit 3)
  CHECK(!t_is_lth_power(T, t_from_int(T, 4)));
  // 10 = 1+9 is a cube (level 4 > critical level 3)
  CHECK(t_is_lth_power(T, t_from_int(T, 10)));

  // exhaustive cross-validation on a sweep of small units
  for (long a = 1; a <= 40; ++a) {
    if (a % 3 == 0) continue;
    TElem x = t_from_int(T, a);
    CHECK(t_is_lth_power(T, x) == t_is_lth_power_exhaustive(T, x));
  }
}

TEST_CASE("cube test handles valuations and ell shifts") {
  LocalField T = make_tame(3, 1, 2, 0, 16);
  if (t_mu_ell_part(T).a == 0) T = make_tame(3, 1, 2, 1, 16);
  TElem t = t_uniformizer(T);
  // t has valuation 1: not a cube
  CHECK(!t_is_lth_power(T, t));
  // t^3 is a cube
  CHECK(t_is_lth_power(T, t_pow(T, t, 3)));
  // x * 3^k: valuation shifts by 2k
  TElem u = t_from_int(T, 10);
  CHECK(t_is_lth_power(T, u, 3));  // 10 * 27: valuation 6, unit part cube
  CHECK(!t_is_lth_power(T, u, 1));  // valuation 2
}

TEST_CASE("charpoly of the generator matches the factor") {
  auto places = local_factor({1024, 0, -52, 0, 1}, 3, 20);
  REQUIRE(places.size() == 1);
  const auto& pl = places[0];
  // factor is the full quartic (one place)
  CHECK((long)pl.factor.size() - 1 == 4);
  // evaluating the original polynomial at the root gives ~0
  TElem val = t_eval_poly(pl.T, {1024, 0, -52, 0, 1}, pl.root);
  CHECK(t_val(pl.T, val) >= pl.T.mprec() / 2);
}

TEST_CASE("trace and norm are additive/multiplicative") {
  LocalField T = make_tame(3, 2, 2, 1, 16);
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    TElem a(T.dim()), b(T.dim());
    for (int j = 0; j < T.dim(); ++j) {
      a[j] = BigInt(rng.below(100));
      b[j] = BigInt(rng.below(100));
    }
    if (t_val(T, a) >= T.mprec() || t_val(T, b) >= T.mprec()) continue;
    auto na = t_norm(T, a), nb = t_norm(T, b), nab = t_norm(T, t_mul(T, a, b));
    CHECK(nab.same_value(na * nb));
    auto ta = t_trace(T, a), tb = t_trace(T, b), tab = t_trace(T, t_add(T, a, b));
    CHECK(tab.same_value(ta + tb));
  }
}
