#include "doctest.h"

#include "logcap/numberfield.hpp"
#include "logcap/zfactor.hpp"

using namespace logcap;

namespace {

// Dedekind-criterion oracle for quadratic fields: disc = d (d=1 mod 4) or 4d.
BigInt quad_disc_oracle(const BigInt& d) { return mod_pos(d, 4) == 1 ? d : 4 * d; }

// Conductor-discriminant oracle for Q(sqrt a, sqrt b): the product of the
// discriminants of the three quadratic subfields.
BigInt biquad_disc_oracle(BigInt a, BigInt b) {
  auto sf = [](BigInt x) {
    BigInt core = 1;
    for (auto& [p, e] : factorize(x < 0 ? BigInt(-x) : x))
      if (e % 2 == 1) core *= p;
    return x < 0 ? BigInt(-core) : core;
  };
  BigInt c = sf(a * b);
  BigInt d1 = quad_disc_oracle(sf(a)), d2 = quad_disc_oracle(sf(b)), d3 = quad_disc_oracle(c);
  BigInt prod = d1 * d2 * d3;
  return prod < 0 ? BigInt(-prod) : prod;
}

}  // namespace

TEST_CASE("zassenhaus factorization") {
  CHECK(zpoly_irreducible({-17, 0, 0, 1}));        // x^3 - 17
  CHECK(!zpoly_irreducible({4, 0, 0, 0, 1}));      // x^4+4 = (x^2-2x+2)(x^2+2x+2)
  CHECK(zpoly_irreducible({1, 0, 0, 1, 0, 0, 1})); // x^6+x^3+1 (cyclotomic 9)
  auto fac = zpoly_factor_monic({4, 0, 0, 0, 1});
  CHECK(fac.size() == 2);
}

TEST_CASE("build field x^2+3: round-2 finds the full ring of integers") {
  auto K = NumberField::build(QPoly::from_ints({3, 0, 1}));
  CHECK(K->n == 2);
  CHECK(K->disc == -3);
  CHECK(K->r1 == 0);
  CHECK(K->r2 == 1);
}

TEST_CASE("build field x^2-5") {
  auto K = NumberField::build(QPoly::from_ints({-5, 0, 1}));
  CHECK(K->disc == 5);
  CHECK(K->r1 == 2);
}

TEST_CASE("build rejects bad input") {
  CHECK_THROWS_AS(NumberField::build(QPoly::from_ints({-1, 0, 1})), InputError);  // reducible
  CHECK_THROWS_AS(NumberField::build(QPoly::from_ints({3, 0, 1}), 1), CapacityError);
}

TEST_CASE("compositum sqrt(42), sqrt(-3)") {
  auto K = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  CHECK(K->n == 4);
  CHECK(K->r1 == 0);
  CHECK(K->r2 == 2);
  BigInt ad = K->disc < 0 ? BigInt(-K->disc) : K->disc;
  CHECK(ad == biquad_disc_oracle(42, -3));
  CHECK(ad == 28224);
  // generators really are square roots
  auto s42 = K->gens[0].coords;
  CHECK(K->eq(K->mul(s42, s42), K->from_int(42)));
  auto sm3 = K->gens[1].coords;
  CHECK(K->eq(K->mul(sm3, sm3), K->from_int(-3)));
}

TEST_CASE("compositum cbrt(17), sqrt(-3): the sextic field") {
  auto K = NumberField::compositum({gen_cbrt(17), gen_sqrt(-3)});
  CHECK(K->n == 6);
  CHECK(K->r1 == 0);
  CHECK(K->r2 == 3);
  BigInt ad = K->disc < 0 ? BigInt(-K->disc) : K->disc;
  // conductor-discriminant: 3 * disc(cubic)^2 with disc(Q(cbrt 17)) = -3*17^2
  CHECK(ad == BigInt(3) * BigInt(867) * BigInt(867));
}

TEST_CASE("prime decomposition matches classical splitting") {
  auto K3 = NumberField::build(QPoly::from_ints({3, 0, 1}));  // Q(sqrt(-3))
  auto d3 = K3->decompose(3);
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].e == 2);
  CHECK(d3[0].f == 1);
  auto d5 = K3->decompose(5);
  REQUIRE(d5.size() == 1);
  CHECK(d5[0].e == 1);
  CHECK(d5[0].f == 2);  // -3 is not a square mod 5
  auto d7 = K3->decompose(7);
  REQUIRE(d7.size() == 2);  // -3 = 4 mod 7 is a square

  auto K29 = NumberField::compositum({gen_sqrt(29), gen_sqrt(-3)});
  auto dec = K29->decompose(3);
  REQUIRE(dec.size() == 1);
  CHECK(dec[0].e == 2);
  CHECK(dec[0].f == 2);

  auto K42 = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  auto dec42 = K42->decompose(3);
  REQUIRE(dec42.size() == 2);
  for (auto& P : dec42) {
    CHECK(P.e == 2);
    CHECK(P.f == 1);
  }
}

TEST_CASE("sum of e*f equals the degree for many primes") {
  auto K = NumberField::compositum({gen_cbrt(17), gen_sqrt(-3)});
  for (long p : {2, 3, 5, 7, 11, 13, 17, 97}) {
    long total = 0;
    for (auto& P : K->decompose(p)) total += P.e * P.f;
    CHECK(total == K->n);
  }
}

TEST_CASE("valuations and second generators") {
  auto K = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  for (long p : {2, 3, 7}) {
    auto dec = K->decompose(p);
    for (auto& P : dec) {
      // v_P(p) = e, v_P(second_gen) = 1, other primes see it with v = 0
      CHECK(K->val_at(P, K->from_int(p)) == P.e);
      CHECK(K->val_at(P, P.second_gen) == 1);
      for (auto& Q : dec) {
        if (Q.index == P.index) continue;
        CHECK(K->val_at(Q, P.second_gen) == 0);
      }
    }
  }
}

TEST_CASE("norm multiplicativity on random elements") {
  auto K = NumberField::compositum({gen_sqrt(29), gen_sqrt(-3)});
  Rng rng(2024);
  for (int i = 0; i < 25; ++i) {
    ElemCoords a(K->n), b(K->n);
    for (long j = 0; j < K->n; ++j) {
      a[j] = BigRat((long)rng.below(19) - 9);
      b[j] = BigRat((long)rng.below(19) - 9);
    }
    if (K->is_zero(a) || K->is_zero(b)) continue;
    CHECK(K->norm(K->mul(a, b)) == K->norm(a) * K->norm(b));
    CHECK(K->trace(K->add(a, b)) == K->trace(a) + K->trace(b));
  }
}

TEST_CASE("roots of unity orders") {
  auto Q = NumberField::rationals();
  CHECK(Q->mu_ell_order(3) == 1);

  auto K42 = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  CHECK(K42->mu_ell_order(3) == 3);
  auto z = K42->mu_ell_generator(3);
  CHECK(K42->eq(K42->power(z, 3), K42->one()));
  CHECK(!K42->eq(z, K42->one()));

  auto K9 = NumberField::compositum({gen_zeta3pow(2)});
  CHECK(K9->n == 6);
  CHECK(K9->mu_ell_order(3) == 9);

  auto K2 = NumberField::build(QPoly::from_ints({-2, 0, 1}));  // Q(sqrt 2): no mu_3
  CHECK(K2->mu_ell_order(3) == 1);
}

TEST_CASE("automorphisms of the biquadratic field") {
  auto K = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  // tau: sqrt(42) -> sqrt(42), sqrt(-3) -> -sqrt(-3)
  auto tau = K->automorphism({K->gens[0].coords, K->neg(K->gens[1].coords)});
  REQUIRE(tau.has_value());
  // tau fixes sqrt(42)
  auto img = K->apply_matrix(*tau, K->gens[0].coords);
  CHECK(K->eq(img, K->gens[0].coords));
  // tau^2 = id
  auto z = K->mu_ell_generator(3);
  auto tz = K->apply_matrix(*tau, z);
  CHECK(K->eq(K->apply_matrix(*tau, tz), z));
  // non-automorphism rejected: sqrt(42) -> sqrt(-3)
  CHECK(!K->automorphism({K->gens[1].coords, K->gens[0].coords}).has_value());
}

TEST_CASE("sextic automorphism of order 3") {
  auto K = NumberField::compositum({gen_cbrt(17), gen_sqrt(-3)});
  // sigma: cbrt17 -> zeta3 * cbrt17, sqrt(-3) fixed; zeta3 = (-1+sqrt(-3))/2
  auto zeta = K->mul_rat(K->add(K->from_int(-1), K->gens[1].coords), BigRat(1, 2));
  auto sig_img0 = K->mul(zeta, K->gens[0].coords);
  auto sigma = K->automorphism({sig_img0, K->gens[1].coords});
  REQUIRE(sigma.has_value());
  // order 3
  auto x = K->gens[0].coords;
  auto sx = K->apply_matrix(*sigma, x);
  auto ssx = K->apply_matrix(*sigma, sx);
  auto sssx = K->apply_matrix(*sigma, ssx);
  CHECK(K->eq(sssx, x));
  CHECK(!K->eq(sx, x));
}

TEST_CASE("power roots: cube roots exist exactly when they should") {
  auto K = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  // 8 = 2^3 has a cube root
  auto roots = K->power_roots(3, K->from_int(8));
  bool found2 = false;
  for (auto& r : roots)
    if (K->eq(r, K->from_int(2))) found2 = true;
  CHECK(found2);
  // zeta3 itself is not a cube in K (else zeta_9 would live in K)
  auto z = K->mu_ell_generator(3);
  CHECK(K->power_roots(3, z).empty());
  // (1+sqrt(-3))^3 has its cube root
  auto a = K->add(K->one(), K->gens[1].coords);
  auto a3 = K->power(a, 3);
  auto r3 = K->power_roots(3, a3);
  bool founda = false;
  for (auto& r : r3)
    if (K->eq(r, a) || K->eq(r, K->mul(z, a)) || K->eq(r, K->mul(K->mul(z, z), a))) founda = true;
  CHECK(founda);
}

TEST_CASE("minkowski bound is sensible") {
  auto K = NumberField::compositum({gen_sqrt(42), gen_sqrt(-3)});
  BigRat mb = K->minkowski_bound();
  CHECK(mb > 25);
  CHECK(mb < 27);  // true value ~25.5, upper-rounding allowed
}

TEST_CASE("element inverse and minpoly") {
  auto K = NumberField::compositum({gen_sqrt(29), gen_sqrt(-3)});
  auto x = K->add(K->gens[0].coords, K->from_int(2));
  auto xi = K->inv(x);
  CHECK(K->eq(K->mul(x, xi), K->one()));
  auto mp = K->elem_minpoly(K->gens[0].coords);
  CHECK(mp == QPoly::from_ints({-29, 0, 1}));
}
