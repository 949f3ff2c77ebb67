#include "doctest.h"

#include "logcap/fqpoly.hpp"
#include "logcap/polynomial.hpp"

using namespace logcap;

TEST_CASE("qpoly arithmetic and resultants") {
  QPoly f = QPoly::from_ints({-17, 0, 0, 1});  // x^3 - 17
  QPoly g = f.derivative();
  CHECK(g.deg() == 2);
  BigRat d = qpoly_disc(f);
  CHECK(d == BigRat(-27 * 289));

  QPoly a = QPoly::from_ints({-1, 1});
  QPoly b = QPoly::from_ints({1, 1});
  QPoly prod = a * b;
  CHECK(prod == QPoly::from_ints({-1, 0, 1}));
  QPoly q, r;
  qpoly_divrem(prod, a, q, r);
  CHECK(r.is_zero());
  CHECK(q == b);
}

TEST_CASE("sturm real root counts give signatures") {
  // x^2 + 3: no real roots
  CHECK(sturm_count_real_roots(QPoly::from_ints({3, 0, 1})) == 0);
  // x^2 - 42
  CHECK(sturm_count_real_roots(QPoly::from_ints({-42, 0, 1})) == 2);
  // x^3 - 17: one real root
  CHECK(sturm_count_real_roots(QPoly::from_ints({-17, 0, 0, 1})) == 1);
  // x^3 - 3x + 1 (totally real cubic)
  CHECK(sturm_count_real_roots(QPoly::from_ints({1, -3, 0, 1})) == 3);
}

TEST_CASE("real root isolation brackets sqrt(42)") {
  QPoly f = QPoly::from_ints({-42, 0, 1});
  auto roots = isolate_real_roots(f, BigRat(1, 1000));
  REQUIRE(roots.size() == 2);
  // positive root in (6.48, 6.49)
  CHECK(roots[1].first < BigRat(6481, 1000));
  CHECK(roots[1].second > BigRat(648, 100));
  CHECK(roots[1].second - roots[1].first <= BigRat(1, 1000));
}

TEST_CASE("fq factorization over prime fields") {
  FqCtx f3 = FqCtx::prime_field(3);
  // x^2 + 1 irreducible mod 3
  FqPoly p = fqp_from_int_coeffs(f3, {BigInt(1), BigInt(0), BigInt(1)});
  CHECK(fqp_is_irreducible(f3, p));
  // x^2 - 1 = (x-1)(x+1)
  FqPoly q = fqp_from_int_coeffs(f3, {BigInt(-1), BigInt(0), BigInt(1)});
  auto fac = fqp_factor(f3, q);
  CHECK(fac.size() == 2);
  CHECK(fac[0].second == 1);
  // x^3 - 17 = (x+1)^3 mod 3
  FqPoly c = fqp_from_int_coeffs(f3, {BigInt(-17), BigInt(0), BigInt(0), BigInt(1)});
  auto fc = fqp_factor(f3, c);
  REQUIRE(fc.size() == 1);
  CHECK(fc[0].second == 3);
  CHECK(fqp_deg(fc[0].first) == 1);
}

TEST_CASE("fq extension fields") {
  FqCtx f9 = FqCtx::extension(3, 2);
  CHECK(f9.order() == 9);
  // multiplicative order of every nonzero element divides 8
  for (long i = 1; i < 9; ++i) {
    Fq x = fq_from_index(f9, i);
    CHECK(fq_eq(fq_pow(f9, x, 8), fq_one(f9)));
  }
  // x^2 - g has roots in F_81 viewed over F_9? sanity: factor x^9 - x splits
  FqPoly xq(10, fq_zero(f9));
  xq[9] = fq_one(f9);
  xq[1] = fq_neg(f9, fq_one(f9));
  auto roots = fqp_roots(f9, xq);
  CHECK(roots.size() == 9);
}

TEST_CASE("hensel lifting factors x^2-1 over Z/3^10") {
  std::vector<BigInt> f{-1, 0, 1};
  std::vector<std::vector<BigInt>> facs{{2, 1}, {1, 1}};  // (x-1)(x+1) mod 3
  auto lifted = hensel_lift(f, 3, facs, 10);
  REQUIRE(lifted.size() == 2);
  // product of the lifted factors equals f mod 3^10
  ZModPoly prod = zmod_mul(lifted[0], lifted[1]);
  ZModPoly target = zmod_from(f, int_pow(BigInt(3), 10));
  CHECK(zmod_sub(prod, target).c.empty());
  // each lifted factor has a root that is a square root of 1
  for (auto& g : lifted) {
    BigInt root = mod_pos(-g.c[0], g.modulus);
    CHECK(mod_pos(root * root, g.modulus) == 1);
  }
}

TEST_CASE("hensel lifting three factors") {
  // f = x^3 - x = x(x-1)(x+1) mod 5, lift to 5^8
  std::vector<BigInt> f{0, -1, 0, 1};
  std::vector<std::vector<BigInt>> facs{{0, 1}, {4, 1}, {1, 1}};
  auto lifted = hensel_lift(f, 5, facs, 8);
  REQUIRE(lifted.size() == 3);
  ZModPoly prod = zmod_mul(zmod_mul(lifted[0], lifted[1]), lifted[2]);
  ZModPoly target = zmod_from(f, int_pow(BigInt(5), 8));
  CHECK(zmod_sub(prod, target).c.empty());
}

TEST_CASE("fp linear algebra") {
  FpMat m(3, 2, 3);
  // rows: [1 2 0], [2 1 0] over F_3: second row is twice the first
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 1;
  CHECK(fp_rank(m) == 1);
  auto k = fp_kernel(m);
  CHECK(k.cols == 2);
  // rank 2 example over F_5
  FpMat m2(5, 2, 2);
  m2.at(0, 0) = 1;
  m2.at(0, 1) = 2;
  m2.at(1, 0) = 2;
  m2.at(1, 1) = 1;
  CHECK(fp_rank(m2) == 2);
  CHECK(fp_kernel(m2).cols == 0);
}
