#include "doctest.h"

#include "logcap/quadratic.hpp"

using namespace logcap;

namespace {

// Brute-force Pell oracle, independent of the continued-fraction machinery:
// smallest unit > 1 of the maximal order by ascending y.
RealQuadUnit pell_brute(const BigInt& d) {
  bool half = (d % 4 == 1);
  for (BigInt y = 1;; ++y) {
    if (y > 2000000) throw CapacityError("pell oracle bound");
    if (half) {
      BigInt t2 = d * y * y - 4, t1 = d * y * y + 4;
      BigInt r;
      if (is_perfect_square(t2, &r) && mod_pos(r - y, 2) == 0) return {(r - y) / 2, y, d, true, -1};
      if (is_perfect_square(t1, &r) && mod_pos(r - y, 2) == 0) return {(r - y) / 2, y, d, true, 1};
    } else {
      BigInt t2 = d * y * y - 1, t1 = d * y * y + 1;
      BigInt r;
      if (is_perfect_square(t2, &r)) return {r, y, d, false, -1};
      if (is_perfect_square(t1, &r)) return {r, y, d, false, 1};
    }
  }
}

}  // namespace

TEST_CASE("fundamental units match the spec values") {
  auto u2 = fundamental_unit_real_quadratic(2);
  CHECK(u2.a() == 1);
  CHECK(u2.b() == 1);  // 1 + sqrt(2)
  CHECK(u2.norm == -1);

  auto u29 = fundamental_unit_real_quadratic(29);
  CHECK(u29.a() == BigRat(5, 2));
  CHECK(u29.b() == BigRat(1, 2));  // (5 + sqrt29)/2
  CHECK(u29.norm == -1);

  auto u42 = fundamental_unit_real_quadratic(42);
  CHECK(u42.a() == 13);
  CHECK(u42.b() == 2);  // 13 + 2 sqrt(42)
  CHECK(u42.norm == 1);
}

TEST_CASE("continued fraction agrees with the brute Pell oracle") {
  for (long d : {2, 3, 5, 6, 7, 10, 11, 13, 29, 42, 62, 74, 77, 105, 142, 195, 223, 229, 235,
                 258, 259, 301}) {
    BigInt dd(d);
    if (!is_squarefree(dd)) continue;
    auto cf = fundamental_unit_real_quadratic(dd);
    auto br = pell_brute(dd);
    CHECK(cf.a() == br.a());
    CHECK(cf.b() == br.b());
    CHECK(cf.norm == br.norm);
    // norm check: a^2 - d b^2 = +-1
    BigRat nrm = cf.a() * cf.a() - BigRat(dd) * cf.b() * cf.b();
    CHECK((nrm == 1 || nrm == -1));
  }
}

TEST_CASE("fundamental unit rejects bad input") {
  CHECK_THROWS_AS(fundamental_unit_real_quadratic(12), InputError);  // not squarefree
  CHECK_THROWS_AS(fundamental_unit_real_quadratic(1), InputError);
}
