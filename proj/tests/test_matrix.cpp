#include "doctest.h"

#include "logcap/matrix.hpp"

#include <algorithm>

using namespace logcap;

namespace {

ZMat from_rows(const std::vector<std::vector<long>>& rows) {
  ZMat m((long)rows.size(), (long)rows[0].size());
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

// gcd of all k x k minors.
BigInt minor_gcd(const ZMat& m, long k) {
  std::vector<long> ri(k), ci(k);
  BigInt g = 0;
  std::function<void(long, long)> loop_rows = [&](long pos, long start) {
    if (pos == k) {
      std::function<void(long, long)> loop_cols = [&](long cpos, long cstart) {
        if (cpos == k) {
          ZMat sub(k, k);
          for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
          g = gcd(g, det(sub));
          return;
        }
        for (long c = cstart; c < m.cols; ++c) {
          ci[cpos] = c;
          loop_cols(cpos + 1, c + 1);
        }
      };
      loop_cols(0, 0);
      return;
    }
    for (long r = start; r < m.rows; ++r) {
      ri[pos] = r;
      loop_rows(pos + 1, r + 1);
    }
  };
  loop_rows(0, 0);
  return g;
}

}  // namespace

TEST_CASE("smith normal form on spec cases") {
  auto id = ZMat::identity(2);
  auto s = smith(id);
  CHECK(s.divisors == std::vector<BigInt>{1, 1});

  ZMat d = from_rows({{3, 0}, {0, 9}});
  auto s2 = smith(d);
  CHECK(s2.divisors == std::vector<BigInt>{3, 9});
}

TEST_CASE("smith transforms are unimodular and U*A*V = S") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    ZMat a(4, 4);
    for (long i = 0; i < 16; ++i) a.a[i] = (long)rng.below(41) - 20;
    auto s = smith(a);
    BigInt du = det(s.U), dv = det(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    CHECK(s.U * a * s.V == s.S);
    for (size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      if (s.divisors[i + 1] != 0) {
        if (s.divisors[i] != 0) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
      }
    }
  }
}

TEST_CASE("smith divisors match minor-gcd oracle on random 4x4") {
  Rng rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    ZMat a(4, 4);
    for (long i = 0; i < 16; ++i) a.a[i] = (long)rng.below(41) - 20;
    auto s = smith(a);
    // d_1 * ... * d_k = gcd of k x k minors
    BigInt prod = 1;
    for (long k = 1; k <= 4; ++k) {
      BigInt mg = minor_gcd(a, k);
      if (k <= (long)s.divisors.size() && s.divisors[k - 1] != 0) {
        prod *= s.divisors[k - 1];
        CHECK(prod == mg);
      } else {
        CHECK(mg == 0);
        break;
      }
    }
  }
}

TEST_CASE("padic smith pivots on valuation") {
  ZMat a = from_rows({{3, 1}, {0, 9}});
  auto r = smith_mod_prime_power(a, 3, 8);
  CHECK(r.exponents == std::vector<long>{0, 3});  // divisors 1, 27

  ZMat b = from_rows({{9, 0}, {0, 27}});
  auto r2 = smith_mod_prime_power(b, 3, 5);
  CHECK(r2.exponents == std::vector<long>{2, 3});

  // Entries that vanish at the working precision are reported at the cap.
  ZMat c = from_rows({{3, 0}, {0, 243}});
  auto r3 = smith_mod_prime_power(c, 3, 4);
  CHECK(r3.exponents == std::vector<long>{1, 4});
}

TEST_CASE("hnf and kernel") {
  ZMat a = from_rows({{2, 4, 6}, {0, 2, 4}});
  ZMat h = hnf(a);
  CHECK(h.cols == 2);
  ZMat k = kernel(a);
  CHECK(k.cols == 1);
  auto img = a.apply({k.at(0, 0), k.at(1, 0), k.at(2, 0)});
  CHECK(img[0] == 0);
  CHECK(img[1] == 0);
}

TEST_CASE("finite abelian groups from relations") {
  // Z^2 / <(3,0),(0,9)>
  auto g = finab_from_relations(2, {{BigInt(3), BigInt(0)}, {BigInt(0), BigInt(9)}});
  CHECK(g.order == 27);
  CHECK(g.divisors == std::vector<BigInt>{3, 9});
  CHECK(g.is_trivial_class({3, 0}));
  CHECK(!g.is_trivial_class({1, 0}));

  // trivial group
  auto t = finab_from_relations(1, {{BigInt(1)}});
  CHECK(t.order == 1);
  CHECK(t.divisors.empty());
}

TEST_CASE("lattice quotient divisors") {
  ZMat L1 = ZMat::identity(2);
  ZMat L2 = from_rows({{2, 0}, {0, 6}});
  auto d = lattice_quotient_divisors(L1, L2);
  CHECK(d == std::vector<BigInt>{2, 6});
}

TEST_CASE("integer solve") {
  ZMat a = from_rows({{2, 0}, {0, 3}});
  auto x = solve_integer(a, {4, 9});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK(!solve_integer(a, {1, 1}).has_value());
}
