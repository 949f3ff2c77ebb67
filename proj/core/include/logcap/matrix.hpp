#pragma once

#include "logcap/integers.hpp"

namespace logcap {

// Dense integer matrix, column-vector convention: maps act as A*x, lattices
// are spanned by columns.
struct ZMat {
  long rows = 0, cols = 0;
  std::vector<BigInt> a;  // row-major

  ZMat() = default;
  ZMat(long r, long c) : rows(r), cols(c), a(r * c, 0) {}
  static ZMat identity(long n);

  BigInt& at(long i, long j) { return a[i * cols + j]; }
  const BigInt& at(long i, long j) const { return a[i * cols + j]; }

  ZMat operator*(const ZMat& o) const;
  std::vector<BigInt> apply(const std::vector<BigInt>& x) const;
  ZMat transpose() const;
  bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct QMat {
  long rows = 0, cols = 0;
  std::vector<BigRat> a;
  QMat() = default;
  QMat(long r, long c) : rows(r), cols(c), a(r * c, BigRat(0)) {}
  static QMat from(const ZMat& m);
  BigRat& at(long i, long j) { return a[i * cols + j]; }
  const BigRat& at(long i, long j) const { return a[i * cols + j]; }
  QMat operator*(const QMat& o) const;
  std::vector<BigRat> apply(const std::vector<BigRat>& x) const;
};

BigInt det(const ZMat& m);
BigRat det(const QMat& m);

// Solve A x = b over Q; returns empty when singular/inconsistent.
std::optional<std::vector<BigRat>> solve(const QMat& A, const std::vector<BigRat>& b);
std::optional<QMat> inverse(const QMat& A);

// Column-style Hermite normal form of the column lattice of A: returns a
// matrix whose columns are a basis (pivots positive, entries right of the
// pivot reduced).  Zero columns dropped.
ZMat hnf(const ZMat& A);

// Basis of {x : A x = 0} as columns.
ZMat kernel(const ZMat& A);

// Smith normal form: U*A*V = S diagonal, d1 | d2 | ..., U,V unimodular.
struct SmithResult {
  ZMat U, S, V;
  std::vector<BigInt> divisors;  // all min(rows,cols) entries, zeros included
};
SmithResult smith(const ZMat& A);

// SNF over Z/p^N with pivoting on minimal p-valuation.  Divisor exponents
// are capped at N ("zero at this precision").
struct PadicSmithResult {
  std::vector<long> exponents;  // exponent of p in each divisor, N == cap
  ZMat U, V;                    // transforms mod p^N, unimodular mod p
  long cap;
};
PadicSmithResult smith_mod_prime_power(const ZMat& A, long p, long N);

// Finite abelian group Z^r / <relation columns>.
struct FinAb {
  long rank_gens = 0;
  std::vector<BigInt> divisors;  // nontrivial (> 1) elementary divisors, d1|d2|...
  BigInt order = 1;
  bool finite = true;
  ZMat to_smith;  // full unimodular map standard -> smith coordinates
  std::vector<BigInt> all_divisors;  // including 1s and 0s, length rank_gens

  // Class of x in smith coordinates (reduced mod divisors; entries for
  // divisor 1 dropped).  Throws when infinite part is hit nontrivially.
  std::vector<BigInt> classify(const std::vector<BigInt>& x) const;
  bool is_trivial_class(const std::vector<BigInt>& x) const;
  std::string str() const;
};

FinAb finab_from_relations(long rank, const std::vector<std::vector<BigInt>>& relation_cols);

// Elementary divisors of L1/L2 for column lattices L2 <= L1 of equal full rank.
std::vector<BigInt> lattice_quotient_divisors(const ZMat& L1, const ZMat& L2);

// Integer solution x of A x = b, if one exists.
std::optional<std::vector<BigInt>> solve_integer(const ZMat& A, const std::vector<BigInt>& b);

}  // namespace logcap
