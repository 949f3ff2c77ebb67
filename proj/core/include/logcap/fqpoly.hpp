#pragma once

#include "logcap/integers.hpp"

namespace logcap {

// Finite field F_{p^f}, p an odd (small) prime.  Elements are coefficient
// vectors of length f over F_p modulo a monic irreducible h.  f = 1 gives
// plain F_p with h = x - 0.
struct FqCtx {
  long p = 3;
  int f = 1;
  std::vector<long> h;  // monic, degree f, coefficients in [0,p)

  static FqCtx prime_field(long p);
  // Builds F_{p^f} with a deterministically chosen irreducible modulus.
  static FqCtx extension(long p, int f);
  // Uses the given monic irreducible modulus (checked).
  static FqCtx with_modulus(long p, const std::vector<long>& h);

  BigInt order() const { return int_pow(BigInt(p), (unsigned long)f); }
};

using Fq = std::vector<long>;  // length ctx.f

Fq fq_zero(const FqCtx& c);
Fq fq_one(const FqCtx& c);
Fq fq_from_int(const FqCtx& c, long v);
Fq fq_gen(const FqCtx& c);  // class of x
bool fq_is_zero(const Fq& a);
bool fq_eq(const Fq& a, const Fq& b);
Fq fq_add(const FqCtx& c, const Fq& a, const Fq& b);
Fq fq_sub(const FqCtx& c, const Fq& a, const Fq& b);
Fq fq_neg(const FqCtx& c, const Fq& a);
Fq fq_mul(const FqCtx& c, const Fq& a, const Fq& b);
Fq fq_inv(const FqCtx& c, const Fq& a);
Fq fq_pow(const FqCtx& c, Fq a, BigInt e);
// Enumeration order: lexicographic by coefficient vector.
Fq fq_from_index(const FqCtx& c, BigInt idx);

// Polynomials over F_q, coefficient of x^i at index i.
using FqPoly = std::vector<Fq>;

FqPoly fqp_from_int_coeffs(const FqCtx& c, const std::vector<BigInt>& coeffs);
void fqp_trim(FqPoly& a);
long fqp_deg(const FqPoly& a);
bool fqp_is_zero(const FqPoly& a);
FqPoly fqp_add(const FqCtx& c, const FqPoly& a, const FqPoly& b);
FqPoly fqp_sub(const FqCtx& c, const FqPoly& a, const FqPoly& b);
FqPoly fqp_mul(const FqCtx& c, const FqPoly& a, const FqPoly& b);
FqPoly fqp_scale(const FqCtx& c, const FqPoly& a, const Fq& s);
// Requires b nonzero; division with remainder.
void fqp_divrem(const FqCtx& c, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly fqp_mod(const FqCtx& c, const FqPoly& a, const FqPoly& b);
FqPoly fqp_gcd(const FqCtx& c, FqPoly a, FqPoly b);
FqPoly fqp_monic(const FqCtx& c, const FqPoly& a);
FqPoly fqp_derivative(const FqCtx& c, const FqPoly& a);
FqPoly fqp_powmod(const FqCtx& c, FqPoly base, BigInt e, const FqPoly& mod);
Fq fqp_eval(const FqCtx& c, const FqPoly& a, const Fq& x);

// Full factorization into monic irreducibles with multiplicities.
std::vector<std::pair<FqPoly, long>> fqp_factor(const FqCtx& c, const FqPoly& a);
std::vector<Fq> fqp_roots(const FqCtx& c, const FqPoly& a);
bool fqp_is_irreducible(const FqCtx& c, const FqPoly& a);

// Small dense linear algebra over F_p.
struct FpMat {
  long p = 3;
  long rows = 0, cols = 0;
  std::vector<long> a;
  FpMat() = default;
  FpMat(long p_, long r, long c) : p(p_), rows(r), cols(c), a(r * c, 0) {}
  long& at(long i, long j) { return a[i * cols + j]; }
  long at(long i, long j) const { return a[i * cols + j]; }
  FpMat mul(const FpMat& o) const;
};

// Basis of the right kernel as columns.
FpMat fp_kernel(const FpMat& m);
long fp_rank(FpMat m);

}  // namespace logcap
