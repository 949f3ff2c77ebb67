#pragma once

#include "logcap/fqpoly.hpp"
#include "logcap/padic.hpp"
#include "logcap/polynomial.hpp"

namespace logcap {

// Model of a finite extension T/Q_ell as an unramified step of degree f
// (residue modulus h) followed by an Eisenstein step of degree e with
// uniformizer t.  Elements are integral tower vectors on the basis
// { t^i y^j : 0 <= i < e, 0 <= j < f } with coefficients mod ell^N.
struct LocalField {
  long ell = 3;
  int e = 1, f = 1;
  long N = 32;           // ell-adic digit precision of coefficients
  BigInt modulus;        // ell^N
  std::vector<BigInt> h;              // monic deg f, unramified modulus
  std::vector<std::vector<BigInt>> E;  // monic deg e over O_M0; E[i] = y-vector of t^i coeff
  FqCtx residue;         // F_{ell^f} with modulus h mod ell

  int dim() const { return e * f; }
  long mprec() const { return (long)e * N; }  // uniformizer-adic precision
};

using TElem = std::vector<BigInt>;  // size e*f, index i*f+j <-> t^i y^j

LocalField make_unramified(long ell, int f, long N);
// Tame or wild totally ramified step on top of unramified(f):
// E = t^e - ell * u with u a unit lift (tame); or an explicit Eisenstein poly.
LocalField make_tame(long ell, int f, int e, long unit_class, long N);
LocalField make_with_eisenstein(long ell, int f, const std::vector<std::vector<BigInt>>& E,
                                long N);

TElem t_zero(const LocalField& T);
TElem t_one(const LocalField& T);
TElem t_from_int(const LocalField& T, const BigInt& v);
TElem t_uniformizer(const LocalField& T);
TElem t_gen_unram(const LocalField& T);  // class of y
bool t_is_zero(const TElem& a);
TElem t_add(const LocalField& T, const TElem& a, const TElem& b);
TElem t_sub(const LocalField& T, const TElem& a, const TElem& b);
TElem t_neg(const LocalField& T, const TElem& a);
TElem t_mul(const LocalField& T, const TElem& a, const TElem& b);
TElem t_pow(const LocalField& T, TElem a, BigInt k);
// Valuation in uniformizer units, in [0, e*N]; e*N means "zero at precision".
long t_val(const LocalField& T, const TElem& a);
// Inverse of a unit (valuation 0).
TElem t_inv_unit(const LocalField& T, const TElem& a);
// Exact division by t^k; throws unless valuation >= k.
TElem t_shift_down(const LocalField& T, const TElem& a, long k);
// Multiply by rational with ell-free denominator or checked ell-shift.
TElem t_scale_rat(const LocalField& T, const TElem& a, const BigRat& s);
Fq t_residue(const LocalField& T, const TElem& a);            // image in F_q (v >= 0)
TElem t_teichmuller(const LocalField& T, const TElem& unit);   // omega(u)
TElem t_from_fq(const LocalField& T, const Fq& r);             // naive lift

// Evaluate an integer polynomial at a tower element.
TElem t_eval_poly(const LocalField& T, const std::vector<BigInt>& poly, const TElem& x);

// Norm down to Q_ell as a truncated ell-adic number (det of multiplication).
PadicNumber t_norm(const LocalField& T, const TElem& a);
// Trace to Q_ell.
PadicNumber t_trace(const LocalField& T, const TElem& a);
// Characteristic polynomial of multiplication by a, coefficients mod ell^N.
std::vector<BigInt> t_charpoly(const LocalField& T, const TElem& a);

// All roots of a monic integer polynomial in T (up to working precision).
std::vector<TElem> t_roots(const LocalField& T, const std::vector<BigInt>& poly);

// Largest a with mu_{ell^a} inside T, together with a generator (a >= 1).
struct LocalRoots {
  int a = 0;
  TElem zeta;  // primitive ell^a-th root of unity when a >= 1
};
LocalRoots t_mu_ell_part(const LocalField& T);

// Is x an ell-th power in T^x?  x given as (element, extra ell-shift k):
// the value is x * ell^k.  Decides via valuation + unit filtration.
bool t_is_lth_power(const LocalField& T, const TElem& x, long ell_shift = 0);
// Exhaustive cross-check on O/m^depth for tiny fields (test support).
bool t_is_lth_power_exhaustive(const LocalField& T, const TElem& x);

// One Q_ell-irreducible factor of a global polynomial, with its local model.
struct LocalFactorPlace {
  int e = 1, f = 1;
  std::vector<BigInt> factor;  // monic factor mod ell^N (charpoly of the root)
  LocalField T;
  TElem root;  // image of the polynomial's variable in T
};

// Factor a monic squarefree (over Q) integer polynomial over Q_ell.
// Throws CapacityError for wildly ramified shapes when allow_wild is false
// or the shape is beyond the tame/simple-wild search.
std::vector<LocalFactorPlace> local_factor(const std::vector<BigInt>& poly, long ell, long N,
                                           bool allow_wild = true);

}  // namespace logcap
