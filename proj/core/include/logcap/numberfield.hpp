#pragma once

#include "logcap/embeddings.hpp"
#include "logcap/fqpoly.hpp"
#include "logcap/matrix.hpp"
#include "logcap/polynomial.hpp"

#include <map>
#include <memory>
#include <string>

namespace logcap {

class NumberField;

using ElemCoords = std::vector<BigRat>;  // coordinates on the integral basis

// Generator of a compositum component.
struct GenSpec {
  enum class Kind { Sqrt, Cbrt, Zeta3Pow, Poly } kind = Kind::Poly;
  BigInt param = 0;  // d for sqrt/cbrt; k for zeta_{3^k}
  QPoly minpoly;
  std::string label;
};

GenSpec gen_sqrt(const BigInt& d);
GenSpec gen_cbrt(const BigInt& d);
GenSpec gen_zeta3pow(long k);
GenSpec gen_poly(const QPoly& f, const std::string& label);

struct PrimeIdeal {
  long p = 0;
  long e = 1, f = 1;
  ZMat lattice;           // column HNF basis in O-coordinates, det = p^f... (norm)
  BigInt norm;            // p^f
  ElemCoords second_gen;  // P = (p, second_gen)
  FqCtx resfield;         // F_{p^f}
  FpMat to_res;           // (f x n) matrix over F_p: O-coords mod p -> resfield coords
  int index = 0;          // position among primes over p (deterministic order)
  std::string key() const;
};

struct IdealLat {
  ZMat basis;  // n x n column HNF
  BigInt norm;
};

class NumberField {
 public:
  long n = 1;
  QPoly min_poly;             // monic integral, irreducible
  long r1 = 1, r2 = 0;
  BigInt disc = 1;
  ZMat basis_num;             // basis element i = (1/basis_den) sum_j basis_num(i,j) theta^j
  BigInt basis_den = 1;
  QMat theta_to_basis;        // theta-power coords -> basis coords
  std::vector<ZMat> mult;     // mult[i].at(k, j) = coeff of b_k in b_i * b_j
  struct Gen {
    GenSpec spec;
    ElemCoords coords;
  };
  std::vector<Gen> gens;
  std::vector<long> theta_combo;  // theta = sum combo[i] * gen[i]
  std::string label;

  static std::shared_ptr<const NumberField> rationals();
  static std::shared_ptr<const NumberField> build(const QPoly& poly, long degree_cap = 18);
  static std::shared_ptr<const NumberField> compositum(const std::vector<GenSpec>& parts,
                                                       long degree_cap = 18);

  bool is_rationals() const { return n == 1; }

  // --- element operations (coordinates on the integral basis) ---
  ElemCoords zero() const { return ElemCoords(n, BigRat(0)); }
  ElemCoords one() const;
  ElemCoords from_int(const BigInt& v) const;
  ElemCoords from_rat(const BigRat& v) const;
  ElemCoords add(const ElemCoords& a, const ElemCoords& b) const;
  ElemCoords sub(const ElemCoords& a, const ElemCoords& b) const;
  ElemCoords neg(const ElemCoords& a) const;
  ElemCoords mul(const ElemCoords& a, const ElemCoords& b) const;
  ElemCoords mul_rat(const ElemCoords& a, const BigRat& s) const;
  ElemCoords inv(const ElemCoords& a) const;
  ElemCoords power(const ElemCoords& a, BigInt k) const;
  bool is_zero(const ElemCoords& a) const;
  bool eq(const ElemCoords& a, const ElemCoords& b) const;
  BigRat norm(const ElemCoords& a) const;
  BigRat trace(const ElemCoords& a) const;
  bool is_integral(const ElemCoords& a) const;
  QMat mult_matrix(const ElemCoords& a) const;   // on basis coords
  QPoly elem_minpoly(const ElemCoords& a) const;
  // theta-power representation: returns (integer poly, denominator)
  std::pair<std::vector<BigInt>, BigInt> to_theta_poly(const ElemCoords& a) const;
  ElemCoords from_theta_poly(const QPoly& p) const;
  std::string elem_str(const ElemCoords& a) const;

  // --- arithmetic invariants ---
  std::vector<PrimeIdeal> decompose(long p) const;  // memoized
  long val_at(const PrimeIdeal& P, const ElemCoords& x) const;
  Fq residue_of(const PrimeIdeal& P, const ElemCoords& x) const;  // v_P(x) = 0 needed
  IdealLat ideal_of_element(const ElemCoords& x) const;
  IdealLat ideal_mul(const IdealLat& a, const IdealLat& b) const;
  IdealLat ideal_from_prime(const PrimeIdeal& P) const;
  IdealLat ideal_power(const IdealLat& a, long k) const;
  bool ideal_contains(const IdealLat& a, const ElemCoords& x) const;
  IdealLat ideal_scale(const IdealLat& a, const BigRat& s) const;

  // Automorphism from generator images; returns basis-coordinate matrix.
  std::optional<QMat> automorphism(const std::vector<ElemCoords>& gen_images) const;
  ElemCoords apply_matrix(const QMat& m, const ElemCoords& x) const;

  // Complex embeddings of the integral basis, each row one embedding.
  // Throws CapacityError when generator conjugates are not representable.
  std::vector<std::vector<CplxInterval>> embeddings(const BigRat& eps) const;
  // Exact T2 Gram matrix when complex conjugation is an automorphism or the
  // field is totally real; otherwise rational lower/upper bounds via
  // intervals (G_low <= T2 <= G_up entrywise).
  QMat t2_gram_exact_or_lower(bool* exact) const;
  QMat t2_gram_upper() const;
  // upper bound on sum_i |c_i| for elements with T2 <= t2bound
  BigRat coord_bound(const BigRat& t2bound) const;

  // Roots in K of a monic integer polynomial with T2(root) <= t2_bound.
  std::vector<ElemCoords> roots_of_integer_poly(const std::vector<BigInt>& poly,
                                                const BigRat& t2_bound) const;
  // Roots x in K of x^m = w for w in K (used by saturation).
  std::vector<ElemCoords> power_roots(long m, const ElemCoords& w) const;

  long mu_ell_order(long ell) const;  // order of the ell-part of the roots of unity
  ElemCoords mu_ell_generator(long ell) const;  // requires order > 1

  // Minkowski bound (rational upper bound).
  BigRat minkowski_bound() const;

 private:
  struct Memo {
    std::map<long, std::vector<PrimeIdeal>> decomp;
    std::map<long, std::pair<long, ElemCoords>> mu;
    std::map<std::string, std::vector<std::vector<CplxInterval>>> embeds;
  };
  mutable Memo memo_;
  friend std::shared_ptr<const NumberField> finish_build(NumberField&& draft);
};

using FieldPtr = std::shared_ptr<const NumberField>;

}  // namespace logcap
