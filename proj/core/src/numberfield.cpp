#include "logcap/numberfield.hpp"

#include "logcap/zfactor.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace logcap {

GenSpec gen_sqrt(const BigInt& d) {
  GenSpec g;
  g.kind = GenSpec::Kind::Sqrt;
  g.param = d;
  g.minpoly = QPoly({BigRat(-d), BigRat(0), BigRat(1)});
  g.label = "sqrt(" + d.str() + ")";
  return g;
}

GenSpec gen_cbrt(const BigInt& d) {
  GenSpec g;
  g.kind = GenSpec::Kind::Cbrt;
  g.param = d;
  g.minpoly = QPoly({BigRat(-d), BigRat(0), BigRat(0), BigRat(1)});
  g.label = "cbrt(" + d.str() + ")";
  return g;
}

GenSpec gen_zeta3pow(long k) {
  GenSpec g;
  g.kind = GenSpec::Kind::Zeta3Pow;
  g.param = k;
  long step = 1;
  for (long i = 1; i < k; ++i) step *= 3;
  // cyclotomic polynomial of 3^k: x^(2*step) + x^step + 1
  std::vector<BigRat> c(2 * step + 1, BigRat(0));
  c[0] = 1;
  c[step] = 1;
  c[2 * step] = 1;
  g.minpoly = QPoly(std::move(c));
  g.label = "zeta(" + std::to_string(3) + "^" + std::to_string(k) + ")";
  return g;
}

GenSpec gen_poly(const QPoly& f, const std::string& label) {
  GenSpec g;
  g.kind = GenSpec::Kind::Poly;
  g.minpoly = f;
  g.label = label;
  return g;
}

std::string PrimeIdeal::key() const {
  return std::to_string(p) + "." + std::to_string(index);
}

namespace {

// ---- order arithmetic during construction ----
// An order is given by basis rows over theta-powers with a common
// denominator: b_i = (1/den) * sum_j rows(i,j) theta^j.
struct Order {
  ZMat rows;
  BigInt den = 1;
};

// Traces of theta^k via Newton's identities.
std::vector<BigRat> power_traces(const QPoly& f, long upto) {
  long n = f.deg();
  std::vector<BigRat> a(n + 1);  // monic coefficients
  for (long i = 0; i <= n; ++i) a[i] = f.coeff(i);
  std::vector<BigRat> p(upto + 1, BigRat(0));
  p[0] = BigRat(n);
  for (long k = 1; k <= upto; ++k) {
    BigRat s(0);
    for (long i = 1; i < k && i <= n; ++i) s += a[n - i] * p[k - i];
    if (k <= n)
      p[k] = -s - BigRat(k) * a[n - k];
    else
      p[k] = -s - ((k - n >= 0) ? a[0] * p[k - n] : BigRat(0));
  }
  return p;
}

std::vector<BigRat> poly_mul_mod(const std::vector<BigRat>& x, const std::vector<BigRat>& y,
                                 const QPoly& f) {
  long n = f.deg();
  std::vector<BigRat> prod(2 * n - 1, BigRat(0));
  for (long i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (long j = 0; j < n; ++j)
      if (y[j] != 0) prod[i + j] += x[i] * y[j];
  }
  for (long d = 2 * n - 2; d >= n; --d) {
    BigRat c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (long j = 0; j < n; ++j) prod[d - n + j] -= c * f.coeff(j);
  }
  prod.resize(n);
  return prod;
}

BigRat order_disc(const Order& O, const QPoly& f, const std::vector<BigRat>& traces) {
  long n = f.deg();
  QMat T(n, n);
  for (long i = 0; i < n; ++i) {
    std::vector<BigRat> bi(n);
    for (long j = 0; j < n; ++j) bi[j] = BigRat(O.rows.at(i, j));
    for (long k = i; k < n; ++k) {
      std::vector<BigRat> bk(n);
      for (long j = 0; j < n; ++j) bk[j] = BigRat(O.rows.at(k, j));
      auto prod = poly_mul_mod(bi, bk, f);
      BigRat tr(0);
      for (long j = 0; j < n; ++j) tr += prod[j] * traces[j];
      tr /= BigRat(O.den * O.den);
      T.at(i, k) = tr;
      T.at(k, i) = tr;
    }
  }
  return det(T);
}

// x in theta-power coords -> order-basis coords (must be exact).
struct OrderCtx {
  const Order* O;
  const QPoly* f;
  QMat to_basis;  // theta coords -> basis coords
};

OrderCtx make_ctx(const Order& O, const QPoly& f) {
  long n = f.deg();
  QMat M(n, n);
  // columns = basis elements in theta coords
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M.at(j, i) = BigRat(O.rows.at(i, j), O.den);
  auto inv = inverse(M);
  if (!inv) throw InvariantViolation("order basis not invertible");
  return {&O, &f, *inv};
}

std::vector<BigRat> basis_coords_of(const OrderCtx& ctx, const std::vector<BigRat>& theta_coords) {
  return ctx.to_basis.apply(theta_coords);
}

std::vector<BigRat> theta_coords_of(const OrderCtx& ctx, const std::vector<BigRat>& basis_coords) {
  long n = ctx.f->deg();
  std::vector<BigRat> out(n, BigRat(0));
  for (long i = 0; i < n; ++i) {
    if (basis_coords[i] == 0) continue;
    for (long j = 0; j < n; ++j)
      out[j] += basis_coords[i] * BigRat(ctx.O->rows.at(i, j), ctx.O->den);
  }
  return out;
}

// Multiplication table of the order (basis coords); entries must be integers.
std::vector<ZMat> order_mult_table(const Order& O, const QPoly& f) {
  long n = f.deg();
  OrderCtx ctx = make_ctx(O, f);
  std::vector<ZMat> table(n, ZMat(n, n));
  for (long i = 0; i < n; ++i) {
    std::vector<BigRat> bi(n);
    for (long j = 0; j < n; ++j) bi[j] = BigRat(O.rows.at(i, j), O.den);
    for (long j = 0; j < n; ++j) {
      std::vector<BigRat> bj(n);
      for (long k = 0; k < n; ++k) bj[k] = BigRat(O.rows.at(j, k), O.den);
      auto prod = poly_mul_mod(bi, bj, f);
      auto coords = basis_coords_of(ctx, prod);
      for (long k = 0; k < n; ++k) {
        if (rat_den(coords[k]) != 1)
          throw InvariantViolation("order not multiplicatively closed");
        table[i].at(k, j) = rat_num(coords[k]);
      }
    }
  }
  return table;
}

// One round of radical-idealizer enlargement at p.  Returns true if the
// order grew.
bool round2_step(Order& O, const QPoly& f, long p) {
  long n = f.deg();
  auto table = order_mult_table(O, f);
  // multiplication in basis coords mod p
  auto mul_mod = [&](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(n, 0);
    for (long i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (long j = 0; j < n; ++j) {
        if (!b[j]) continue;
        long prod = (long)((__int128)a[i] * b[j] % p);
        for (long k = 0; k < n; ++k) {
          long c = (long)(mod_pos(table[i].at(k, j), p));
          if (c) out[k] = (long)((out[k] + (__int128)prod * c) % p);
        }
      }
    }
    return out;
  };
  // Frobenius matrix: columns = b_i^p
  FpMat F(p, n, n);
  for (long i = 0; i < n; ++i) {
    // b_i^p via square-and-multiply
    std::vector<long> base(n, 0);
    base[i] = 1;
    std::vector<long> result(n, 0);
    bool result_set = false;
    long e = p;
    while (e) {
      if (e & 1) {
        if (!result_set) {
          result = base;
          result_set = true;
        } else
          result = mul_mod(result, base);
      }
      e >>= 1;
      if (e) base = mul_mod(base, base);
    }
    for (long k = 0; k < n; ++k) F.at(k, i) = result[k];
  }
  // radical = kernel of F^m, p^m >= n
  long m = 1;
  {
    BigInt pm = p;
    while (pm < n) {
      pm *= p;
      ++m;
    }
  }
  FpMat Fm = F;
  for (long i = 1; i < m; ++i) Fm = Fm.mul(F);
  FpMat rad = fp_kernel(Fm);
  // I_p lattice columns: p*e_i and radical lifts
  ZMat gens(n, n + rad.cols);
  for (long i = 0; i < n; ++i) gens.at(i, i) = p;
  for (long j = 0; j < rad.cols; ++j)
    for (long i = 0; i < n; ++i) gens.at(i, n + j) = rad.at(i, j);
  ZMat U = hnf(gens);
  if (U.cols != n) throw InvariantViolation("round2: radical lattice degenerate");
  QMat Uq = QMat::from(U);
  // action of x on I_p / p I_p: for kernel we need x * u_k in p * I_p
  // columns u_k of U; matrix entries linear in x-coords.
  // Build (n*n) x n matrix over F_p: row (k, r) gives coefficient of c_i.
  FpMat big(p, n * n, n);
  for (long k = 0; k < n; ++k) {
    std::vector<BigInt> uk(n);
    for (long i = 0; i < n; ++i) uk[i] = U.at(i, k);
    for (long i = 0; i < n; ++i) {
      // b_i * u_k in basis coords
      std::vector<BigInt> prod(n, 0);
      for (long j = 0; j < n; ++j) {
        if (uk[j] == 0) continue;
        for (long r = 0; r < n; ++r) prod[r] += table[i].at(r, j) * uk[j];
      }
      // coords of prod in U-basis: solve U y = prod (exact integral)
      std::vector<BigRat> rhs(n);
      for (long r = 0; r < n; ++r) rhs[r] = BigRat(prod[r]);
      auto y = solve(Uq, rhs);
      if (!y) throw InvariantViolation("round2: I_p solve failed");
      for (long r = 0; r < n; ++r) {
        if (rat_den((*y)[r]) != 1) throw InvariantViolation("round2: non-integral action");
        big.at(k * n + r, i) = (long)mod_pos(rat_num((*y)[r]), p);
      }
    }
  }
  FpMat K = fp_kernel(big);
  if (K.cols == 0) return false;
  // Enlarge: O' = O + (1/p) * (kernel lifts)
  ZMat stacked(n + K.cols, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) stacked.at(i, j) = O.rows.at(i, j) * p;
  for (long c = 0; c < K.cols; ++c)
    for (long j = 0; j < n; ++j) {
      BigInt acc = 0;
      for (long i = 0; i < n; ++i)
        if (K.at(i, c)) acc += BigInt(K.at(i, c)) * O.rows.at(i, j);
      stacked.at(n + c, j) = acc;
    }
  // rows now over denominator den * p: HNF of the row span
  ZMat H = hnf(stacked.transpose()).transpose();
  if (H.rows != n) throw InvariantViolation("round2: enlarged order wrong rank");
  Order grown;
  grown.rows = H;
  grown.den = O.den * p;
  // normalize content
  BigInt g = grown.den;
  for (long i = 0; i < n && g > 1; ++i)
    for (long j = 0; j < n && g > 1; ++j) g = gcd(g, grown.rows.at(i, j));
  if (g > 1) {
    for (auto& v : grown.rows.a) v /= g;
    grown.den /= g;
  }
  O = grown;
  return true;
}

Order maximal_order(const QPoly& f) {
  long n = f.deg();
  Order O;
  O.rows = ZMat::identity(n);
  O.den = 1;
  auto traces = power_traces(f, 2 * n - 2);
  BigRat d0 = order_disc(O, f, traces);
  if (rat_den(d0) != 1) throw InvariantViolation("disc not integral");
  BigInt d = rat_num(d0);
  for (const auto& [p, e] : factorize(d)) {
    if (e < 2) continue;
    if (p > 1000000) throw CapacityError("maximal order: discriminant prime too large");
    long pl = (long)p;
    while (round2_step(O, f, pl)) {
    }
  }
  return O;
}

Order maximal_order_from(const QPoly& f, const Order& start) {
  long n = f.deg();
  Order O = start;
  auto traces = power_traces(f, 2 * n - 2);
  BigRat d0 = order_disc(O, f, traces);
  if (rat_den(d0) != 1) throw InvariantViolation("disc not integral");
  BigInt d = rat_num(d0);
  for (const auto& [p, e] : factorize(d)) {
    if (e < 2) continue;
    if (p > 1000000) throw CapacityError("maximal order: discriminant prime too large");
    long pl = (long)p;
    while (round2_step(O, f, pl)) {
    }
  }
  return O;
}

}  // namespace

std::shared_ptr<const NumberField> finish_build(NumberField&& draft) {
  NumberField K = std::move(draft);
  long n = K.n;
  // theta -> basis conversion
  QMat M(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M.at(j, i) = BigRat(K.basis_num.at(i, j), K.basis_den);
  auto inv = inverse(M);
  if (!inv) throw InvariantViolation("integral basis not invertible");
  K.theta_to_basis = *inv;
  // mult table
  Order O{K.basis_num, K.basis_den};
  K.mult = order_mult_table(O, K.min_poly);
  // signature
  K.r1 = sturm_count_real_roots(K.min_poly);
  K.r2 = (n - K.r1) / 2;
  // discriminant
  auto traces = power_traces(K.min_poly, std::max<long>(2 * n - 2, 0));
  BigRat d = order_disc(O, K.min_poly, traces);
  if (rat_den(d) != 1) throw InvariantViolation("field disc not integral");
  K.disc = rat_num(d);
  return std::make_shared<const NumberField>(std::move(K));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  NumberField K;
  K.n = 1;
  K.min_poly = QPoly({BigRat(0), BigRat(1)});  // x
  K.basis_num = ZMat::identity(1);
  K.basis_den = 1;
  K.label = "Q";
  return finish_build(std::move(K));
}

std::shared_ptr<const NumberField> NumberField::build(const QPoly& poly, long degree_cap) {
  if (poly.deg() < 1) throw InputError("build_field: constant polynomial");
  if (!poly.is_monic()) throw InputError("build_field: polynomial must be monic");
  std::vector<BigInt> f;
  for (const BigRat& c : poly.c) {
    if (rat_den(c) != 1) throw InputError("build_field: integer coefficients required");
    f.push_back(rat_num(c));
  }
  if (poly.deg() > degree_cap) throw CapacityError("build_field: degree exceeds cap");
  if (poly.deg() == 1) return rationals();
  if (!zpoly_irreducible(f)) throw InputError("build_field: polynomial is reducible");
  NumberField K;
  K.n = poly.deg();
  K.min_poly = poly;
  Order O = maximal_order(poly);
  K.basis_num = O.rows;
  K.basis_den = O.den;
  K.label = "poly(" + poly.str() + ")";
  K.theta_combo = {1};
  auto out = finish_build(std::move(K));
  // the generator = theta
  NumberField& Km = const_cast<NumberField&>(*out);
  QPoly theta = QPoly({BigRat(0), BigRat(1)});
  Km.gens.push_back({gen_poly(poly, "theta"), out->from_theta_poly(theta)});
  return out;
}

std::shared_ptr<const NumberField> NumberField::compositum(const std::vector<GenSpec>& parts,
                                                           long degree_cap) {
  if (parts.empty()) return rationals();
  // current field state over theta-powers
  QPoly F = parts[0].minpoly;
  {
    std::vector<BigInt> f0;
    for (const BigRat& c : F.c) {
      if (rat_den(c) != 1) throw InputError("compositum: integer coefficients required");
      f0.push_back(rat_num(c));
    }
    if (!zpoly_irreducible(f0)) throw InputError("compositum: component polynomial reducible");
  }
  long n = F.deg();
  if (n > degree_cap) throw CapacityError("compositum: degree exceeds cap");
  std::vector<std::vector<BigRat>> gen_theta;  // each gen as theta-poly coeffs
  gen_theta.push_back({BigRat(0), BigRat(1)});  // theta itself
  std::vector<long> combo{1};
  Order O;
  O.rows = ZMat::identity(n);
  O.den = 1;
  O = maximal_order_from(F, O);

  for (size_t gi = 1; gi < parts.size(); ++gi) {
    const QPoly& g = parts[gi].minpoly;
    {
      std::vector<BigInt> gg;
      for (const BigRat& c : g.c) {
        if (rat_den(c) != 1) throw InputError("compositum: integer coefficients required");
        gg.push_back(rat_num(c));
      }
      if (!zpoly_irreducible(gg)) throw InputError("compositum: component polynomial reducible");
    }
    long m = g.deg();
    long nm = n * m;
    if (nm > degree_cap) throw CapacityError("compositum: degree exceeds cap");
    // tensor algebra basis x^i y^j, index i*m + j
    auto tensor_mul = [&](const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
      // multiply as polynomials in x (coefficients: polys in y)
      std::vector<std::vector<BigRat>> prod(2 * n - 1, std::vector<BigRat>(2 * m - 1, BigRat(0)));
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) {
          BigRat va = a[i * m + j];
          if (va == 0) continue;
          for (long k = 0; k < n; ++k)
            for (long l = 0; l < m; ++l) {
              BigRat vb = b[k * m + l];
              if (vb != 0) prod[i + k][j + l] += va * vb;
            }
        }
      // reduce y-degree by g, then x-degree by F
      for (auto& row : prod) {
        for (long d = 2 * m - 2; d >= m; --d) {
          BigRat c = row[d];
          if (c == 0) continue;
          row[d] = 0;
          for (long l = 0; l < m; ++l) row[d - m + l] -= c * g.coeff(l);
        }
      }
      for (long d = 2 * n - 2; d >= n; --d) {
        bool nz = false;
        for (long l = 0; l < m; ++l)
          if (prod[d][l] != 0) nz = true;
        if (!nz) continue;
        auto coef = prod[d];
        for (long l = 0; l < m; ++l) prod[d][l] = 0;
        for (long k = 0; k < n; ++k) {
          BigRat fc = F.coeff(k);
          if (fc == 0) continue;
          for (long l = 0; l < m; ++l) prod[d - n + k][l] -= coef[l] * fc;
        }
      }
      std::vector<BigRat> out(nm, BigRat(0));
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) out[i * m + j] = prod[i][j];
      return out;
    };

    QPoly new_F;
    std::vector<std::vector<BigRat>> tpow;  // powers of t in tensor coords
    long good_k = 0;
    for (long kc : {1, -1, 2, -2, 3, -3, 4, -4, 5, -5}) {
      // t = x + kc*y
      std::vector<BigRat> t(nm, BigRat(0));
      if (n > 1) t[1 * m + 0] = 1;
      t[0 * m + 1] += BigRat(kc);
      if (n == 1) t[0 * m + 1] = BigRat(kc);  // degenerate: x rational
      tpow.clear();
      std::vector<BigRat> cur(nm, BigRat(0));
      cur[0] = 1;
      tpow.push_back(cur);
      for (long d = 1; d <= nm; ++d) {
        cur = tensor_mul(cur, t);
        tpow.push_back(cur);
      }
      // find first linear dependency
      QMat Mat(nm, nm + 1);
      for (long c = 0; c <= nm; ++c)
        for (long r = 0; r < nm; ++r) Mat.at(r, c) = tpow[c][r];
      // solve for minpoly: want monic degree nm: check rank of first nm cols
      QMat Sq(nm, nm);
      for (long c = 0; c < nm; ++c)
        for (long r = 0; r < nm; ++r) Sq.at(r, c) = tpow[c][r];
      auto invSq = inverse(Sq);
      if (!invSq) continue;  // t not primitive
      std::vector<BigRat> rhs(nm);
      for (long r = 0; r < nm; ++r) rhs[r] = tpow[nm][r];
      auto coeffs = invSq->apply(rhs);
      std::vector<BigRat> mp(nm + 1);
      for (long i = 0; i < nm; ++i) mp[i] = -coeffs[i];
      mp[nm] = 1;
      new_F = QPoly(mp);
      good_k = kc;
      break;
    }
    if (good_k == 0) throw InputError("compositum: components not linearly disjoint");
    {
      std::vector<BigInt> mi;
      for (const BigRat& c : new_F.c) {
        if (rat_den(c) != 1) throw InvariantViolation("compositum: non-integral minpoly");
        mi.push_back(rat_num(c));
      }
      if (!zpoly_irreducible(mi))
        throw InputError("compositum: tensor algebra is not a field");
    }
    // change of basis: tensor coords <-> t-power coords
    QMat P(nm, nm);
    for (long c = 0; c < nm; ++c)
      for (long r = 0; r < nm; ++r) P.at(r, c) = tpow[c][r];
    auto Pinv = inverse(P);
    if (!Pinv) throw InvariantViolation("compositum: power basis singular");
    auto to_tpoly = [&](const std::vector<BigRat>& tensor) { return Pinv->apply(tensor); };
    // old gens: theta-polys in x -> tensor -> t-polys
    std::vector<std::vector<BigRat>> new_gen_theta;
    for (const auto& gt : gen_theta) {
      std::vector<BigRat> tensor(nm, BigRat(0));
      for (size_t i = 0; i < gt.size(); ++i) tensor[(long)i * m + 0] = gt[i];
      new_gen_theta.push_back(to_tpoly(tensor));
    }
    {
      std::vector<BigRat> ytensor(nm, BigRat(0));
      ytensor[0 * m + 1] = 1;
      new_gen_theta.push_back(to_tpoly(ytensor));
    }
    // starting order: old maximal basis tensored with y^j
    BigInt denall = 1;
    std::vector<std::vector<BigRat>> trows;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < m; ++j) {
        std::vector<BigRat> tensor(nm, BigRat(0));
        for (long k = 0; k < n; ++k) tensor[k * m + j] = BigRat(O.rows.at(i, k), O.den);
        auto tc = to_tpoly(tensor);
        for (auto& v : tc) denall = lcm(denall, rat_den(v));
        trows.push_back(tc);
      }
    Order newO;
    newO.den = denall;
    newO.rows = ZMat(nm, nm);
    for (long r = 0; r < nm; ++r)
      for (long c = 0; c < nm; ++c)
        newO.rows.at(r, c) = rat_num(trows[r][c]) * (denall / rat_den(trows[r][c]));
    // maximize
    F = new_F;
    n = nm;
    O = maximal_order_from(F, newO);
    gen_theta = new_gen_theta;
    combo.push_back(good_k);
  }

  NumberField K;
  K.n = n;
  K.min_poly = F;
  K.basis_num = O.rows;
  K.basis_den = O.den;
  K.theta_combo = combo;
  {
    std::ostringstream lbl;
    lbl << "compositum(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) lbl << ",";
      lbl << parts[i].label;
    }
    lbl << ")";
    K.label = lbl.str();
  }
  auto out = finish_build(std::move(K));
  NumberField& Km = const_cast<NumberField&>(*out);
  for (size_t i = 0; i < parts.size(); ++i) {
    QPoly gp(gen_theta[i]);
    Km.gens.push_back({parts[i], out->from_theta_poly(gp)});
  }
  return out;
}

// ---- element operations ----

ElemCoords NumberField::one() const {
  // first basis vector need not be 1; convert explicitly
  QPoly p({BigRat(1)});
  return from_theta_poly(p);
}

ElemCoords NumberField::from_int(const BigInt& v) const { return from_rat(BigRat(v)); }

ElemCoords NumberField::from_rat(const BigRat& v) const {
  QPoly p({v});
  return from_theta_poly(p);
}

ElemCoords NumberField::add(const ElemCoords& a, const ElemCoords& b) const {
  ElemCoords r(n);
  for (long i = 0; i < n; ++i) r[i] = a[i] + b[i];
  return r;
}
ElemCoords NumberField::sub(const ElemCoords& a, const ElemCoords& b) const {
  ElemCoords r(n);
  for (long i = 0; i < n; ++i) r[i] = a[i] - b[i];
  return r;
}
ElemCoords NumberField::neg(const ElemCoords& a) const {
  ElemCoords r(n);
  for (long i = 0; i < n; ++i) r[i] = -a[i];
  return r;
}

ElemCoords NumberField::mul(const ElemCoords& a, const ElemCoords& b) const {
  ElemCoords r(n, BigRat(0));
  for (long i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      BigRat c = a[i] * b[j];
      for (long k = 0; k < n; ++k) {
        const BigInt& t = mult[i].at(k, j);
        if (t != 0) r[k] += c * BigRat(t);
      }
    }
  }
  return r;
}

ElemCoords NumberField::mul_rat(const ElemCoords& a, const BigRat& s) const {
  ElemCoords r = a;
  for (auto& v : r) v *= s;
  return r;
}

QMat NumberField::mult_matrix(const ElemCoords& a) const {
  QMat M(n, n);
  for (long j = 0; j < n; ++j) {
    ElemCoords ej(n, BigRat(0));
    ej[j] = 1;
    ElemCoords col = mul(a, ej);
    for (long i = 0; i < n; ++i) M.at(i, j) = col[i];
  }
  return M;
}

ElemCoords NumberField::inv(const ElemCoords& a) const {
  QMat M = mult_matrix(a);
  auto id = one();
  auto x = solve(M, id);
  if (!x) throw InputError("element not invertible");
  return *x;
}

ElemCoords NumberField::power(const ElemCoords& a, BigInt k) const {
  ElemCoords base = a;
  if (k < 0) {
    base = inv(a);
    k = -k;
  }
  ElemCoords r = one();
  while (k > 0) {
    if ((k & 1) != 0) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

bool NumberField::is_zero(const ElemCoords& a) const {
  for (const auto& v : a)
    if (v != 0) return false;
  return true;
}
bool NumberField::eq(const ElemCoords& a, const ElemCoords& b) const {
  for (long i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

BigRat NumberField::norm(const ElemCoords& a) const { return det(mult_matrix(a)); }

BigRat NumberField::trace(const ElemCoords& a) const {
  QMat M = mult_matrix(a);
  BigRat t(0);
  for (long i = 0; i < n; ++i) t += M.at(i, i);
  return t;
}

bool NumberField::is_integral(const ElemCoords& a) const {
  for (const auto& v : a)
    if (rat_den(v) != 1) return false;
  return true;
}

QPoly NumberField::elem_minpoly(const ElemCoords& a) const {
  // first linear dependency among powers of a
  std::vector<ElemCoords> pows;
  ElemCoords cur = one();
  pows.push_back(cur);
  for (long d = 1; d <= n; ++d) {
    cur = mul(cur, a);
    pows.push_back(cur);
    QMat M(n, d);
    for (long c = 0; c < d; ++c)
      for (long r = 0; r < n; ++r) M.at(r, c) = pows[c][r];
    std::vector<BigRat> rhs(n);
    for (long r = 0; r < n; ++r) rhs[r] = pows[d][r];
    auto sol = solve(M, rhs);
    if (sol) {
      std::vector<BigRat> mp(d + 1);
      for (long i = 0; i < d; ++i) mp[i] = -(*sol)[i];
      mp[d] = 1;
      return QPoly(mp);
    }
  }
  throw InvariantViolation("elem_minpoly: no dependency found");
}

std::pair<std::vector<BigInt>, BigInt> NumberField::to_theta_poly(const ElemCoords& a) const {
  std::vector<BigRat> tc(n, BigRat(0));
  for (long i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < n; ++j)
      tc[j] += a[i] * BigRat(basis_num.at(i, j), basis_den);
  }
  BigInt den = 1;
  for (const auto& v : tc) den = lcm(den, rat_den(v));
  std::vector<BigInt> num(n);
  for (long j = 0; j < n; ++j) num[j] = rat_num(tc[j]) * (den / rat_den(tc[j]));
  return {num, den};
}

ElemCoords NumberField::from_theta_poly(const QPoly& p) const {
  std::vector<BigRat> tc(n, BigRat(0));
  QPoly q = p;
  if (q.deg() >= n) {
    // reduce mod min_poly
    QPoly quo, rem;
    qpoly_divrem(q, min_poly, quo, rem);
    q = rem;
  }
  for (long j = 0; j <= q.deg(); ++j) tc[j] = q.c[j];
  return theta_to_basis.apply(tc);
}

std::string NumberField::elem_str(const ElemCoords& a) const {
  std::string s = "[";
  for (long i = 0; i < n; ++i) {
    if (i) s += ",";
    s += to_string(a[i]);
  }
  return s + "]";
}

// ---- ideals and valuations ----

IdealLat NumberField::ideal_of_element(const ElemCoords& x) const {
  if (!is_integral(x)) throw InputError("ideal_of_element: integral element required");
  ZMat gens(n, n);
  for (long j = 0; j < n; ++j) {
    ElemCoords ej(n, BigRat(0));
    ej[j] = 1;
    ElemCoords col = mul(x, ej);
    for (long i = 0; i < n; ++i) gens.at(i, j) = rat_num(col[i]);
  }
  ZMat H = hnf(gens);
  if (H.cols != n) throw InputError("ideal_of_element: zero element");
  IdealLat I;
  I.basis = H;
  BigInt d = det(H);
  I.norm = d < 0 ? BigInt(-d) : d;
  return I;
}

IdealLat NumberField::ideal_mul(const IdealLat& a, const IdealLat& b) const {
  ZMat gens(n, n * n);
  long c = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      ElemCoords x(n), y(n);
      for (long r = 0; r < n; ++r) {
        x[r] = BigRat(a.basis.at(r, i));
        y[r] = BigRat(b.basis.at(r, j));
      }
      ElemCoords prod = mul(x, y);
      for (long r = 0; r < n; ++r) gens.at(r, c) = rat_num(prod[r]);
      ++c;
    }
  ZMat H = hnf(gens);
  IdealLat I;
  I.basis = H;
  BigInt d = det(H);
  I.norm = d < 0 ? BigInt(-d) : d;
  return I;
}

IdealLat NumberField::ideal_from_prime(const PrimeIdeal& P) const {
  IdealLat I;
  I.basis = P.lattice;
  I.norm = P.norm;
  return I;
}

IdealLat NumberField::ideal_power(const IdealLat& a, long k) const {
  IdealLat r;
  r.basis = ZMat::identity(n);
  r.norm = 1;
  IdealLat base = a;
  long e = k;
  bool started = false;
  while (e > 0) {
    if (e & 1) {
      r = started ? ideal_mul(r, base) : base;
      started = true;
    }
    e >>= 1;
    if (e) base = ideal_mul(base, base);
  }
  if (!started) {
    r.basis = ZMat::identity(n);
    r.norm = 1;
  }
  return r;
}

bool NumberField::ideal_contains(const IdealLat& a, const ElemCoords& x) const {
  std::vector<BigInt> xi(n);
  for (long i = 0; i < n; ++i) {
    if (rat_den(x[i]) != 1) return false;
    xi[i] = rat_num(x[i]);
  }
  return solve_integer(a.basis, xi).has_value();
}

IdealLat NumberField::ideal_scale(const IdealLat& a, const BigRat& s) const {
  if (rat_den(s) != 1) throw InputError("ideal_scale: integer scale only");
  IdealLat r = a;
  for (auto& v : r.basis.a) v *= rat_num(s);
  BigInt nn = rat_num(s);
  if (nn < 0) nn = -nn;
  r.norm = a.norm * int_pow(nn, (unsigned long)n);
  return r;
}

long NumberField::val_at(const PrimeIdeal& P, const ElemCoords& x) const {
  if (is_zero(x)) throw InputError("val_at: zero element");
  // split off denominator
  BigInt den = 1;
  for (const auto& v : x) den = lcm(den, rat_den(v));
  if (den != 1) {
    ElemCoords y = mul_rat(x, BigRat(den));
    long vd = 0;
    BigInt d = den;
    while (d % P.p == 0) {
      d /= P.p;
      ++vd;
    }
    return val_at(P, y) - (long)P.e * vd;
  }
  IdealLat Pk = ideal_from_prime(P);
  long v = 0;
  IdealLat cur = Pk;
  while (ideal_contains(cur, x)) {
    ++v;
    cur = ideal_mul(cur, Pk);
    if (v > 4096) throw InvariantViolation("val_at runaway");
  }
  return v;
}

Fq NumberField::residue_of(const PrimeIdeal& P, const ElemCoords& x) const {
  // x must be p-integral
  long p = P.p;
  std::vector<long> coords(n);
  for (long i = 0; i < n; ++i) {
    BigInt num = rat_num(x[i]);
    BigInt den = rat_den(x[i]);
    if (den % p == 0) throw InputError("residue_of: element not p-integral");
    coords[i] = (long)mod_pos(num * mod_inverse(den, p), p);
  }
  Fq out(P.resfield.f, 0);
  for (long r = 0; r < P.resfield.f; ++r) {
    __int128 acc = 0;
    for (long i = 0; i < n; ++i) acc += (__int128)P.to_res.at(r, i) * coords[i];
    out[r] = (long)(acc % p);
  }
  return out;
}

// ---- prime decomposition ----

std::vector<PrimeIdeal> NumberField::decompose(long p) const {
  auto it = memo_.decomp.find(p);
  if (it != memo_.decomp.end()) return it->second;

  std::vector<PrimeIdeal> out;
  if (n == 1) {
    PrimeIdeal P;
    P.p = p;
    P.e = 1;
    P.f = 1;
    P.lattice = ZMat(1, 1);
    P.lattice.at(0, 0) = p;
    P.norm = p;
    P.second_gen = {BigRat(p)};
    P.resfield = FqCtx::prime_field(p);
    P.to_res = FpMat(p, 1, 1);
    P.to_res.at(0, 0) = 1;
    P.index = 0;
    memo_.decomp[p] = {P};
    return {P};
  }

  // A = O/pO with multiplication from the integer table.
  auto mul_mod = [&](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(n, 0);
    for (long i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (long j = 0; j < n; ++j) {
        if (!b[j]) continue;
        long prod = (long)((__int128)a[i] * b[j] % p);
        if (!prod) continue;
        for (long k = 0; k < n; ++k) {
          long c = (long)mod_pos(mult[i].at(k, j), p);
          if (c) r[k] = (long)((r[k] + (__int128)prod * c) % p);
        }
      }
    }
    return r;
  };
  std::vector<long> one_mod(n);
  {
    ElemCoords o = one();
    for (long i = 0; i < n; ++i) one_mod[i] = (long)mod_pos(rat_num(o[i]), p);
  }
  auto pow_mod_alg = [&](std::vector<long> base, BigInt e) {
    std::vector<long> r = one_mod;
    while (e > 0) {
      if ((e & 1) != 0) r = mul_mod(r, base);
      base = mul_mod(base, base);
      e >>= 1;
    }
    return r;
  };

  // radical via Frobenius kernel
  FpMat F(p, n, n);
  for (long i = 0; i < n; ++i) {
    std::vector<long> b(n, 0);
    b[i] = 1;
    auto bp = pow_mod_alg(b, p);
    for (long k = 0; k < n; ++k) F.at(k, i) = bp[k];
  }
  long mexp = 1;
  {
    BigInt pm = p;
    while (pm < n) {
      pm *= p;
      ++mexp;
    }
  }
  FpMat Fm = F;
  for (long i = 1; i < mexp; ++i) Fm = Fm.mul(F);
  FpMat rad = fp_kernel(Fm);

  // components of A/rad, represented by idempotent-like structures inside A:
  // we track subspaces of A (as column spaces) that are ideals of A/rad with
  // identity; products are reduced mod rad.
  // projection along rad onto a complement:
  long r = rad.cols;
  long nb = n - r;
  // complement basis: choose standard vectors completing rad via rref
  FpMat big(p, n, r + n);
  for (long j = 0; j < r; ++j)
    for (long i = 0; i < n; ++i) big.at(i, j) = rad.at(i, j);
  for (long j = 0; j < n; ++j) big.at(j, r + j) = 1;
  // column-pivot selection via elimination
  std::vector<long> comp_idx;
  {
    FpMat w = big;
    long rr = 0;
    std::vector<long> pivot_cols;
    for (long c = 0; c < w.cols && rr < w.rows; ++c) {
      long piv = -1;
      for (long i = rr; i < w.rows; ++i)
        if (w.at(i, c)) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      for (long j = 0; j < w.cols; ++j) std::swap(w.a[rr * w.cols + j], w.a[piv * w.cols + j]);
      long inv = 1;
      {
        long t = 0, nt = 1, rr2 = p, nr = w.at(rr, c);
        while (nr != 0) {
          long q = rr2 / nr;
          std::swap(t -= q * nt, nt);
          std::swap(rr2 -= q * nr, nr);
        }
        inv = t < 0 ? t + p : t;
      }
      for (long j = 0; j < w.cols; ++j) w.at(rr, j) = (long)((__int128)w.at(rr, j) * inv % p);
      for (long i = 0; i < w.rows; ++i) {
        if (i == rr || !w.at(i, c)) continue;
        long fch = w.at(i, c);
        for (long j = 0; j < w.cols; ++j) {
          long sub = (long)((__int128)fch * w.at(rr, j) % p);
          w.at(i, j) = (w.at(i, j) - sub % p + p) % p;
        }
      }
      pivot_cols.push_back(c);
      ++rr;
    }
    for (long c : pivot_cols)
      if (c >= r) comp_idx.push_back(c - r);
  }
  if ((long)comp_idx.size() != nb) throw InvariantViolation("decompose: complement failed");

  // matrix M = [rad | complement] and inverse for projection
  FpMat Mfull(p, n, n);
  for (long j = 0; j < r; ++j)
    for (long i = 0; i < n; ++i) Mfull.at(i, j) = rad.at(i, j);
  for (long j = 0; j < nb; ++j) Mfull.at(comp_idx[j], r + j) = 1;
  // invert Mfull mod p
  FpMat Minv(p, n, n);
  {
    FpMat w(p, n, 2 * n);
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) w.at(i, j) = Mfull.at(i, j);
      w.at(i, n + i) = 1;
    }
    for (long c = 0; c < n; ++c) {
      long piv = -1;
      for (long i = c; i < n; ++i)
        if (w.at(i, c)) {
          piv = i;
          break;
        }
      if (piv < 0) throw InvariantViolation("decompose: M not invertible");
      for (long j = 0; j < 2 * n; ++j) std::swap(w.a[c * w.cols + j], w.a[piv * w.cols + j]);
      long t = 0, nt = 1, rr2 = p, nr = w.at(c, c);
      while (nr != 0) {
        long q = rr2 / nr;
        std::swap(t -= q * nt, nt);
        std::swap(rr2 -= q * nr, nr);
      }
      long inv = t < 0 ? t + p : t;
      for (long j = 0; j < 2 * n; ++j) w.at(c, j) = (long)((__int128)w.at(c, j) * inv % p);
      for (long i = 0; i < n; ++i) {
        if (i == c || !w.at(i, c)) continue;
        long fch = w.at(i, c);
        for (long j = 0; j < 2 * n; ++j) {
          long sub = (long)((__int128)fch * w.at(c, j) % p);
          w.at(i, j) = (w.at(i, j) - sub % p + p) % p;
        }
      }
    }
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) Minv.at(i, j) = w.at(i, n + j);
  }
  // projection of x in A onto B-coordinates (length nb)
  auto projB = [&](const std::vector<long>& x) {
    std::vector<long> y(nb, 0);
    for (long i = 0; i < nb; ++i) {
      __int128 acc = 0;
      for (long j = 0; j < n; ++j) acc += (__int128)Minv.at(r + i, j) * x[j];
      y[i] = (long)(acc % p);
    }
    return y;
  };
  auto liftB = [&](const std::vector<long>& y) {
    std::vector<long> x(n, 0);
    for (long i = 0; i < nb; ++i) x[comp_idx[i]] = y[i];
    return x;
  };
  auto mulB = [&](const std::vector<long>& a, const std::vector<long>& b) {
    return projB(mul_mod(liftB(a), liftB(b)));
  };
  std::vector<long> oneB = projB(one_mod);

  struct Comp {
    std::vector<std::vector<long>> basis;  // vectors in B coords
    std::vector<long> id;                  // identity of the component
  };
  std::vector<Comp> stack;
  std::vector<Comp> fields;
  {
    Comp whole;
    for (long i = 0; i < nb; ++i) {
      std::vector<long> e(nb, 0);
      e[i] = 1;
      whole.basis.push_back(e);
    }
    whole.id = oneB;
    stack.push_back(whole);
  }
  struct FieldComp {
    Comp comp;
    std::vector<long> z;           // primitive element (B coords)
    std::vector<long> minpoly;     // over F_p, monic
  };
  std::vector<FieldComp> field_comps;

  std::function<void(const Comp&)> split = [&](const Comp& C) {
    long dc = (long)C.basis.size();
    // try candidate elements of C
    Rng rng(0xc0ffee ^ (std::uint64_t)p ^ ((std::uint64_t)dc << 32));
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<long> z(nb, 0);
      if (attempt < dc) {
        z = C.basis[attempt];
      } else {
        for (auto& bvec : C.basis) {
          long coef = (long)rng.below((std::uint64_t)p);
          for (long i = 0; i < nb; ++i)
            z[i] = (long)((z[i] + (__int128)coef * bvec[i]) % p);
        }
      }
      // minpoly of z inside C (with identity C.id)
      std::vector<std::vector<long>> pows;
      pows.push_back(C.id);
      std::vector<long> cur = C.id;
      long deg = -1;
      std::vector<long> mp;
      for (long d = 1; d <= dc + 1; ++d) {
        cur = mulB(cur, z);
        pows.push_back(cur);
        // solve: is cur in span of previous powers?
        FpMat M2(p, nb, d);
        for (long c = 0; c < d; ++c)
          for (long rr = 0; rr < nb; ++rr) M2.at(rr, c) = pows[c][rr];
        // solve M2 * y = cur over F_p via appended column rank test
        FpMat M3(p, nb, d + 1);
        for (long c = 0; c < d; ++c)
          for (long rr = 0; rr < nb; ++rr) M3.at(rr, c) = pows[c][rr];
        for (long rr = 0; rr < nb; ++rr) M3.at(rr, d) = cur[rr];
        if (fp_rank(M2) == fp_rank(M3)) {
          // dependency: find it via kernel of M3
          FpMat kk = fp_kernel(M3);
          // pick kernel vector with last coord nonzero
          for (long c = 0; c < kk.cols; ++c) {
            if (kk.at(d, c)) {
              long invl = 1;
              long t = 0, nt = 1, rr2 = p, nr = kk.at(d, c);
              while (nr != 0) {
                long q = rr2 / nr;
                std::swap(t -= q * nt, nt);
                std::swap(rr2 -= q * nr, nr);
              }
              invl = t < 0 ? t + p : t;
              mp.assign(d + 1, 0);
              for (long i = 0; i <= d; ++i)
                mp[i] = (long)((__int128)(p - kk.at(i, c) % p) % p * invl % p);
              mp[d] = 1;
              // normalize: the relation is sum kk_i * z^i = 0 -> monic form
              // mp(x) = x^d + sum_{i<d} (kk_i * inv(kk_d)) x^i... sign fix:
              for (long i = 0; i < d; ++i)
                mp[i] = (long)(((__int128)kk.at(i, c) * invl) % p);
              deg = d;
              break;
            }
          }
          if (deg > 0) break;
        }
      }
      if (deg <= 0) continue;
      // factor minpoly over F_p
      FqCtx fp = FqCtx::prime_field(p);
      FqPoly mpoly;
      for (long v : mp) mpoly.push_back({v});
      fqp_trim(mpoly);
      auto facs = fqp_factor(fp, mpoly);
      if (facs.size() == 1 && facs[0].second == 1) {
        if (deg == dc) {
          // field component
          FieldComp fc;
          fc.comp = C;
          fc.z = z;
          fc.minpoly = mp;
          field_comps.push_back(fc);
          return;
        }
        continue;  // z not primitive, try another
      }
      // split with idempotents
      // u_i = (mp / m_i); e_i = u_i(z) * (u_i(z)^{-1} in C mod m_i-part)
      for (auto& [fac, multfac] : facs) {
        (void)multfac;
        // m_i as long vector
        std::vector<long> mi;
        for (const Fq& cfq : fac) mi.push_back(cfq[0]);
        // u = mp / m_i over F_p
        FqPoly u, rr;
        fqp_divrem(fp, mpoly, fac, u, rr);
        // w = u * (u^{-1} mod m_i): compute inverse via extended gcd in F_p[x]
        // ext gcd of u mod fac
        FqPoly umod = fqp_mod(fp, u, fac);
        // inverse of umod mod fac by brute extended Euclid
        FqPoly g0 = fac, g1 = umod, s0{}, s1{fq_one(fp)};
        while (!fqp_is_zero(g1) && fqp_deg(g1) > 0) {
          FqPoly q2, r2;
          fqp_divrem(fp, g0, g1, q2, r2);
          FqPoly s2 = fqp_sub(fp, s0, fqp_mul(fp, q2, s1));
          g0 = g1;
          g1 = r2;
          s0 = s1;
          s1 = s2;
        }
        if (fqp_is_zero(g1)) continue;  // not coprime (cannot happen)
        Fq lead = g1[0];
        FqPoly uinv = fqp_scale(fp, s1, fq_inv(fp, lead));
        FqPoly w = fqp_mul(fp, u, uinv);
        // e = w(z) in the algebra
        std::vector<long> eB(nb, 0);
        {
          // Horner with component identity
          for (long i = fqp_deg(w); i >= 0; --i) {
            eB = mulB(eB, z);
            long cc = w[i][0];
            for (long k2 = 0; k2 < nb; ++k2)
              eB[k2] = (long)((eB[k2] + (__int128)cc * C.id[k2]) % p);
          }
        }
        // component = e * C
        Comp Ci;
        Ci.id = eB;
        FpMat span(p, nb, dc);
        for (long c = 0; c < dc; ++c) {
          auto v = mulB(eB, C.basis[c]);
          for (long rr2 = 0; rr2 < nb; ++rr2) span.at(rr2, c) = v[rr2];
        }
        // column space basis via transpose-kernel trick: use rref
        // simple: collect linearly independent columns
        std::vector<std::vector<long>> cbasis;
        FpMat acc(p, nb, 0);
        for (long c = 0; c < dc; ++c) {
          std::vector<long> v(nb);
          for (long rr2 = 0; rr2 < nb; ++rr2) v[rr2] = span.at(rr2, c);
          FpMat test(p, nb, (long)cbasis.size() + 1);
          for (size_t cc2 = 0; cc2 < cbasis.size(); ++cc2)
            for (long rr2 = 0; rr2 < nb; ++rr2) test.at(rr2, (long)cc2) = cbasis[cc2][rr2];
          for (long rr2 = 0; rr2 < nb; ++rr2) test.at(rr2, (long)cbasis.size()) = v[rr2];
          if (fp_rank(test) == (long)cbasis.size() + 1) cbasis.push_back(v);
        }
        (void)acc;
        Ci.basis = cbasis;
        if (!Ci.basis.empty()) split(Ci);
      }
      return;
    }
    throw InvariantViolation("decompose: could not split component");
  };
  while (!stack.empty()) {
    Comp C = stack.back();
    stack.pop_back();
    split(C);
  }

  // build PrimeIdeal records
  for (auto& fc : field_comps) {
    PrimeIdeal P;
    P.p = p;
    P.f = (long)fc.comp.basis.size();
    P.norm = int_pow(BigInt(p), (unsigned long)P.f);
    std::vector<long> h(fc.minpoly.begin(), fc.minpoly.end());
    P.resfield = P.f == 1 ? FqCtx::prime_field(p) : FqCtx::with_modulus(p, h);
    // to_res: A -> powers of z in the component: columns of Z = z^i (B coords)
    FpMat Z(p, nb, P.f);
    {
      std::vector<long> cur = fc.comp.id;
      for (long c = 0; c < P.f; ++c) {
        for (long rr2 = 0; rr2 < nb; ++rr2) Z.at(rr2, c) = cur[rr2];
        cur = mulB(cur, fc.z);
      }
    }
    // For x in A: component part = x * id (B coords), solve Z * w = that.
    // Precompute a left inverse of Z: (f x nb) matrix S with S*Z = I.
    // Solve via rref of [Z | I].
    FpMat S(p, P.f, nb);
    {
      FpMat w(p, nb, P.f + nb);
      for (long i = 0; i < nb; ++i) {
        for (long j = 0; j < P.f; ++j) w.at(i, j) = Z.at(i, j);
        w.at(i, P.f + i) = 1;
      }
      // eliminate
      long rr2 = 0;
      std::vector<long> piv_rows;
      for (long c = 0; c < P.f && rr2 < nb; ++c) {
        long piv = -1;
        for (long i = rr2; i < nb; ++i)
          if (w.at(i, c)) {
            piv = i;
            break;
          }
        if (piv < 0) throw InvariantViolation("decompose: Z rank deficient");
        for (long j = 0; j < w.cols; ++j) std::swap(w.a[rr2 * w.cols + j], w.a[piv * w.cols + j]);
        long t = 0, nt = 1, rm = p, nr = w.at(rr2, c);
        while (nr != 0) {
          long q = rm / nr;
          std::swap(t -= q * nt, nt);
          std::swap(rm -= q * nr, nr);
        }
        long invl = t < 0 ? t + p : t;
        for (long j = 0; j < w.cols; ++j) w.at(rr2, j) = (long)((__int128)w.at(rr2, j) * invl % p);
        for (long i = 0; i < nb; ++i) {
          if (i == rr2 || !w.at(i, c)) continue;
          long fch = w.at(i, c);
          for (long j = 0; j < w.cols; ++j) {
            long sub = (long)((__int128)fch * w.at(rr2, j) % p);
            w.at(i, j) = (w.at(i, j) - sub % p + p) % p;
          }
        }
        ++rr2;
      }
      for (long i = 0; i < P.f; ++i)
        for (long j = 0; j < nb; ++j) S.at(i, j) = w.at(i, P.f + j);
    }
    // full map: x (O coords mod p) -> B coords of x*id -> S
    // x*id in B: projB(mul_mod(x, lift(id)))
    FpMat to_res(p, P.f, n);
    for (long i = 0; i < n; ++i) {
      std::vector<long> x(n, 0);
      x[i] = 1;
      auto xb = projB(mul_mod(x, liftB(fc.comp.id)));
      for (long rr2 = 0; rr2 < P.f; ++rr2) {
        __int128 acc2 = 0;
        for (long j = 0; j < nb; ++j) acc2 += (__int128)S.at(rr2, j) * xb[j];
        to_res.at(rr2, i) = (long)(acc2 % p);
      }
    }
    P.to_res = to_res;
    // lattice: kernel of to_res (mod p) + pO
    FpMat ker = fp_kernel(to_res);
    ZMat gens(n, n + ker.cols);
    for (long i = 0; i < n; ++i) gens.at(i, i) = p;
    for (long c = 0; c < ker.cols; ++c)
      for (long i = 0; i < n; ++i) gens.at(i, n + c) = ker.at(i, c);
    P.lattice = hnf(gens);
    if (P.lattice.cols != n) throw InvariantViolation("decompose: prime lattice rank");
    out.push_back(P);
  }
  // ramification indices: v_P(p)
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& A, const PrimeIdeal& B) {
    if (A.f != B.f) return A.f < B.f;
    return A.lattice.a < B.lattice.a;
  });
  long sum_ef = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].index = (int)i;
    ElemCoords pc = from_int(p);
    out[i].e = val_at(out[i], pc);
    sum_ef += out[i].e * out[i].f;
  }
  if (sum_ef != n) throw InvariantViolation("decompose: sum e*f != n");
  // second generators
  for (auto& P : out) {
    bool found = false;
    for (long trial = 0; trial < 512 && !found; ++trial) {
      ElemCoords w(n, BigRat(0));
      // combinations of lattice columns with small coefficients
      Rng rng(0xfeedd00d ^ (std::uint64_t)P.p ^ ((std::uint64_t)P.index << 8) ^
              ((std::uint64_t)trial << 16));
      for (long j = 0; j < n; ++j) {
        long coef = (long)(rng.below(3));
        if (trial == 0) coef = (j == 0) ? 1 : 0;  // first lattice vector
        if (coef)
          for (long i = 0; i < n; ++i) w[i] += BigRat(coef * P.lattice.at(i, j));
      }
      if (is_zero(w)) continue;
      if (val_at(P, w) != 1) continue;
      bool clean = true;
      for (auto& Q : out) {
        if (Q.index == P.index) continue;
        if (val_at(Q, w) != 0) {
          clean = false;
          break;
        }
      }
      if (clean) {
        P.second_gen = w;
        found = true;
      }
    }
    if (!found) {
      // fall back to any element with v_P = 1 (two-element form (p, w) still
      // generates when combined with enough p-power: keep searching harder)
      throw InvariantViolation("decompose: no clean second generator found");
    }
  }
  memo_.decomp[p] = out;
  return out;
}

std::optional<QMat> NumberField::automorphism(const std::vector<ElemCoords>& gen_images) const {
  if (gen_images.size() != gens.size()) throw InputError("automorphism: wrong image count");
  // theta' = sum combo_i * image_i
  ElemCoords theta_img = zero();
  for (size_t i = 0; i < gens.size(); ++i)
    theta_img = add(theta_img, mul_rat(gen_images[i], BigRat(theta_combo[i])));
  // check min_poly(theta') = 0
  {
    ElemCoords acc = zero();
    for (long i = min_poly.deg(); i >= 0; --i) {
      acc = mul(acc, theta_img);
      acc = add(acc, from_rat(min_poly.c[i]));
    }
    if (!is_zero(acc)) return std::nullopt;
  }
  // sigma(b_i) = (1/den) sum_j num(i,j) theta'^j
  std::vector<ElemCoords> tpows(n);
  ElemCoords cur = one();
  for (long j = 0; j < n; ++j) {
    tpows[j] = cur;
    cur = mul(cur, theta_img);
  }
  QMat A(n, n);
  for (long i = 0; i < n; ++i) {
    ElemCoords img = zero();
    for (long j = 0; j < n; ++j)
      img = add(img, mul_rat(tpows[j], BigRat(basis_num.at(i, j), basis_den)));
    for (long k = 0; k < n; ++k) A.at(k, i) = img[k];
  }
  return A;
}

ElemCoords NumberField::apply_matrix(const QMat& m, const ElemCoords& x) const {
  return m.apply(x);
}

// ---- embeddings ----

namespace {

std::vector<CplxInterval> gen_conjugates(const GenSpec& g, const BigRat& eps) {
  std::vector<CplxInterval> out;
  auto zero_iv = RatInterval::point(BigRat(0));
  switch (g.kind) {
    case GenSpec::Kind::Sqrt: {
      BigInt d = g.param;
      if (d > 0) {
        RatInterval r = iv_sqrt(RatInterval::point(BigRat(d)), eps);
        out.push_back({r, zero_iv});
        out.push_back({-r, zero_iv});
      } else {
        RatInterval r = iv_sqrt(RatInterval::point(BigRat(-d)), eps);
        out.push_back({zero_iv, r});
        out.push_back({zero_iv, -r});
      }
      return out;
    }
    case GenSpec::Kind::Cbrt: {
      BigInt d = g.param;
      if (d <= 0) throw CapacityError("embeddings: cbrt of nonpositive");
      QPoly f({BigRat(-d), BigRat(0), BigRat(0), BigRat(1)});
      auto roots = isolate_real_roots(f, eps);
      if (roots.size() != 1) throw InvariantViolation("cbrt: expected one real root");
      RatInterval r{roots[0].first, roots[0].second};
      RatInterval s3 = iv_sqrt(RatInterval::point(BigRat(3)), eps);
      RatInterval half = RatInterval::point(BigRat(1, 2));
      out.push_back({r, zero_iv});
      RatInterval re = -(r * half);
      RatInterval im = r * s3 * half;
      out.push_back({re, im});
      out.push_back({re, -im});
      return out;
    }
    case GenSpec::Kind::Zeta3Pow: {
      long k = (long)g.param;
      RatInterval s3 = iv_sqrt(RatInterval::point(BigRat(3)), eps);
      if (k == 1) {
        RatInterval mh = RatInterval::point(BigRat(-1, 2));
        RatInterval im = iv_scale(s3, BigRat(1, 2));
        out.push_back({mh, im});
        out.push_back({mh, -im});
        return out;
      }
      if (k == 2) {
        // roots of x^6+x^3+1: zeta_9^j, j in {1,2,4,5,7,8};
        // real parts cos(2 pi j / 9) = (roots of y^3 - 3y + 1)/2
        QPoly c3({BigRat(1), BigRat(-3), BigRat(0), BigRat(1)});
        auto cr = isolate_real_roots(c3, eps);
        if (cr.size() != 3) throw InvariantViolation("zeta9: expected 3 real cosine roots");
        for (auto& [lo, hi] : cr) {
          RatInterval twoc{lo, hi};
          RatInterval re = iv_scale(twoc, BigRat(1, 2));
          RatInterval im2 = RatInterval::point(BigRat(1)) - re * re;
          if (im2.lo < 0) im2.lo = BigRat(0);
          RatInterval im = iv_sqrt(im2, eps);
          out.push_back({re, im});
          out.push_back({re, -im});
        }
        return out;
      }
      throw CapacityError("embeddings: zeta level too deep");
    }
    case GenSpec::Kind::Poly: {
      auto roots = isolate_real_roots(g.minpoly, eps);
      if ((long)roots.size() != g.minpoly.deg())
        throw CapacityError("embeddings: complex roots of a generic generator");
      for (auto& [lo, hi] : roots) out.push_back({RatInterval{lo, hi}, zero_iv});
      return out;
    }
  }
  throw InvariantViolation("gen_conjugates: unreachable");
}

}  // namespace

std::vector<std::vector<CplxInterval>> NumberField::embeddings(const BigRat& eps) const {
  std::string key = to_string(eps);
  auto it = memo_.embeds.find(key);
  if (it != memo_.embeds.end()) return it->second;
  if (n == 1) {
    std::vector<std::vector<CplxInterval>> one_emb(1);
    one_emb[0].push_back({RatInterval::point(BigRat(1)), RatInterval::point(BigRat(0))});
    memo_.embeds[key] = one_emb;
    return one_emb;
  }
  if (gens.empty()) throw CapacityError("embeddings: no generator data");
  // conjugate tuples
  std::vector<std::vector<CplxInterval>> conj;
  for (const auto& g : gens) conj.push_back(gen_conjugates(g.spec, eps));
  long total = 1;
  for (auto& c : conj) total *= (long)c.size();
  if (total != n) throw InvariantViolation("embeddings: conjugate count mismatch");
  std::vector<std::vector<CplxInterval>> out;
  std::vector<size_t> pick(conj.size(), 0);
  auto zero_iv = RatInterval::point(BigRat(0));
  while (true) {
    // theta value = sum combo_i * conj_i
    CplxInterval theta{zero_iv, zero_iv};
    for (size_t i = 0; i < conj.size(); ++i) {
      CplxInterval v = conj[i][pick[i]];
      theta.re = theta.re + iv_scale(v.re, BigRat(theta_combo[i]));
      theta.im = theta.im + iv_scale(v.im, BigRat(theta_combo[i]));
    }
    // basis values
    std::vector<CplxInterval> row;
    std::vector<CplxInterval> tp(n);
    CplxInterval cur{RatInterval::point(BigRat(1)), zero_iv};
    for (long j = 0; j < n; ++j) {
      tp[j] = cur;
      cur = cur * theta;
    }
    for (long i = 0; i < n; ++i) {
      CplxInterval acc{zero_iv, zero_iv};
      for (long j = 0; j < n; ++j) {
        BigRat cnum(basis_num.at(i, j), basis_den);
        acc.re = acc.re + iv_scale(tp[j].re, cnum);
        acc.im = acc.im + iv_scale(tp[j].im, cnum);
      }
      row.push_back(acc);
    }
    out.push_back(row);
    // next tuple
    size_t idx = 0;
    while (idx < pick.size()) {
      if (++pick[idx] < conj[idx].size()) break;
      pick[idx] = 0;
      ++idx;
    }
    if (idx == pick.size()) break;
  }
  memo_.embeds[key] = out;
  return out;
}

QMat NumberField::t2_gram_exact_or_lower(bool* exact) const {
  // Exact when complex conjugation is induced by an automorphism of every
  // generator (sqrt and zeta generators only) or the field is totally real.
  bool can_exact = true;
  for (const auto& g : gens)
    if (g.spec.kind == GenSpec::Kind::Cbrt) can_exact = false;
  if (gens.empty() && n > 1) can_exact = (r2 == 0);
  if (n > 1 && r2 > 0 && !gens.empty()) {
    // need conjugation automorphism
    std::vector<ElemCoords> imgs;
    for (const auto& g : gens) {
      if (g.spec.kind == GenSpec::Kind::Sqrt) {
        if (g.spec.param > 0)
          imgs.push_back(g.coords);
        else
          imgs.push_back(neg(g.coords));
      } else if (g.spec.kind == GenSpec::Kind::Zeta3Pow) {
        imgs.push_back(inv(g.coords));
      } else {
        can_exact = false;
        break;
      }
    }
    if (can_exact) {
      auto tau = automorphism(imgs);
      if (tau) {
        QMat G(n, n);
        for (long i = 0; i < n; ++i) {
          ElemCoords bi(n, BigRat(0));
          bi[i] = 1;
          for (long j = 0; j < n; ++j) {
            ElemCoords bj(n, BigRat(0));
            bj[j] = 1;
            ElemCoords prod = mul(bi, apply_matrix(*tau, bj));
            G.at(i, j) = trace(prod);
          }
        }
        if (exact) *exact = true;
        return G;
      }
    }
  }
  if (n == 1 || r2 == 0) {
    // totally real (or Q): T2 = trace form
    QMat G(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        ElemCoords bi(n, BigRat(0)), bj(n, BigRat(0));
        bi[i] = 1;
        bj[j] = 1;
        G.at(i, j) = trace(mul(bi, bj));
      }
    if (exact) *exact = true;
    return G;
  }
  // interval lower bound
  if (exact) *exact = false;
  BigRat eps(1, 100000);
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto emb = embeddings(eps);
    QMat G(n, n);
    bool ok = true;
    for (long i = 0; i < n && ok; ++i)
      for (long j = i; j < n && ok; ++j) {
        RatInterval acc = RatInterval::point(BigRat(0));
        for (long s = 0; s < n; ++s) {
          CplxInterval prod = emb[s][i] * cx_conj(emb[s][j]);
          acc = acc + prod.re;
        }
        // lower bound for diagonal dominance; use midpoint for off-diagonal
        G.at(i, j) = acc.lo;
        G.at(j, i) = acc.lo;
      }
    // check positive definiteness via Cholesky attempt in enumerate later;
    // here a quick leading-minor check
    bool pd = true;
    for (long k = 1; k <= n && pd; ++k) {
      QMat sub(k, k);
      for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) sub.at(i, j) = G.at(i, j);
      if (det(sub) <= 0) pd = false;
    }
    if (pd && ok) return G;
    eps /= 1024;
  }
  throw CapacityError("t2 gram: could not certify positive definiteness");
}

QMat NumberField::t2_gram_upper() const {
  bool exact = false;
  QMat G = t2_gram_exact_or_lower(&exact);
  if (exact) return G;
  BigRat eps(1, 100000);
  auto emb = embeddings(eps);
  QMat U(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      RatInterval acc = RatInterval::point(BigRat(0));
      for (long s = 0; s < n; ++s) {
        CplxInterval prod = emb[s][i] * cx_conj(emb[s][j]);
        acc = acc + prod.re;
      }
      U.at(i, j) = acc.hi;
    }
  return U;
}

BigRat NumberField::coord_bound(const BigRat& t2bound) const {
  // |c_i| = |Tr(x * dual_i)| <= sqrt(T2(x)) * sqrt(T2(dual_i))
  QMat T(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      ElemCoords bi(n, BigRat(0)), bj(n, BigRat(0));
      bi[i] = 1;
      bj[j] = 1;
      T.at(i, j) = trace(mul(bi, bj));
    }
  auto Tinv = inverse(T);
  if (!Tinv) throw InvariantViolation("trace form singular");
  QMat GU = t2_gram_upper();
  BigRat best(0);
  for (long i = 0; i < n; ++i) {
    // dual_i coords = row i of Tinv; T2(dual_i) <= row * GU * row^T
    BigRat t2d(0);
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) {
        BigRat v = Tinv->at(i, a) * Tinv->at(i, b) * GU.at(a, b);
        t2d += v;
      }
    if (t2d < 0) t2d = -t2d;
    if (t2d > best) best = t2d;
  }
  // bound = sqrt(t2bound * best), rounded up
  BigRat prod = t2bound * best;
  BigInt num = rat_num(prod), den = rat_den(prod);
  BigInt r = isqrt(num / den) + 1;
  return BigRat(r);
}

BigRat NumberField::minkowski_bound() const {
  // (n!/n^n) (4/pi)^{r2} sqrt|d|, rounded up rationally (4/pi < 1.2733)
  BigRat fact(1);
  for (long i = 2; i <= n; ++i) fact *= i;
  BigRat nn(1);
  for (long i = 0; i < n; ++i) nn *= n;
  BigRat c = fact / nn;
  for (long i = 0; i < r2; ++i) c *= BigRat(12733, 10000);
  BigInt ad = disc < 0 ? BigInt(-disc) : disc;
  BigRat sq(isqrt(ad) + 1);
  return c * sq;
}

// ---- global root finding ----

namespace {

// solve M x = b mod q^k where M is invertible mod q
std::vector<BigInt> solve_mod_int(std::vector<std::vector<BigInt>> M, std::vector<BigInt> b,
                                  long q, const BigInt& mod) {
  long n = (long)b.size();
  for (long c = 0; c < n; ++c) {
    long piv = -1;
    for (long i = c; i < n; ++i)
      if (M[i][c] % q != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw InvariantViolation("solve_mod: singular mod q");
    std::swap(M[c], M[piv]);
    std::swap(b[c], b[piv]);
    BigInt inv = mod_inverse(M[c][c], mod);
    for (long j = 0; j < n; ++j) M[c][j] = mod_pos(M[c][j] * inv, mod);
    b[c] = mod_pos(b[c] * inv, mod);
    for (long i = 0; i < n; ++i) {
      if (i == c) continue;
      BigInt f = M[i][c];
      if (f == 0) continue;
      for (long j = 0; j < n; ++j) M[i][j] = mod_pos(M[i][j] - f * M[c][j], mod);
      b[i] = mod_pos(b[i] - f * b[c], mod);
    }
  }
  return b;
}

}  // namespace

std::vector<ElemCoords> NumberField::roots_of_integer_poly(const std::vector<BigInt>& poly,
                                                           const BigRat& t2_bound) const {
  // --- choose q ---
  QPoly fq;
  {
    std::vector<BigRat> c;
    for (const BigInt& v : poly) c.push_back(BigRat(v));
    fq = QPoly(c);
  }
  BigRat dsc = qpoly_disc(fq);
  long q = 0;
  std::vector<PrimeIdeal> primes_over_q;
  std::vector<std::vector<Fq>> comp_roots;
  long best_combos = -1;
  int candidates_seen = 0;
  for (long cand : primes_up_to(20000)) {
    if (cand < 5) continue;
    if (disc % cand == 0) continue;
    if (basis_den % cand == 0) continue;
    if (rat_num(dsc) % cand == 0 || rat_den(dsc) % cand == 0) continue;
    auto dec = decompose(cand);
    std::vector<std::vector<Fq>> croots;
    bool empty_comp = false;
    long combos = 1;
    for (auto& P : dec) {
      FqPoly fp = fqp_from_int_coeffs(P.resfield, poly);
      auto roots = fqp_roots(P.resfield, fp);
      if (roots.empty()) {
        empty_comp = true;
        break;
      }
      combos *= (long)roots.size();
      croots.push_back(roots);
    }
    if (empty_comp) return {};  // certificate: no root exists
    if (best_combos < 0 || combos < best_combos) {
      best_combos = combos;
      q = cand;
      primes_over_q = dec;
      comp_roots = croots;
    }
    if (++candidates_seen >= 12 || best_combos <= 4) break;
  }
  if (!q) throw CapacityError("roots: no auxiliary prime");
  if (best_combos > 729) throw CapacityError("roots: too many residue combinations");
  // stacked residue map S: n x n over F_q (rows grouped by component)
  FpMat S(q, n, n);
  {
    long row = 0;
    for (auto& P : primes_over_q) {
      for (long r = 0; r < P.resfield.f; ++r) {
        for (long j = 0; j < n; ++j) S.at(row, j) = P.to_res.at(r, j);
        ++row;
      }
    }
    if (row != n) throw InvariantViolation("roots: q ramified?");
  }
  // invert S mod q
  std::vector<std::vector<BigInt>> Sinv(n, std::vector<BigInt>(n, 0));
  {
    FpMat w(q, n, 2 * n);
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) w.at(i, j) = S.at(i, j);
      w.at(i, n + i) = 1;
    }
    for (long c = 0; c < n; ++c) {
      long piv = -1;
      for (long i = c; i < n; ++i)
        if (w.at(i, c)) {
          piv = i;
          break;
        }
      if (piv < 0) throw InvariantViolation("roots: residue map singular");
      for (long j = 0; j < 2 * n; ++j) std::swap(w.a[c * w.cols + j], w.a[piv * w.cols + j]);
      long t = 0, nt = 1, rm = q, nr = w.at(c, c);
      while (nr != 0) {
        long qq = rm / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(rm -= qq * nr, nr);
      }
      long invl = t < 0 ? t + q : t;
      for (long j = 0; j < 2 * n; ++j) w.at(c, j) = (long)((__int128)w.at(c, j) * invl % q);
      for (long i = 0; i < n; ++i) {
        if (i == c || !w.at(i, c)) continue;
        long fch = w.at(i, c);
        for (long j = 0; j < 2 * n; ++j) {
          long sub = (long)((__int128)fch * w.at(c, j) % q);
          w.at(i, j) = (w.at(i, j) - sub % q + q) % q;
        }
      }
    }
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) Sinv[i][j] = w.at(i, n + j);
  }
  // coordinate bound and lifting precision
  BigRat cb = coord_bound(t2_bound);
  BigInt coord_b = rat_num(cb) / rat_den(cb) + 1;
  BigInt mod(q);
  long steps = 1;
  while (mod <= 4 * coord_b) {
    mod *= q;
    ++steps;
  }
  // modular arithmetic in O/mod via mult table
  auto mul_modO = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                      const BigInt& m) {
    std::vector<BigInt> r(n, 0);
    for (long i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        BigInt c = mod_pos(a[i] * b[j], m);
        if (c == 0) continue;
        for (long k = 0; k < n; ++k) {
          const BigInt& t = mult[i].at(k, j);
          if (t != 0) r[k] = mod_pos(r[k] + c * t, m);
        }
      }
    }
    return r;
  };
  std::vector<BigInt> one_modO(n);
  {
    ElemCoords o = one();
    for (long i = 0; i < n; ++i) one_modO[i] = mod_pos(rat_num(o[i]), mod);
  }
  auto eval_poly_modO = [&](const std::vector<BigInt>& coeffs, const std::vector<BigInt>& x,
                            const BigInt& m) {
    std::vector<BigInt> r(n, 0);
    for (long i = (long)coeffs.size() - 1; i >= 0; --i) {
      r = mul_modO(r, x, m);
      // add coeff * 1
      for (long k = 0; k < n; ++k)
        r[k] = mod_pos(r[k] + mod_pos(coeffs[i], m) * one_modO[k], m);
    }
    return r;
  };
  std::vector<BigInt> dpoly;
  for (size_t i = 1; i < poly.size(); ++i) dpoly.push_back(poly[i] * (long)i);

  std::vector<ElemCoords> found;
  std::vector<size_t> pick(comp_roots.size(), 0);
  while (true) {
    // assemble x0 mod q
    std::vector<long> rhs(n, 0);
    long row = 0;
    for (size_t ci = 0; ci < comp_roots.size(); ++ci) {
      const Fq& root = comp_roots[ci][pick[ci]];
      for (long r = 0; r < (long)root.size(); ++r) rhs[row++] = root[r];
    }
    std::vector<BigInt> x(n, 0);
    for (long i = 0; i < n; ++i) {
      BigInt acc = 0;
      for (long j = 0; j < n; ++j) acc += Sinv[i][j] * rhs[j];
      x[i] = mod_pos(acc, q);
    }
    // Newton lift
    BigInt cur(q);
    for (long s = 0; s < steps + 2 && cur < mod; ++s) {
      BigInt next = cur * cur;
      if (next > mod) next = mod;
      // x ' = x - f(x) / f'(x) mod next
      auto fx = eval_poly_modO(poly, x, next);
      auto dfx = eval_poly_modO(dpoly, x, next);
      // multiplication matrix of dfx mod next
      std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n, 0));
      for (long j = 0; j < n; ++j) {
        std::vector<BigInt> ej(n, 0);
        ej[j] = 1;
        auto col = mul_modO(dfx, ej, next);
        for (long i = 0; i < n; ++i) M[i][j] = col[i];
      }
      auto delta = solve_mod_int(M, fx, q, next);
      for (long i = 0; i < n; ++i) x[i] = mod_pos(x[i] - delta[i], next);
      cur = next;
    }
    // symmetric lift and exact verification
    ElemCoords cand(n);
    BigInt half = mod / 2;
    for (long i = 0; i < n; ++i) {
      BigInt v = x[i];
      if (v > half) v -= mod;
      cand[i] = BigRat(v);
    }
    // verify
    ElemCoords acc = zero();
    ElemCoords candv = cand;
    bool root_ok = true;
    {
      ElemCoords r = zero();
      for (long i = (long)poly.size() - 1; i >= 0; --i) {
        r = mul(r, candv);
        r = add(r, from_int(poly[i]));
      }
      root_ok = is_zero(r);
    }
    (void)acc;
    if (root_ok) {
      bool dup = false;
      for (auto& f2 : found)
        if (eq(f2, cand)) dup = true;
      if (!dup) found.push_back(cand);
    }
    size_t idx = 0;
    while (idx < pick.size()) {
      if (++pick[idx] < comp_roots[idx].size()) break;
      pick[idx] = 0;
      ++idx;
    }
    if (idx == pick.size()) break;
  }
  return found;
}

std::vector<ElemCoords> NumberField::power_roots(long m, const ElemCoords& w) const {
  // Roots of x^m = w, via residue roots + Newton lifting + bounded
  // reconstruction.
  if (is_zero(w)) return {zero()};
  BigRat t2b;
  if (n == 1) {
    BigRat aw = w[0] < 0 ? -w[0] : w[0];
    // |w|^{2/m} <= (1+|w|)^{2/m} <= 1 + |w| for m >= 2... crude but fine
    t2b = BigRat(1) + aw;
  } else {
    BigRat eps(1, 100000);
    auto emb = embeddings(eps);
    // T2(root) = sum |w_sigma|^{2/m}; bound each by max(1, |w_sigma|^2)^(1/m)
    // and crudely by 1 + |w_sigma|^2 (since t^(1/m) <= 1 + t for t >= 0).
    RatInterval total = RatInterval::point(BigRat(0));
    for (long s = 0; s < n; ++s) {
      CplxInterval val{RatInterval::point(BigRat(0)), RatInterval::point(BigRat(0))};
      for (long i = 0; i < n; ++i) {
        val.re = val.re + iv_scale(emb[s][i].re, w[i]);
        val.im = val.im + iv_scale(emb[s][i].im, w[i]);
      }
      RatInterval a2 = cx_abs2(val);
      total = total + a2;
    }
    t2b = BigRat(n) + total.hi;  // sum (1 + |w|^2) >= sum |w|^{2/m}
  }
  // f(x) = x^m - w: coefficients in K; reuse integer-poly machinery by
  // translating to a K-coefficient Newton (denominator-free when w integral).
  // Clear denominators: x^m = w with x = y / d :  y^m = w * d^m.
  BigInt den = 1;
  for (const auto& v : w) den = lcm(den, rat_den(v));
  ElemCoords wi = mul_rat(w, BigRat(int_pow(den, (unsigned long)m)));
  // now find integral y with y^m = wi, then x = y/den
  // --- mirrors roots_of_integer_poly with K coefficients ---
  BigRat t2b_y = t2b;
  {
    BigRat dp(1);
    for (long i = 0; i < 2; ++i) dp *= BigRat(den);
    // T2(y) = d^2 * T2(x) roughly; scale generously
    BigRat scale(1);
    for (long i = 0; i < m; ++i) scale *= BigRat(den);
    t2b_y = t2b * scale * scale + BigRat(n);
  }
  long q = 0;
  BigRat nw = norm(wi);
  std::vector<PrimeIdeal> primes_over_q;
  std::vector<std::vector<Fq>> comp_roots;
  long best_combos = -1;
  int candidates_seen = 0;
  for (long cand : primes_up_to(20000)) {
    if (cand < 5) continue;
    if (disc % cand == 0 || basis_den % cand == 0) continue;
    if (cand == m) continue;
    if (rat_num(nw) % cand == 0) continue;
    auto dec = decompose(cand);
    std::vector<std::vector<Fq>> croots;
    bool empty_comp = false;
    long combos = 1;
    for (auto& P : dec) {
      Fq wbar = residue_of(P, wi);
      FqPoly f(m + 1, fq_zero(P.resfield));
      f[m] = fq_one(P.resfield);
      f[0] = fq_neg(P.resfield, wbar);
      auto roots = fqp_roots(P.resfield, f);
      if (roots.empty()) {
        empty_comp = true;
        break;
      }
      combos *= (long)roots.size();
      croots.push_back(roots);
    }
    if (empty_comp) return {};
    if (best_combos < 0 || combos < best_combos) {
      best_combos = combos;
      q = cand;
      primes_over_q = dec;
      comp_roots = croots;
    }
    if (++candidates_seen >= 12 || best_combos <= 4) break;
  }
  if (!q) throw CapacityError("power_roots: no auxiliary prime");
  if (best_combos > 729) throw CapacityError("power_roots: too many residue combinations");
  FpMat S(q, n, n);
  {
    long row = 0;
    for (auto& P : primes_over_q)
      for (long r = 0; r < P.resfield.f; ++r) {
        for (long j = 0; j < n; ++j) S.at(row, j) = P.to_res.at(r, j);
        ++row;
      }
  }
  std::vector<std::vector<BigInt>> Sinv(n, std::vector<BigInt>(n, 0));
  {
    FpMat wme(q, n, 2 * n);
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) wme.at(i, j) = S.at(i, j);
      wme.at(i, n + i) = 1;
    }
    for (long c = 0; c < n; ++c) {
      long piv = -1;
      for (long i = c; i < n; ++i)
        if (wme.at(i, c)) {
          piv = i;
          break;
        }
      if (piv < 0) throw InvariantViolation("power_roots: residue map singular");
      for (long j = 0; j < 2 * n; ++j)
        std::swap(wme.a[c * wme.cols + j], wme.a[piv * wme.cols + j]);
      long t = 0, nt = 1, rm = q, nr = wme.at(c, c);
      while (nr != 0) {
        long qq = rm / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(rm -= qq * nr, nr);
      }
      long invl = t < 0 ? t + q : t;
      for (long j = 0; j < 2 * n; ++j)
        wme.at(c, j) = (long)((__int128)wme.at(c, j) * invl % q);
      for (long i = 0; i < n; ++i) {
        if (i == c || !wme.at(i, c)) continue;
        long fch = wme.at(i, c);
        for (long j = 0; j < 2 * n; ++j) {
          long sub = (long)((__int128)fch * wme.at(c, j) % q);
          wme.at(i, j) = (wme.at(i, j) - sub % q + q) % q;
        }
      }
    }
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) Sinv[i][j] = wme.at(i, n + j);
  }
  BigRat cb = coord_bound(t2b_y);
  BigInt coord_b = rat_num(cb) / rat_den(cb) + 1;
  BigInt mod(q);
  long steps = 1;
  while (mod <= 4 * coord_b) {
    mod *= q;
    ++steps;
  }
  auto mul_modO = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                      const BigInt& mm) {
    std::vector<BigInt> r(n, 0);
    for (long i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        BigInt c = mod_pos(a[i] * b[j], mm);
        if (c == 0) continue;
        for (long k = 0; k < n; ++k) {
          const BigInt& t = mult[i].at(k, j);
          if (t != 0) r[k] = mod_pos(r[k] + c * t, mm);
        }
      }
    }
    return r;
  };
  std::vector<BigInt> wmod(n);
  for (long i = 0; i < n; ++i) wmod[i] = mod_pos(rat_num(wi[i]), mod);

  std::vector<ElemCoords> found;
  std::vector<size_t> pick(comp_roots.size(), 0);
  while (true) {
    std::vector<long> rhs(n, 0);
    long row = 0;
    for (size_t ci = 0; ci < comp_roots.size(); ++ci) {
      const Fq& root = comp_roots[ci][pick[ci]];
      for (long r = 0; r < (long)root.size(); ++r) rhs[row++] = root[r];
    }
    std::vector<BigInt> x(n, 0);
    for (long i = 0; i < n; ++i) {
      BigInt acc = 0;
      for (long j = 0; j < n; ++j) acc += Sinv[i][j] * rhs[j];
      x[i] = mod_pos(acc, q);
    }
    BigInt cur(q);
    for (long s = 0; s < steps + 2 && cur < mod; ++s) {
      BigInt next = cur * cur;
      if (next > mod) next = mod;
      // f(x) = x^m - w; f'(x) = m x^{m-1}
      std::vector<BigInt> xm1(n, 0);
      {
        // x^(m-1)
        std::vector<BigInt> r(n, 0);
        ElemCoords o = one();
        for (long i = 0; i < n; ++i) r[i] = mod_pos(rat_num(o[i]), next);
        std::vector<BigInt> base = x;
        long e = m - 1;
        while (e > 0) {
          if (e & 1) r = mul_modO(r, base, next);
          base = mul_modO(base, base, next);
          e >>= 1;
        }
        xm1 = r;
      }
      auto fx = mul_modO(xm1, x, next);
      for (long i = 0; i < n; ++i) fx[i] = mod_pos(fx[i] - mod_pos(rat_num(wi[i]), next), next);
      std::vector<BigInt> dfx(n);
      for (long i = 0; i < n; ++i) dfx[i] = mod_pos(BigInt(m) * xm1[i], next);
      std::vector<std::vector<BigInt>> Mm(n, std::vector<BigInt>(n, 0));
      for (long j = 0; j < n; ++j) {
        std::vector<BigInt> ej(n, 0);
        ej[j] = 1;
        auto col = mul_modO(dfx, ej, next);
        for (long i = 0; i < n; ++i) Mm[i][j] = col[i];
      }
      auto delta = solve_mod_int(Mm, fx, q, next);
      for (long i = 0; i < n; ++i) x[i] = mod_pos(x[i] - delta[i], next);
      cur = next;
    }
    ElemCoords cand(n);
    BigInt half = mod / 2;
    for (long i = 0; i < n; ++i) {
      BigInt v = x[i];
      if (v > half) v -= mod;
      cand[i] = BigRat(v);
    }
    ElemCoords powv = power(cand, m);
    if (eq(powv, wi)) {
      ElemCoords xfinal = mul_rat(cand, BigRat(1, den));
      bool dup = false;
      for (auto& f2 : found)
        if (eq(f2, xfinal)) dup = true;
      if (!dup) found.push_back(xfinal);
    }
    size_t idx = 0;
    while (idx < pick.size()) {
      if (++pick[idx] < comp_roots[idx].size()) break;
      pick[idx] = 0;
      ++idx;
    }
    if (idx == pick.size()) break;
  }
  return found;
}

long NumberField::mu_ell_order(long ell) const {
  auto it = memo_.mu.find(ell);
  if (it != memo_.mu.end()) return it->second.first;
  long order = 1;
  ElemCoords gen = one();
  long step = 1;
  // fast negative sieve: mu_{ell^k} in K forces N(Q) = 1 mod ell^k at every
  // unramified prime Q
  auto sieve_reject = [&](long lk) {
    int checked = 0;
    for (long cand : primes_up_to(500)) {
      if (cand < 5 || disc % cand == 0 || basis_den % cand == 0 || cand == ell) continue;
      for (auto& P : decompose(cand)) {
        BigInt qf = P.norm;
        if (mod_pos(qf - 1, lk) != 0) return true;
      }
      if (++checked >= 4) break;
    }
    return false;
  };
  for (int k = 1;; ++k) {
    long deg = step * (ell - 1);
    if (deg > n || n % deg != 0) break;
    {
      long lk = 1;
      for (int i = 0; i < k; ++i) lk *= ell;
      if (sieve_reject(lk)) break;
    }
    // cyclotomic polynomial of ell^k: sum_{i<ell} x^{i*step}
    std::vector<BigInt> phi((size_t)(step * (ell - 1) + 1), 0);
    for (long i = 0; i < ell; ++i)
      if (i * step <= step * (ell - 1)) phi[i * step] = 1;
    auto roots = roots_of_integer_poly(phi, BigRat(n));
    if (roots.empty()) break;
    order = 1;
    for (int i = 0; i < k; ++i) order *= ell;
    gen = roots.front();
    step *= ell;
  }
  memo_.mu[ell] = {order, gen};
  return order;
}

ElemCoords NumberField::mu_ell_generator(long ell) const {
  long o = mu_ell_order(ell);
  if (o <= 1) throw InputError("mu_ell_generator: trivial ell-part");
  return memo_.mu.at(ell).second;
}

}  // namespace logcap
