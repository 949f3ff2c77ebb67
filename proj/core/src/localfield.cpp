#include "logcap/localfield.hpp"

#include "logcap/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace logcap {

namespace {

std::vector<BigInt> yvec_zero(const LocalField& T) { return std::vector<BigInt>(T.f, 0); }

std::vector<BigInt> yvec_mul(const LocalField& T, const std::vector<BigInt>& a,
                             const std::vector<BigInt>& b) {
  int f = T.f;
  std::vector<BigInt> prod(2 * f - 1, 0);
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f; ++j)
      if (b[j] != 0) prod[i + j] = mod_pos(prod[i + j] + a[i] * b[j], T.modulus);
  }
  for (int d = 2 * f - 2; d >= f; --d) {
    BigInt c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int j = 0; j < f; ++j) prod[d - f + j] = mod_pos(prod[d - f + j] - c * T.h[j], T.modulus);
  }
  prod.resize(f);
  return prod;
}

long yvec_val(const LocalField& T, const std::vector<BigInt>& a) {
  long v = T.N;
  for (const BigInt& x : a) {
    if (x == 0) continue;
    long w = 0;
    BigInt t = x;
    while (t % T.ell == 0 && w < T.N) {
      t /= T.ell;
      ++w;
    }
    v = std::min(v, w);
    if (v == 0) break;
  }
  return v;
}

}  // namespace

LocalField make_unramified(long ell, int f, long N) {
  LocalField T;
  T.ell = ell;
  T.e = 1;
  T.f = f;
  T.N = N;
  T.modulus = int_pow(BigInt(ell), (unsigned long)N);
  FqCtx base = FqCtx::extension(ell, f);
  T.h.assign(f + 1, 0);
  for (int i = 0; i <= f; ++i) T.h[i] = base.h[i];
  T.residue = base;
  // E = t - 0 is unused for e = 1; store t - ell placeholder? e=1: E = t - ell
  T.E.assign(2, yvec_zero(T));
  T.E[1] = yvec_zero(T);
  T.E[1][0] = 1;
  T.E[0] = yvec_zero(T);
  T.E[0][0] = mod_pos(BigInt(-ell), T.modulus);
  return T;
}

LocalField make_with_eisenstein(long ell, int f, const std::vector<std::vector<BigInt>>& E,
                                long N) {
  LocalField T = make_unramified(ell, f, N);
  T.e = (int)E.size() - 1;
  T.E.clear();
  for (const auto& row : E) {
    std::vector<BigInt> v(T.f, 0);
    for (size_t j = 0; j < row.size() && j < (size_t)T.f; ++j) v[j] = mod_pos(row[j], T.modulus);
    T.E.push_back(v);
  }
  // Eisenstein sanity: constant term valuation exactly 1, middle >= 1, monic.
  if (T.e >= 2) {
    if (yvec_val(T, T.E[0]) != 1) throw InputError("make_with_eisenstein: bad constant term");
    for (int i = 1; i < T.e; ++i)
      if (yvec_val(T, T.E[i]) < 1) throw InputError("make_with_eisenstein: not Eisenstein");
  }
  return T;
}

LocalField make_tame(long ell, int f, int e, long unit_class, long N) {
  LocalField T0 = make_unramified(ell, f, N);
  if (e == 1) return T0;
  // Uniformizer t with t^e = ell * g^unit_class, g a generator of the
  // residue multiplicative group (naive lift).
  Fq g = fq_zero(T0.residue);
  BigInt q1 = T0.residue.order() - 1;
  for (BigInt idx = 1;; ++idx) {
    Fq cand = fq_from_index(T0.residue, idx);
    if (fq_is_zero(cand)) continue;
    bool gen = true;
    for (const auto& [p, m] : factorize(q1)) {
      (void)m;
      if (fq_eq(fq_pow(T0.residue, cand, q1 / p), fq_one(T0.residue))) {
        gen = false;
        break;
      }
    }
    if (gen) {
      g = cand;
      break;
    }
  }
  Fq u = fq_pow(T0.residue, g, BigInt(unit_class));
  std::vector<std::vector<BigInt>> E(e + 1);
  for (int i = 0; i <= e; ++i) E[i].assign(f, 0);
  E[e][0] = 1;
  for (int j = 0; j < f; ++j) E[0][j] = mod_pos(BigInt(-ell) * u[j], T0.modulus);
  LocalField T = make_with_eisenstein(ell, f, E, N);
  return T;
}

TElem t_zero(const LocalField& T) { return TElem(T.dim(), 0); }
TElem t_one(const LocalField& T) {
  TElem a(T.dim(), 0);
  a[0] = 1;
  return a;
}
TElem t_from_int(const LocalField& T, const BigInt& v) {
  TElem a(T.dim(), 0);
  a[0] = mod_pos(v, T.modulus);
  return a;
}
TElem t_uniformizer(const LocalField& T) {
  TElem a(T.dim(), 0);
  if (T.e == 1)
    a[0] = mod_pos(BigInt(T.ell), T.modulus);
  else
    a[1 * T.f + 0] = 1;
  return a;
}
TElem t_gen_unram(const LocalField& T) {
  TElem a(T.dim(), 0);
  if (T.f > 1) a[1] = 1;
  return a;
}
bool t_is_zero(const TElem& a) {
  for (const BigInt& x : a)
    if (x != 0) return false;
  return true;
}

TElem t_add(const LocalField& T, const TElem& a, const TElem& b) {
  TElem r(T.dim());
  for (int i = 0; i < T.dim(); ++i) r[i] = mod_pos(a[i] + b[i], T.modulus);
  return r;
}
TElem t_sub(const LocalField& T, const TElem& a, const TElem& b) {
  TElem r(T.dim());
  for (int i = 0; i < T.dim(); ++i) r[i] = mod_pos(a[i] - b[i], T.modulus);
  return r;
}
TElem t_neg(const LocalField& T, const TElem& a) {
  TElem r(T.dim());
  for (int i = 0; i < T.dim(); ++i) r[i] = a[i] == 0 ? BigInt(0) : T.modulus - a[i];
  return r;
}

TElem t_mul(const LocalField& T, const TElem& a, const TElem& b) {
  int e = T.e, f = T.f;
  // multiply as polynomials in t with y-vector coefficients
  std::vector<std::vector<BigInt>> prod(2 * e - 1, yvec_zero(T));
  for (int i = 0; i < e; ++i) {
    std::vector<BigInt> ai(a.begin() + i * f, a.begin() + (i + 1) * f);
    if (yvec_val(T, ai) >= T.N) continue;
    for (int j = 0; j < e; ++j) {
      std::vector<BigInt> bj(b.begin() + j * f, b.begin() + (j + 1) * f);
      if (yvec_val(T, bj) >= T.N) continue;
      auto m = yvec_mul(T, ai, bj);
      for (int k = 0; k < f; ++k) prod[i + j][k] = mod_pos(prod[i + j][k] + m[k], T.modulus);
    }
  }
  // reduce t-degree via monic E: t^e = -sum E[i] t^i
  for (int d = 2 * e - 2; d >= e; --d) {
    auto c = prod[d];
    if (yvec_val(T, c) >= T.N) continue;
    prod[d] = yvec_zero(T);
    for (int i = 0; i < e; ++i) {
      auto m = yvec_mul(T, c, T.E[i]);
      for (int k = 0; k < f; ++k) prod[d - e + i][k] = mod_pos(prod[d - e + i][k] - m[k], T.modulus);
    }
  }
  TElem r(T.dim());
  for (int i = 0; i < e; ++i)
    for (int k = 0; k < f; ++k) r[i * f + k] = prod[i][k];
  return r;
}

TElem t_pow(const LocalField& T, TElem a, BigInt k) {
  if (k < 0) {
    a = t_inv_unit(T, a);
    k = -k;
  }
  TElem r = t_one(T);
  while (k > 0) {
    if ((k & 1) != 0) r = t_mul(T, r, a);
    a = t_mul(T, a, a);
    k >>= 1;
  }
  return r;
}

long t_val(const LocalField& T, const TElem& a) {
  long v = T.mprec();
  for (int i = 0; i < T.e; ++i) {
    std::vector<BigInt> ai(a.begin() + i * T.f, a.begin() + (i + 1) * T.f);
    long w = yvec_val(T, ai);
    if (w >= T.N) continue;
    v = std::min(v, (long)T.e * w + i);
  }
  return v;
}

Fq t_residue(const LocalField& T, const TElem& a) {
  Fq r(T.f, 0);
  for (int j = 0; j < T.f; ++j) r[j] = (long)(a[j] % T.ell);
  return r;
}

TElem t_from_fq(const LocalField& T, const Fq& r) {
  TElem a(T.dim(), 0);
  for (int j = 0; j < T.f; ++j) a[j] = r[j];
  return a;
}

TElem t_inv_unit(const LocalField& T, const TElem& a) {
  if (t_val(T, a) != 0) throw InputError("t_inv_unit: not a unit");
  // Newton z <- z(2 - a z), seeded with the residue-field inverse.
  Fq r0 = fq_inv(T.residue, t_residue(T, a));
  TElem z = t_from_fq(T, r0);
  TElem two = t_from_int(T, 2);
  long goal = T.mprec();
  long have = 1;
  while (have < goal) {
    z = t_mul(T, z, t_sub(T, two, t_mul(T, a, z)));
    have *= 2;
  }
  return z;
}

TElem t_shift_down(const LocalField& T, const TElem& a, long k) {
  if (k == 0) return a;
  if (k < 0) {
    // multiply by t^{-k}
    return t_mul(T, a, t_pow(T, t_uniformizer(T), -k));
  }
  TElem cur = a;
  long left = k;
  // u3 = t^e / ell is a unit; 1/t^e = u3^(-1)/ell.
  TElem u3 = t_pow(T, t_uniformizer(T), T.e);
  for (BigInt& x : u3) {
    if (x % T.ell != 0) throw InvariantViolation("t_shift_down: t^e not divisible by ell");
    x /= T.ell;
  }
  TElem u3inv = t_inv_unit(T, u3);
  while (left >= T.e) {
    // x / t^e = (x / ell) * u3^(-1).  Dividing coefficients by ell loses the
    // top digit; entries stay reduced mod ell^N (acceptable slack).
    for (const BigInt& x : cur)
      if (x % T.ell != 0) throw PrecisionError("t_shift_down: not divisible");
    for (BigInt& x : cur) x /= T.ell;
    cur = t_mul(T, cur, u3inv);
    left -= T.e;
  }
  while (left > 0) {
    // x / t = x * t^(e-1) / t^e
    TElem up = t_mul(T, cur, t_pow(T, t_uniformizer(T), T.e - 1));
    for (const BigInt& x : up)
      if (x % T.ell != 0) throw PrecisionError("t_shift_down: not divisible by t");
    for (BigInt& x : up) x /= T.ell;
    cur = t_mul(T, up, u3inv);
    left -= 1;
  }
  return cur;
}

TElem t_scale_rat(const LocalField& T, const TElem& a, const BigRat& s) {
  BigInt num = rat_num(s), den = rat_den(s);
  long vd = 0;
  while (den % T.ell == 0) {
    den /= T.ell;
    ++vd;
  }
  long vn = 0;
  BigInt n2 = num;
  if (n2 != 0)
    while (n2 % T.ell == 0) {
      n2 /= T.ell;
      ++vn;
    }
  TElem r = a;
  for (BigInt& x : r) x = mod_pos(x * n2 * mod_inverse(den, T.modulus), T.modulus);
  long shift = vn - vd;
  if (shift > 0) {
    TElem lp = t_from_int(T, int_pow(BigInt(T.ell), (unsigned long)shift));
    r = t_mul(T, r, lp);
  } else if (shift < 0) {
    r = t_shift_down(T, r, (long)(-shift) * T.e);
  }
  return r;
}

TElem t_teichmuller(const LocalField& T, const TElem& unit) {
  if (t_val(T, unit) != 0) throw InputError("teichmuller: not a unit");
  BigInt q = T.residue.order();
  TElem x = unit;
  // x -> x^q converges to the Teichmueller representative.
  long iters = T.N + 2;
  for (long i = 0; i < iters; ++i) {
    TElem nx = t_pow(T, x, q);
    if (nx == x) break;
    x = nx;
  }
  return x;
}

TElem t_eval_poly(const LocalField& T, const std::vector<BigInt>& poly, const TElem& x) {
  TElem r = t_zero(T);
  for (long i = (long)poly.size() - 1; i >= 0; --i) {
    r = t_mul(T, r, x);
    r[0] = mod_pos(r[0] + poly[i], T.modulus);
  }
  return r;
}

namespace {

// Multiplication matrix of a on the tower basis, entries mod ell^N.
ZMat mult_matrix(const LocalField& T, const TElem& a) {
  int n = T.dim();
  ZMat M(n, n);
  for (int j = 0; j < n; ++j) {
    TElem bj(n, 0);
    bj[j] = 1;
    TElem col = t_mul(T, a, bj);
    for (int i = 0; i < n; ++i) M.at(i, j) = col[i];
  }
  return M;
}

// det mod ell^N via valuation pivoting; returns (valuation, unit) with the
// convention that valuation N means zero at this precision.
std::pair<long, BigInt> det_mod(const LocalField& T, ZMat M) {
  int n = (int)M.rows;
  long ell = T.ell;
  const BigInt& mod = T.modulus;
  long vtot = 0;
  BigInt unit = 1;
  auto val_of = [&](const BigInt& x) -> long {
    if (x == 0) return T.N;
    long v = 0;
    BigInt t = x;
    while (t % ell == 0 && v < T.N) {
      t /= ell;
      ++v;
    }
    return v;
  };
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    long best = T.N;
    int pi = -1, pj = -1;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        long v = val_of(M.at(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0 || best >= T.N) return {T.N, 0};
    if (pi != k) {
      for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(pi, j));
      sign = -sign;
    }
    if (pj != k) {
      for (int i = 0; i < n; ++i) std::swap(M.at(i, k), M.at(i, pj));
      sign = -sign;
    }
    vtot += best;
    BigInt pv = int_pow(BigInt(ell), (unsigned long)best);
    BigInt u = M.at(k, k) / pv;
    unit = mod_pos(unit * u, mod);
    BigInt uinv = mod_inverse(u, mod);
    for (int i = k + 1; i < n; ++i) {
      if (M.at(i, k) == 0) continue;
      BigInt q = mod_pos((M.at(i, k) / pv) * uinv, mod);
      if (q == 0) continue;
      for (int j = k; j < n; ++j) M.at(i, j) = mod_pos(M.at(i, j) - q * M.at(k, j), mod);
    }
  }
  if (sign < 0) unit = mod_pos(-unit, mod);
  return {vtot, unit};
}

}  // namespace

PadicNumber t_norm(const LocalField& T, const TElem& a) {
  auto [v, u] = det_mod(T, mult_matrix(T, a));
  if (v >= T.N) return PadicNumber::zero(T.ell, T.N);
  return PadicNumber::make(T.ell, v, u, (int)(T.N - v));
}

PadicNumber t_trace(const LocalField& T, const TElem& a) {
  ZMat M = mult_matrix(T, a);
  BigInt tr = 0;
  for (int i = 0; i < T.dim(); ++i) tr = mod_pos(tr + M.at(i, i), T.modulus);
  return tr == 0 ? PadicNumber::zero(T.ell, T.N)
                 : PadicNumber::from_integer(tr, T.ell, (int)T.N).truncated((int)T.N);
}

std::vector<BigInt> t_charpoly(const LocalField& T, const TElem& a) {
  // Exact integer characteristic polynomial of the lifted multiplication
  // matrix (entries in [0, ell^N)), reduced mod ell^N afterwards.
  ZMat M = mult_matrix(T, a);
  int n = T.dim();
  // Interpolate det(xI - M) at x = 0..n.
  std::vector<BigRat> xs, ys;
  for (int k = 0; k <= n; ++k) {
    ZMat Mk(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Mk.at(i, j) = (i == j ? BigInt(k) : BigInt(0)) - M.at(i, j);
    xs.push_back(BigRat(k));
    ys.push_back(BigRat(det(Mk)));
  }
  QMat V(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    BigRat p(1);
    for (int j = 0; j <= n; ++j) {
      V.at(i, j) = p;
      p *= xs[i];
    }
  }
  auto coeffs = solve(V, ys);
  if (!coeffs) throw InvariantViolation("charpoly interpolation failed");
  std::vector<BigInt> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (rat_den((*coeffs)[i]) != 1) throw InvariantViolation("charpoly: non-integer coeff");
    out[i] = mod_pos(rat_num((*coeffs)[i]), T.modulus);
  }
  out[n] = 1;
  return out;
}

namespace {

TElem digit_times_level(const LocalField& T, const Fq& digit, long level) {
  // representative of digit * pi^level
  TElem d = t_from_fq(T, digit);
  long j = level / T.e, i = level % T.e;
  TElem scale = t_from_int(T, int_pow(BigInt(T.ell), (unsigned long)j));
  if (i > 0) scale = t_mul(T, scale, t_pow(T, t_uniformizer(T), i));
  return t_mul(T, d, scale);
}

// Division garbage from t_shift_down corrupts the top coefficient digits,
// so full working precision is not reachable; refine until the residual
// stalls and report the achieved level.
long newton_refine(const LocalField& T, const std::vector<BigInt>& poly,
                   const std::vector<BigInt>& dpoly, TElem& x) {
  long prev = -1;
  for (int iter = 0; iter < 64; ++iter) {
    TElem fx = t_eval_poly(T, poly, x);
    long vf = t_val(T, fx);
    if (vf >= T.mprec() || vf <= prev) return vf;
    prev = vf;
    TElem dfx = t_eval_poly(T, dpoly, x);
    long vd = t_val(T, dfx);
    if (vf <= 2 * vd) return vf;
    TElem du = t_shift_down(T, dfx, vd);
    TElem q = t_mul(T, t_shift_down(T, fx, vd), t_inv_unit(T, du));
    x = t_sub(T, x, q);
  }
  return prev;
}

}  // namespace

std::vector<TElem> t_roots(const LocalField& T, const std::vector<BigInt>& poly) {
  std::vector<BigInt> dpoly;
  for (size_t i = 1; i < poly.size(); ++i) dpoly.push_back(poly[i] * (long)i);
  std::vector<TElem> roots;
  long max_depth = std::min<long>(T.mprec() / 2, 40 * T.e);
  long accept = (T.mprec() * 2) / 3;
  BigInt q = T.residue.order();
  long nodes = 0;

  std::function<void(TElem, long)> dfs = [&](TElem x, long k) {
    if (++nodes > 200000) throw PrecisionError("t_roots: search exploded");
    TElem fx = t_eval_poly(T, poly, x);
    long vf = t_val(T, fx);
    if (vf >= accept) {
      roots.push_back(x);
      return;
    }
    TElem dfx = t_eval_poly(T, dpoly, x);
    long vd = t_val(T, dfx);
    if (vf > 2 * vd) {
      TElem r = x;
      long got = newton_refine(T, poly, dpoly, r);
      if (got >= accept) {
        roots.push_back(r);
        return;
      }
      throw PrecisionError("t_roots: refinement stalled below target");
    }
    if (k > max_depth) throw PrecisionError("t_roots: refinement depth exceeded");
    for (BigInt idx = 0; idx < q; ++idx) {
      Fq digit = fq_from_index(T.residue, idx);
      TElem x2 = t_add(T, x, digit_times_level(T, digit, k));
      TElem f2 = t_eval_poly(T, poly, x2);
      if (t_val(T, f2) >= k + 1) dfs(x2, k + 1);
    }
  };

  // Seed with residue digits at level 0.
  for (BigInt idx = 0; idx < q; ++idx) {
    Fq digit = fq_from_index(T.residue, idx);
    TElem x0 = t_from_fq(T, digit);
    TElem f0 = t_eval_poly(T, poly, x0);
    if (t_val(T, f0) >= 1) dfs(x0, 1);
  }

  // Deduplicate (distinct roots separate well below working precision).
  std::vector<TElem> unique_roots;
  long sep = T.mprec() / 2;
  for (const TElem& r : roots) {
    bool dup = false;
    for (const TElem& s : unique_roots)
      if (t_val(T, t_sub(T, r, s)) >= sep) {
        dup = true;
        break;
      }
    if (!dup) unique_roots.push_back(r);
  }
  std::sort(unique_roots.begin(), unique_roots.end());
  return unique_roots;
}

LocalRoots t_mu_ell_part(const LocalField& T) {
  LocalRoots out;
  // Cyclotomic polynomial of ell^(a+1): sum_{i<ell} x^(i*ell^a).
  int a = 0;
  TElem zeta;
  while (true) {
    long step = (long)int_pow(BigInt(T.ell), (unsigned long)a);
    std::vector<BigInt> phi((size_t)(step * (T.ell - 1) + 1), 0);
    for (long i = 0; i < T.ell; ++i)
      if (i * step < (long)phi.size()) phi[i * step] = 1;
    // phi has degree step*(ell-1); check solvability cheaply by degree.
    if ((long)T.dim() % ((T.ell - 1) * step) != 0) break;
    auto roots = t_roots(T, phi);
    if (roots.empty()) break;
    ++a;
    zeta = roots.front();
    // Prefer a deterministic primitive root: any root of the cyclotomic
    // polynomial is primitive.
    if (a > 6) break;
  }
  out.a = a;
  if (a >= 1) out.zeta = zeta;
  return out;
}

namespace {

// unit u3 = t^e / ell
TElem unit_u3(const LocalField& T) {
  TElem te = t_pow(T, t_uniformizer(T), T.e);
  for (BigInt& x : te) {
    if (x % T.ell != 0) throw InvariantViolation("u3: t^e not divisible by ell");
    x /= T.ell;
  }
  return te;
}

}  // namespace

bool t_is_lth_power(const LocalField& T, const TElem& x, long ell_shift) {
  long ell = T.ell;
  long v = t_val(T, x);
  if (v >= T.mprec()) throw InputError("t_is_lth_power: zero input");
  long vtot = v + T.e * ell_shift;
  if (mod_pos(BigInt(vtot), ell) != 0) return false;
  TElem u = t_shift_down(T, x, v);
  if (ell_shift != 0) {
    TElem u3 = unit_u3(T);
    TElem adj = t_pow(T, u3, -ell_shift);  // ell^s = t^{es} * u3^{-s}
    u = t_mul(T, u, adj);
  }
  // Teichmueller part is ell-divisible (torsion order q-1 is prime to ell).
  TElem omega = t_teichmuller(T, u);
  TElem w = t_mul(T, u, t_inv_unit(T, omega));
  // w is now a principal unit; strip levels.
  long kc_num = (long)T.e * ell;
  long kc_den = ell - 1;  // critical level e*ell/(ell-1)
  long guard = 0;
  while (true) {
    if (++guard > 4 * T.mprec()) throw InvariantViolation("t_is_lth_power: no progress");
    TElem wm1 = t_sub(T, w, t_one(T));
    long k = t_val(T, wm1);
    if (k >= T.mprec()) return true;  // w == 1 at precision
    if (k * kc_den > kc_num) return true;
    if (k * kc_den < kc_num) {
      if (k % ell != 0) return false;
      // leading coefficient c: solve delta^ell = c in F_q via Frobenius.
      TElem lead = t_shift_down(T, wm1, k);
      Fq c = t_residue(T, lead);
      Fq delta = fq_pow(T.residue, c, T.residue.order() / ell);
      TElem adj = t_add(T, t_one(T), digit_times_level(T, delta, k / ell));
      w = t_mul(T, w, t_inv_unit(T, t_pow(T, adj, ell)));
      TElem check = t_sub(T, w, t_one(T));
      if (t_val(T, check) <= k) throw InvariantViolation("t_is_lth_power: strip stalled");
      continue;
    }
    // k == critical level: Artin-Schreier layer delta^ell + u3bar*delta = c.
    long j = kc_num / kc_den - T.e;  // = e/(ell-1)
    TElem lead = t_shift_down(T, wm1, k);
    Fq c = t_residue(T, lead);
    Fq u3bar = t_residue(T, unit_u3(T));
    bool solved = false;
    BigInt q = T.residue.order();
    for (BigInt idx = 0; idx < q; ++idx) {
      Fq d = fq_from_index(T.residue, idx);
      Fq lhs =
          fq_add(T.residue, fq_pow(T.residue, d, ell), fq_mul(T.residue, u3bar, d));
      if (fq_eq(lhs, c)) {
        TElem adj = t_add(T, t_one(T), digit_times_level(T, d, j));
        w = t_mul(T, w, t_inv_unit(T, t_pow(T, adj, ell)));
        solved = true;
        break;
      }
    }
    if (!solved) return false;
    TElem check = t_sub(T, w, t_one(T));
    if (t_val(T, check) <= k) throw InvariantViolation("t_is_lth_power: AS strip stalled");
  }
}

bool t_is_lth_power_exhaustive(const LocalField& T, const TElem& x) {
  long v = t_val(T, x);
  if (v % T.ell != 0) return false;
  TElem u = t_shift_down(T, x, v);
  long m = (long)(T.e * T.ell) / (T.ell - 1) + 2 * T.e + 1;  // comfortably past critical
  // compare modulo m-th uniformizer power: x ~ y iff val(x-y) >= m
  BigInt q = T.residue.order();
  BigInt count = 1;
  for (long i = 0; i < m; ++i) count *= q;
  if (count > 3000000) throw CapacityError("exhaustive power test too large");
  // enumerate units mod m: digits at levels 0..m-1, level-0 digit nonzero
  std::vector<Fq> digits(m, fq_zero(T.residue));
  bool found = false;
  std::function<void(long, TElem)> rec = [&](long lvl, TElem acc) {
    if (found) return;
    if (lvl == m) {
      TElem cube = t_pow(T, acc, T.ell);
      if (t_val(T, t_sub(T, cube, u)) >= m) found = true;
      return;
    }
    for (BigInt idx = 0; idx < q; ++idx) {
      Fq d = fq_from_index(T.residue, idx);
      if (lvl == 0 && fq_is_zero(d)) continue;
      rec(lvl + 1, t_add(T, acc, digit_times_level(T, d, lvl)));
    }
  };
  rec(0, t_zero(T));
  return found;
}

namespace {

struct Block {
  std::vector<BigInt> poly;  // monic block mod ell^N
  long f0;                   // degree of the repeated residue factor
  long e0;                   // multiplicity mod ell
};

std::vector<LocalFactorPlace> split_block(const Block& blk, long ell, long N, bool allow_wild) {
  long d = (long)blk.poly.size() - 1;
  std::vector<LocalFactorPlace> places;
  long covered = 0;

  auto try_tower = [&](int e, int fr) -> void {
    long classes = 1;
    if (e >= 2) {
      BigInt q1 = int_pow(BigInt(ell), (unsigned long)fr) - 1;
      classes = (long)gcd(BigInt(e), q1);
    }
    for (long cls = 0; cls < classes && covered < d; ++cls) {
      LocalField T = e == 1 ? make_unramified(ell, fr, N) : make_tame(ell, fr, e, cls, N);
      std::vector<TElem> roots;
      try {
        roots = t_roots(T, blk.poly);
      } catch (const PrecisionError&) {
        continue;
      }
      for (const TElem& r : roots) {
        if (covered >= d) break;
        bool known = false;
        for (const auto& pl : places) {
          TElem val = t_eval_poly(T, pl.factor, r);
          if (t_val(T, val) >= T.mprec() / 2) {
            known = true;
            break;
          }
        }
        if (known) continue;
        LocalFactorPlace pl;
        pl.e = e;
        pl.f = fr;
        pl.T = T;
        pl.root = r;
        pl.factor = t_charpoly(T, r);
        if ((long)pl.factor.size() - 1 != e * fr) continue;  // root in a proper subfield
        places.push_back(pl);
        covered += e * fr;
      }
    }
  };

  // Candidate degrees ascending; residue degree must be a multiple of f0.
  for (long deg = blk.f0; deg <= d && covered < d; ++deg) {
    if (deg % blk.f0 != 0 || d % 1 != 0) continue;
    for (int e = 1; e <= deg && covered < d; ++e) {
      if (deg % e != 0) continue;
      int fr = (int)(deg / e);
      if (fr % blk.f0 != 0) continue;
      if (e == 1 && fr != blk.f0) continue;  // unramified factor reduces to g itself
      if (e == 1 && blk.e0 == 1 && fr == blk.f0) {
        // whole block unramified
      }
      if (e % ell == 0) {
        if (!allow_wild) continue;
        // Wildly ramified: search Eisenstein models with small coefficients.
        BigInt q1 = int_pow(BigInt(ell), (unsigned long)fr);
        (void)q1;
        long range = ell;  // digits for each Eisenstein coefficient
        std::vector<long> digits((size_t)e, 0);
        std::function<void(long)> enum_eis = [&](long pos) {
          if (covered >= d) return;
          if (pos == e) {
            if (digits[0] % ell == 0) return;  // constant must have valuation exactly 1
            std::vector<std::vector<BigInt>> E(e + 1);
            for (int i = 0; i <= e; ++i) E[i].assign(fr, 0);
            E[e][0] = 1;
            for (int i = 0; i < e; ++i) E[i][0] = mod_pos(BigInt(-ell) * digits[i], int_pow(BigInt(ell), (unsigned long)N));
            LocalField T;
            try {
              T = make_with_eisenstein(ell, fr, E, N);
            } catch (...) {
              return;
            }
            std::vector<TElem> roots;
            try {
              roots = t_roots(T, blk.poly);
            } catch (const PrecisionError&) {
              return;
            }
            for (const TElem& r : roots) {
              if (covered >= d) break;
              bool known = false;
              for (const auto& pl : places) {
                TElem val = t_eval_poly(T, pl.factor, r);
                if (t_val(T, val) >= T.mprec() / 2) {
                  known = true;
                  break;
                }
              }
              if (known) continue;
              LocalFactorPlace pl;
              pl.e = e;
              pl.f = fr;
              pl.T = T;
              pl.root = r;
              pl.factor = t_charpoly(T, r);
              if ((long)pl.factor.size() - 1 != e * fr) continue;
              places.push_back(pl);
              covered += e * fr;
            }
            return;
          }
          for (long v = 0; v < range * ell; ++v) {
            digits[pos] = v;
            enum_eis(pos + 1);
            if (covered >= d) return;
          }
        };
        enum_eis(0);
        continue;
      }
      try_tower(e, fr);
    }
  }
  if (covered != d) {
    throw CapacityError("local_factor: block not fully split (degree " + std::to_string(d) +
                        ", covered " + std::to_string(covered) + ")");
  }
  return places;
}

}  // namespace

std::vector<LocalFactorPlace> local_factor(const std::vector<BigInt>& poly, long ell, long N,
                                           bool allow_wild) {
  if (poly.empty() || poly.back() != 1) throw InputError("local_factor: polynomial must be monic");
  FqCtx fp = FqCtx::prime_field(ell);
  FqPoly fbar = fqp_from_int_coeffs(fp, poly);
  if (fqp_deg(fbar) != (long)poly.size() - 1)
    throw InputError("local_factor: leading coefficient vanishes mod ell");
  auto factors = fqp_factor(fp, fbar);
  // Build block polynomials g_i^{e_i} mod ell, then lift.
  std::vector<std::vector<BigInt>> blocks_mod_p;
  std::vector<std::pair<long, long>> block_shape;  // (f0, e0)
  for (const auto& [g, mult] : factors) {
    FqPoly blk{fq_one(fp)};
    for (long i = 0; i < mult; ++i) blk = fqp_mul(fp, blk, g);
    std::vector<BigInt> coeffs;
    for (const Fq& cf : blk) coeffs.push_back(cf[0]);
    blocks_mod_p.push_back(coeffs);
    block_shape.push_back({fqp_deg(g), mult});
  }
  auto lifted = hensel_lift(poly, ell, blocks_mod_p, N);
  std::vector<LocalFactorPlace> out;
  for (size_t b = 0; b < lifted.size(); ++b) {
    Block blk;
    blk.poly = lifted[b].c;
    blk.poly.resize((size_t)((long)blocks_mod_p[b].size())); // monic degree of the block
    // ensure monic representation of expected degree
    long bd = (long)blocks_mod_p[b].size() - 1;
    blk.poly = lifted[b].c;
    if ((long)blk.poly.size() - 1 != bd) blk.poly.resize(bd + 1, 0);
    blk.poly[bd] = 1;
    blk.f0 = block_shape[b].first;
    blk.e0 = block_shape[b].second;
    for (auto& pl : split_block(blk, ell, N, allow_wild)) out.push_back(std::move(pl));
  }
  // Deterministic order: by (e, f, factor coefficients).
  std::sort(out.begin(), out.end(), [](const LocalFactorPlace& a, const LocalFactorPlace& b) {
    if (a.e * a.f != b.e * b.f) return a.e * a.f < b.e * b.f;
    if (a.e != b.e) return a.e < b.e;
    return a.factor < b.factor;
  });
  long total = 0;
  for (const auto& pl : out) total += pl.e * pl.f;
  if (total != (long)poly.size() - 1)
    throw InvariantViolation("local_factor: degrees do not sum to deg f");
  return out;
}

}  // namespace logcap
