#include "logcap/fqpoly.hpp"

#include <algorithm>

namespace logcap {

namespace {

inline long addm(long a, long b, long p) {
  long s = a + b;
  return s >= p ? s - p : s;
}
inline long subm(long a, long b, long p) {
  long s = a - b;
  return s < 0 ? s + p : s;
}
inline long mulm(long a, long b, long p) { return (long)((__int128)a * b % p); }

long invm(long a, long p) {
  long t = 0, newt = 1, r = p, newr = a % p;
  if (newr < 0) newr += p;
  while (newr != 0) {
    long q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw InputError("fq: not invertible");
  return t < 0 ? t + p : t;
}

std::vector<long> fp_poly_mulmod(const std::vector<long>& a, const std::vector<long>& b,
                                 const std::vector<long>& h, long p) {
  int f = (int)h.size() - 1;
  std::vector<long> prod(2 * f - 1, 0);
  for (int i = 0; i < f; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < f; ++j)
      if (b[j]) prod[i + j] = addm(prod[i + j], mulm(a[i], b[j], p), p);
  }
  // reduce mod h (monic)
  for (int d = 2 * f - 2; d >= f; --d) {
    long c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (int j = 0; j < f; ++j)
      prod[d - f + j] = subm(prod[d - f + j], mulm(c, h[j], p), p);
  }
  prod.resize(f);
  return prod;
}

bool fp_poly_irreducible(const std::vector<long>& h, long p);

}  // namespace

FqCtx FqCtx::prime_field(long p) {
  FqCtx c;
  c.p = p;
  c.f = 1;
  c.h = {0, 1};
  return c;
}

FqCtx FqCtx::with_modulus(long p, const std::vector<long>& h) {
  FqCtx c;
  c.p = p;
  c.f = (int)h.size() - 1;
  c.h = h;
  for (auto& v : c.h) v = ((v % p) + p) % p;
  c.h.back() = 1;
  if (c.f > 1 && !fp_poly_irreducible(c.h, p)) throw InputError("FqCtx: reducible modulus");
  return c;
}

FqCtx FqCtx::extension(long p, int f) {
  if (f == 1) return prime_field(p);
  // Deterministic search: x^f + a x + b, then general small coefficients.
  for (long b = 1; b < p; ++b)
    for (long a = 0; a < p; ++a) {
      std::vector<long> h(f + 1, 0);
      h[f] = 1;
      h[1] = a;
      h[0] = b;
      if (fp_poly_irreducible(h, p)) return with_modulus(p, h);
    }
  // Fallback: enumerate all monic polynomials.
  std::vector<long> h(f + 1, 0);
  h[f] = 1;
  std::function<bool(int)> rec = [&](int idx) -> bool {
    if (idx == f) return fp_poly_irreducible(h, p);
    for (long v = 0; v < p; ++v) {
      h[idx] = v;
      if (rec(idx + 1)) return true;
    }
    h[idx] = 0;
    return false;
  };
  if (rec(0)) return with_modulus(p, h);
  throw InvariantViolation("FqCtx: no irreducible modulus found");
}

Fq fq_zero(const FqCtx& c) { return Fq(c.f, 0); }
Fq fq_one(const FqCtx& c) {
  Fq v(c.f, 0);
  v[0] = 1 % c.p;
  return v;
}
Fq fq_from_int(const FqCtx& c, long x) {
  Fq v(c.f, 0);
  v[0] = ((x % c.p) + c.p) % c.p;
  return v;
}
Fq fq_gen(const FqCtx& c) {
  Fq v(c.f, 0);
  if (c.f == 1)
    v[0] = 0;
  else
    v[1] = 1;
  return v;
}
bool fq_is_zero(const Fq& a) {
  for (long v : a)
    if (v) return false;
  return true;
}
bool fq_eq(const Fq& a, const Fq& b) { return a == b; }

Fq fq_add(const FqCtx& c, const Fq& a, const Fq& b) {
  Fq r(c.f);
  for (int i = 0; i < c.f; ++i) r[i] = addm(a[i], b[i], c.p);
  return r;
}
Fq fq_sub(const FqCtx& c, const Fq& a, const Fq& b) {
  Fq r(c.f);
  for (int i = 0; i < c.f; ++i) r[i] = subm(a[i], b[i], c.p);
  return r;
}
Fq fq_neg(const FqCtx& c, const Fq& a) {
  Fq r(c.f);
  for (int i = 0; i < c.f; ++i) r[i] = a[i] ? c.p - a[i] : 0;
  return r;
}
Fq fq_mul(const FqCtx& c, const Fq& a, const Fq& b) {
  if (c.f == 1) return {mulm(a[0], b[0], c.p)};
  return fp_poly_mulmod(a, b, c.h, c.p);
}
Fq fq_pow(const FqCtx& c, Fq a, BigInt e) {
  if (e < 0) {
    a = fq_inv(c, a);
    e = -e;
  }
  Fq r = fq_one(c);
  while (e > 0) {
    if ((e & 1) != 0) r = fq_mul(c, r, a);
    a = fq_mul(c, a, a);
    e >>= 1;
  }
  return r;
}
Fq fq_inv(const FqCtx& c, const Fq& a) {
  if (fq_is_zero(a)) throw InputError("fq_inv(0)");
  if (c.f == 1) return {invm(a[0], c.p)};
  return fq_pow(c, a, c.order() - 2);
}
Fq fq_from_index(const FqCtx& c, BigInt idx) {
  Fq v(c.f, 0);
  for (int i = 0; i < c.f; ++i) {
    v[i] = (long)(idx % c.p);
    idx /= c.p;
  }
  return v;
}

FqPoly fqp_from_int_coeffs(const FqCtx& c, const std::vector<BigInt>& coeffs) {
  FqPoly a;
  a.reserve(coeffs.size());
  for (const BigInt& x : coeffs) a.push_back(fq_from_int(c, (long)mod_pos(x, c.p)));
  fqp_trim(a);
  return a;
}

void fqp_trim(FqPoly& a) {
  while (!a.empty() && fq_is_zero(a.back())) a.pop_back();
}
long fqp_deg(const FqPoly& a) { return (long)a.size() - 1; }
bool fqp_is_zero(const FqPoly& a) { return a.empty(); }

FqPoly fqp_add(const FqCtx& c, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), fq_zero(c));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = fq_add(c, r[i], b[i]);
  fqp_trim(r);
  return r;
}
FqPoly fqp_sub(const FqCtx& c, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), fq_zero(c));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = fq_sub(c, r[i], b[i]);
  fqp_trim(r);
  return r;
}
FqPoly fqp_mul(const FqCtx& c, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, fq_zero(c));
  for (size_t i = 0; i < a.size(); ++i) {
    if (fq_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!fq_is_zero(b[j])) r[i + j] = fq_add(c, r[i + j], fq_mul(c, a[i], b[j]));
  }
  fqp_trim(r);
  return r;
}
FqPoly fqp_scale(const FqCtx& c, const FqPoly& a, const Fq& s) {
  FqPoly r = a;
  for (auto& x : r) x = fq_mul(c, x, s);
  fqp_trim(r);
  return r;
}

void fqp_divrem(const FqCtx& c, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
  if (b.empty()) throw InputError("fqp_divrem by zero");
  r = a;
  q.clear();
  long db = fqp_deg(b);
  Fq lead_inv = fq_inv(c, b.back());
  if (fqp_deg(r) >= db) q.assign(fqp_deg(r) - db + 1, fq_zero(c));
  while (fqp_deg(r) >= db) {
    long d = fqp_deg(r) - db;
    Fq f = fq_mul(c, r.back(), lead_inv);
    q[d] = f;
    for (long i = 0; i <= db; ++i)
      r[d + i] = fq_sub(c, r[d + i], fq_mul(c, f, b[i]));
    fqp_trim(r);
  }
  fqp_trim(q);
}
FqPoly fqp_mod(const FqCtx& c, const FqPoly& a, const FqPoly& b) {
  FqPoly q, r;
  fqp_divrem(c, a, b, q, r);
  return r;
}
FqPoly fqp_gcd(const FqCtx& c, FqPoly a, FqPoly b) {
  while (!b.empty()) {
    FqPoly r = fqp_mod(c, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : fqp_monic(c, a);
}
FqPoly fqp_monic(const FqCtx& c, const FqPoly& a) {
  if (a.empty()) return a;
  return fqp_scale(c, a, fq_inv(c, a.back()));
}
FqPoly fqp_derivative(const FqCtx& c, const FqPoly& a) {
  FqPoly r;
  for (size_t i = 1; i < a.size(); ++i) {
    Fq k = fq_from_int(c, (long)(i % (size_t)c.p));
    r.push_back(fq_mul(c, a[i], k));
  }
  fqp_trim(r);
  return r;
}
FqPoly fqp_powmod(const FqCtx& c, FqPoly base, BigInt e, const FqPoly& mod) {
  FqPoly r{fq_one(c)};
  base = fqp_mod(c, base, mod);
  while (e > 0) {
    if ((e & 1) != 0) r = fqp_mod(c, fqp_mul(c, r, base), mod);
    base = fqp_mod(c, fqp_mul(c, base, base), mod);
    e >>= 1;
  }
  return r;
}
Fq fqp_eval(const FqCtx& c, const FqPoly& a, const Fq& x) {
  Fq r = fq_zero(c);
  for (long i = fqp_deg(a); i >= 0; --i) r = fq_add(c, fq_mul(c, r, x), a[i]);
  return r;
}

namespace {

// Distinct-degree then equal-degree (Cantor-Zassenhaus) split of a monic
// squarefree polynomial.
void fqp_edf(const FqCtx& c, const FqPoly& f, long d, std::vector<FqPoly>& out, Rng& rng) {
  if (fqp_deg(f) == d) {
    out.push_back(f);
    return;
  }
  BigInt q = c.order();
  BigInt e = (int_pow(q, (unsigned long)d) - 1) / 2;
  while (true) {
    FqPoly a(fqp_deg(f), fq_zero(c));
    for (auto& x : a) x = fq_from_index(c, BigInt(rng.next()) % q);
    fqp_trim(a);
    if (fqp_deg(a) < 1) continue;
    FqPoly g = fqp_gcd(c, a, f);
    if (fqp_deg(g) > 0 && fqp_deg(g) < fqp_deg(f)) {
      fqp_edf(c, g, d, out, rng);
      FqPoly q2, r2;
      fqp_divrem(c, f, g, q2, r2);
      fqp_edf(c, q2, d, out, rng);
      return;
    }
    FqPoly b = fqp_powmod(c, a, e, f);
    b = fqp_sub(c, b, {fq_one(c)});
    g = fqp_gcd(c, b, f);
    if (fqp_deg(g) > 0 && fqp_deg(g) < fqp_deg(f)) {
      fqp_edf(c, g, d, out, rng);
      FqPoly q2, r2;
      fqp_divrem(c, f, g, q2, r2);
      fqp_edf(c, q2, d, out, rng);
      return;
    }
  }
}

void fqp_factor_squarefree(const FqCtx& c, FqPoly f, std::vector<FqPoly>& out, Rng& rng) {
  f = fqp_monic(c, f);
  FqPoly x{fq_zero(c), fq_one(c)};
  FqPoly xq = x;
  long d = 0;
  while (fqp_deg(f) >= 1) {
    ++d;
    if (2 * d > fqp_deg(f)) {
      out.push_back(f);
      return;
    }
    xq = fqp_powmod(c, xq, c.order(), f);
    FqPoly g = fqp_gcd(c, fqp_sub(c, xq, x), f);
    if (fqp_deg(g) > 0) {
      fqp_edf(c, g, d, out, rng);
      FqPoly q2, r2;
      fqp_divrem(c, f, g, q2, r2);
      f = q2;
      xq = fqp_mod(c, xq, f);
    }
  }
}

bool fp_poly_irreducible(const std::vector<long>& h, long p) {
  FqCtx c = FqCtx::prime_field(p);
  FqPoly f;
  for (long v : h) f.push_back({((v % p) + p) % p});
  fqp_trim(f);
  return fqp_is_irreducible(c, f);
}

}  // namespace

std::vector<std::pair<FqPoly, long>> fqp_factor(const FqCtx& c, const FqPoly& a) {
  if (fqp_deg(a) < 1) throw InputError("fqp_factor: constant polynomial");
  std::vector<std::pair<FqPoly, long>> result;
  // Deterministic seed from the polynomial.
  std::uint64_t seed = 0x1234567u;
  for (const Fq& co : a)
    for (long v : co) seed = seed * 1099511628211ULL + (std::uint64_t)v + 1;
  Rng rng(seed);

  // Squarefree decomposition (p odd; handles p-th power parts).
  FqPoly f = fqp_monic(c, a);
  long mult_base = 1;
  std::vector<std::pair<FqPoly, long>> sq_parts;  // (squarefree, multiplicity)
  std::function<void(FqPoly, long)> sqfree = [&](FqPoly g, long m) {
    FqPoly gp = fqp_derivative(c, g);
    if (fqp_is_zero(gp)) {
      // g = h(x^p): take p-th root of coefficients.
      FqPoly h;
      for (size_t i = 0; i < g.size(); i += (size_t)c.p) {
        // coefficient^(q/p) is the p-th root in F_q
        h.push_back(fq_pow(c, g[i], c.order() / c.p));
      }
      sqfree(h, m * c.p);
      return;
    }
    FqPoly w = fqp_gcd(c, g, gp);
    FqPoly q2, r2;
    fqp_divrem(c, g, w, q2, r2);  // q2 squarefree part
    long k = 1;
    while (fqp_deg(q2) >= 1) {
      FqPoly y = fqp_gcd(c, q2, w);
      FqPoly factor_part, rr;
      fqp_divrem(c, q2, y, factor_part, rr);
      if (fqp_deg(factor_part) >= 1) sq_parts.push_back({factor_part, m * k});
      FqPoly w2, rr2;
      fqp_divrem(c, w, y, w2, rr2);
      w = w2;
      q2 = y;
      ++k;
    }
    if (fqp_deg(w) >= 1) sqfree(w, m);
  };
  sqfree(f, mult_base);

  for (auto& [part, mult] : sq_parts) {
    std::vector<FqPoly> irr;
    fqp_factor_squarefree(c, part, irr, rng);
    for (auto& g : irr) result.push_back({fqp_monic(c, g), mult});
  }
  // Deterministic order.
  std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
    if (fqp_deg(x.first) != fqp_deg(y.first)) return fqp_deg(x.first) < fqp_deg(y.first);
    return x.first < y.first;
  });
  return result;
}

std::vector<Fq> fqp_roots(const FqCtx& c, const FqPoly& a) {
  std::vector<Fq> roots;
  for (const auto& [g, m] : fqp_factor(c, a)) {
    if (fqp_deg(g) == 1) {
      // x + g0 = 0
      roots.push_back(fq_neg(c, g[0]));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool fqp_is_irreducible(const FqCtx& c, const FqPoly& a) {
  long n = fqp_deg(a);
  if (n <= 0) return false;
  if (n == 1) return true;
  FqPoly x{fq_zero(c), fq_one(c)};
  // x^(q^n) == x mod a and gcd(x^(q^(n/r)) - x, a) == 1 for prime r | n.
  FqPoly xq = x;
  std::vector<FqPoly> powers(n + 1);
  for (long i = 1; i <= n; ++i) {
    xq = fqp_powmod(c, xq, c.order(), a);
    powers[i] = xq;
  }
  if (!fqp_is_zero(fqp_mod(c, fqp_sub(c, powers[n], x), a))) return false;
  for (long r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    bool isp = true;
    for (long s = 2; s * s <= r; ++s)
      if (r % s == 0) isp = false;
    if (!isp) continue;
    FqPoly g = fqp_gcd(c, fqp_sub(c, powers[n / r], x), a);
    if (fqp_deg(g) != 0) return false;
  }
  return true;
}

FpMat FpMat::mul(const FpMat& o) const {
  FpMat r(p, rows, o.cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      long v = at(i, k);
      if (!v) continue;
      for (long j = 0; j < o.cols; ++j)
        r.at(i, j) = (long)(((__int128)r.at(i, j) + (__int128)v * o.at(k, j)) % p);
    }
  return r;
}

long fp_rank(FpMat m) {
  long p = m.p, r = 0;
  for (long c = 0; c < m.cols && r < m.rows; ++c) {
    long piv = -1;
    for (long i = r; i < m.rows; ++i)
      if (m.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < m.cols; ++j) std::swap(m.a[r * m.cols + j], m.a[piv * m.cols + j]);
    long inv = invm(m.at(r, c), p);
    for (long j = 0; j < m.cols; ++j) m.at(r, j) = mulm(m.at(r, j), inv, p);
    for (long i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      long f = m.at(i, c);
      for (long j = 0; j < m.cols; ++j)
        m.at(i, j) = subm(m.at(i, j), mulm(f, m.at(r, j), p), p);
    }
    ++r;
  }
  return r;
}

FpMat fp_kernel(const FpMat& m0) {
  FpMat m = m0;
  long p = m.p;
  std::vector<long> pivot_of_col(m.cols, -1);
  long r = 0;
  for (long c = 0; c < m.cols && r < m.rows; ++c) {
    long piv = -1;
    for (long i = r; i < m.rows; ++i)
      if (m.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < m.cols; ++j) std::swap(m.a[r * m.cols + j], m.a[piv * m.cols + j]);
    long inv = invm(m.at(r, c), p);
    for (long j = 0; j < m.cols; ++j) m.at(r, j) = mulm(m.at(r, j), inv, p);
    for (long i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      long f = m.at(i, c);
      for (long j = 0; j < m.cols; ++j)
        m.at(i, j) = subm(m.at(i, j), mulm(f, m.at(r, j), p), p);
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<long> free_cols;
  for (long c = 0; c < m.cols; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  FpMat k(p, m.cols, (long)free_cols.size());
  for (size_t idx = 0; idx < free_cols.size(); ++idx) {
    long fc = free_cols[idx];
    k.at(fc, (long)idx) = 1;
    for (long c = 0; c < m.cols; ++c) {
      long pr = pivot_of_col[c];
      if (pr >= 0 && m.at(pr, fc))
        k.at(c, (long)idx) = (p - m.at(pr, fc)) % p;
    }
  }
  return k;
}

}  // namespace logcap
