#include "logcap/polynomial.hpp"

#include "logcap/matrix.hpp"

#include <algorithm>

namespace logcap {

QPoly QPoly::from_ints(const std::vector<long>& v) {
  std::vector<BigRat> c;
  c.reserve(v.size());
  for (long x : v) c.push_back(BigRat(x));
  return QPoly(std::move(c));
}

QPoly QPoly::x_power(long n) {
  std::vector<BigRat> c(n + 1, BigRat(0));
  c[n] = 1;
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<BigRat> r(std::max(c.size(), o.c.size()), BigRat(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] = c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<BigRat> r(std::max(c.size(), o.c.size()), BigRat(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] = c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<BigRat> r(c.size() + o.c.size() - 1, BigRat(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j)
      if (o.c[j] != 0) r[i + j] += c[i] * o.c[j];
  }
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const BigRat& s) const {
  std::vector<BigRat> r = c;
  for (auto& x : r) x *= s;
  return QPoly(std::move(r));
}

BigRat QPoly::eval(const BigRat& x) const {
  BigRat r(0);
  for (long i = deg(); i >= 0; --i) r = r * x + c[i];
  return r;
}

QPoly QPoly::derivative() const {
  std::vector<BigRat> r;
  for (size_t i = 1; i < c.size(); ++i) r.push_back(c[i] * BigRat((long)i));
  return QPoly(std::move(r));
}

std::string QPoly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (long i = deg(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(c[i]);
    if (i > 0) s += "*x^" + std::to_string(i);
  }
  return s;
}

void qpoly_divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw InputError("qpoly division by zero");
  r = a;
  q = QPoly();
  long db = b.deg();
  if (r.deg() >= db) q.c.assign(r.deg() - db + 1, BigRat(0));
  while (!r.is_zero() && r.deg() >= db) {
    BigRat f = r.lead() / b.lead();
    long d = r.deg() - db;
    q.c[d] = f;
    for (long i = 0; i <= db; ++i) r.c[d + i] -= f * b.c[i];
    r.trim();
  }
  q.trim();
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly q, r;
    qpoly_divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    BigRat inv = BigRat(1) / a.lead();
    for (auto& x : a.c) x *= inv;
  }
  return a;
}

std::vector<BigInt> qpoly_scaled_int_coeffs(const QPoly& f, BigInt* denom) {
  BigInt l = 1;
  for (const BigRat& x : f.c) l = lcm(l, rat_den(x));
  std::vector<BigInt> out;
  out.reserve(f.c.size());
  for (const BigRat& x : f.c) out.push_back(rat_num(x) * (l / rat_den(x)));
  if (denom) *denom = l;
  return out;
}

BigRat qpoly_resultant(const QPoly& a, const QPoly& b) {
  // Sylvester matrix determinant (degrees here are small).
  long m = a.deg(), n = b.deg();
  if (m < 0 || n < 0) return BigRat(0);
  auto rat_pow = [](const BigRat& base, long e) {
    BigRat r(1);
    for (long i = 0; i < e; ++i) r *= base;
    return r;
  };
  if (m == 0) return rat_pow(a.c[0], n);
  if (n == 0) return rat_pow(b.c[0], m);
  QMat s(m + n, m + n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= m; ++j) s.at(i, i + j) = a.c[m - j];
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= n; ++j) s.at(n + i, i + j) = b.c[n - j];
  return det(s);
}

BigInt qpoly_resultant_int(const QPoly& a, const QPoly& b) {
  BigRat r = qpoly_resultant(a, b);
  if (rat_den(r) != 1) throw InvariantViolation("resultant: expected integer");
  return rat_num(r);
}

BigRat qpoly_disc(const QPoly& f) {
  long n = f.deg();
  if (n < 1) throw InputError("disc of constant");
  BigRat res = qpoly_resultant(f, f.derivative());
  BigRat d = res / f.lead();
  long s = (n * (n - 1) / 2) % 2;
  return s ? -d : d;
}

bool qpoly_squarefree(const QPoly& f) { return qpoly_gcd(f, f.derivative()).deg() <= 0; }

namespace {

int sign_of(const BigRat& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain;
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero() && chain.back().deg() >= 0) {
    const QPoly& a = chain[chain.size() - 2];
    const QPoly& b = chain.back();
    if (b.is_zero()) break;
    QPoly q, r;
    qpoly_divrem(a, b, q, r);
    if (r.is_zero()) break;
    chain.push_back(r * BigRat(-1));
  }
  return chain;
}

long sign_changes_at(const std::vector<QPoly>& chain, const BigRat& x) {
  long changes = 0;
  int prev = 0;
  for (const QPoly& g : chain) {
    int s = sign_of(g.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

long sign_changes_at_inf(const std::vector<QPoly>& chain, int dir) {
  long changes = 0;
  int prev = 0;
  for (const QPoly& g : chain) {
    if (g.is_zero()) continue;
    int s = sign_of(g.lead());
    if (dir < 0 && g.deg() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

BigRat root_bound(const QPoly& f) {
  // Cauchy bound: 1 + max |a_i / a_n|
  BigRat m(0);
  for (long i = 0; i < f.deg(); ++i) {
    BigRat v = boost::multiprecision::abs(f.c[i] / f.lead());
    if (v > m) m = v;
  }
  return m + 1;
}

}  // namespace

long sturm_count_real_roots(const QPoly& f) {
  QPoly g = f;
  QPoly sq = qpoly_gcd(g, g.derivative());
  if (sq.deg() > 0) {
    QPoly q, r;
    qpoly_divrem(g, sq, q, r);
    g = q;
  }
  auto chain = sturm_chain(g);
  return sign_changes_at_inf(chain, -1) - sign_changes_at_inf(chain, +1);
}

long sturm_count_in_interval(const QPoly& f, const BigRat& a, const BigRat& b) {
  QPoly g = f;
  QPoly sq = qpoly_gcd(g, g.derivative());
  if (sq.deg() > 0) {
    QPoly q, r;
    qpoly_divrem(g, sq, q, r);
    g = q;
  }
  auto chain = sturm_chain(g);
  return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

std::vector<std::pair<BigRat, BigRat>> isolate_real_roots(const QPoly& f, const BigRat& eps) {
  std::vector<std::pair<BigRat, BigRat>> out;
  if (f.deg() < 1) return out;
  BigRat b = root_bound(f);
  std::vector<std::pair<BigRat, BigRat>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    long n = sturm_count_in_interval(f, lo, hi);
    if (n == 0) continue;
    if (n == 1 && hi - lo <= eps) {
      out.push_back({lo, hi});
      continue;
    }
    BigRat mid = (lo + hi) / 2;
    // Nudge off a root.
    while (f.eval(mid) == 0) mid += (hi - lo) / 64;
    stack.push_back({lo, mid});
    stack.push_back({mid, hi});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- modular polynomials ----

void ZModPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

ZModPoly zmod_from(const std::vector<BigInt>& coeffs, const BigInt& modulus) {
  ZModPoly r;
  r.modulus = modulus;
  r.c.reserve(coeffs.size());
  for (const BigInt& x : coeffs) r.c.push_back(mod_pos(x, modulus));
  r.trim();
  return r;
}

ZModPoly zmod_mul(const ZModPoly& a, const ZModPoly& b) {
  ZModPoly r;
  r.modulus = a.modulus;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      if (b.c[j] != 0) r.c[i + j] = mod_pos(r.c[i + j] + a.c[i] * b.c[j], r.modulus);
  }
  r.trim();
  return r;
}

ZModPoly zmod_add(const ZModPoly& a, const ZModPoly& b) {
  ZModPoly r;
  r.modulus = a.modulus;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = mod_pos(r.c[i] + b.c[i], r.modulus);
  r.trim();
  return r;
}

ZModPoly zmod_sub(const ZModPoly& a, const ZModPoly& b) {
  ZModPoly r;
  r.modulus = a.modulus;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = mod_pos(r.c[i] - b.c[i], r.modulus);
  r.trim();
  return r;
}

void zmod_divrem(const ZModPoly& a, const ZModPoly& b, ZModPoly& q, ZModPoly& r) {
  if (b.c.empty() || b.c.back() != 1) throw InputError("zmod_divrem: divisor must be monic");
  r = a;
  q.modulus = a.modulus;
  q.c.clear();
  long db = b.deg();
  if (r.deg() >= db) q.c.assign(r.deg() - db + 1, 0);
  while (r.deg() >= db) {
    BigInt f = r.c.back();
    long d = r.deg() - db;
    q.c[d] = f;
    for (long i = 0; i <= db; ++i) r.c[d + i] = mod_pos(r.c[d + i] - f * b.c[i], r.modulus);
    r.trim();
  }
  q.trim();
}

BigInt zmod_eval(const ZModPoly& a, const BigInt& x) {
  BigInt r = 0;
  for (long i = a.deg(); i >= 0; --i) r = mod_pos(r * x + a.c[i], a.modulus);
  return r;
}

namespace {

// Extended gcd of g, h mod p (coprime): s*g + t*h = 1.
void fp_bezout(const std::vector<BigInt>& g, const std::vector<BigInt>& h, long p,
               std::vector<BigInt>& s, std::vector<BigInt>& t) {
  BigInt P(p);
  auto deg = [](const std::vector<BigInt>& v) { return (long)v.size() - 1; };
  auto trim = [](std::vector<BigInt>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  std::vector<BigInt> r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  auto modred = [&](std::vector<BigInt>& v) {
    for (auto& x : v) x = mod_pos(x, P);
    trim(v);
  };
  modred(r0);
  modred(r1);
  while (!r1.empty()) {
    // divide r0 by r1 mod p
    std::vector<BigInt> q(std::max<long>(deg(r0) - deg(r1) + 1, 0), 0);
    std::vector<BigInt> r = r0;
    BigInt linv = mod_inverse(r1.back(), P);
    while ((long)r.size() >= (long)r1.size() && !r.empty()) {
      BigInt f = mod_pos(r.back() * linv, P);
      long d = deg(r) - deg(r1);
      q[d] = f;
      for (long i = 0; i <= deg(r1); ++i) r[d + i] = mod_pos(r[d + i] - f * r1[i], P);
      trim(r);
    }
    auto combine = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
      // a - q*b
      std::vector<BigInt> qb(q.size() + b.size(), 0);
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) qb[i + j] = mod_pos(qb[i + j] + q[i] * b[j], P);
      std::vector<BigInt> out(std::max(a.size(), qb.size()), 0);
      for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
      for (size_t i = 0; i < qb.size(); ++i) out[i] = mod_pos(out[i] - qb[i], P);
      trim(out);
      return out;
    };
    std::vector<BigInt> r2 = r, s2 = combine(s0, s1), t2 = combine(t0, t1);
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.size() != 1) throw InputError("hensel: factors not coprime mod p");
  BigInt c = mod_inverse(r0[0], P);
  for (auto& x : s0) x = mod_pos(x * c, P);
  for (auto& x : t0) x = mod_pos(x * c, P);
  s = s0;
  t = t0;
}

// One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m
// -> everything mod m^2 (capped by p^N).
void hensel_step(const std::vector<BigInt>& f, std::vector<BigInt>& g, std::vector<BigInt>& h,
                 std::vector<BigInt>& s, std::vector<BigInt>& t, const BigInt& m,
                 const BigInt& cap) {
  BigInt m2 = m * m;
  if (m2 > cap) m2 = cap;
  auto mk = [&](const std::vector<BigInt>& v) { return zmod_from(v, m2); };
  ZModPoly F = mk(f), G = mk(g), H = mk(h), S = mk(s), T = mk(t);
  // e = f - g h
  ZModPoly E = zmod_sub(F, zmod_mul(G, H));
  // q, r = divrem(s*e, h)
  ZModPoly q, r;
  zmod_divrem(zmod_mul(S, E), H, q, r);
  // g' = g + t e + q g ; h' = h + r
  ZModPoly Gn = zmod_add(G, zmod_add(zmod_mul(T, E), zmod_mul(q, G)));
  ZModPoly Hn = zmod_add(H, r);
  // b = s g' + t h' - 1
  ZModPoly one = zmod_from({BigInt(1)}, m2);
  ZModPoly B = zmod_sub(zmod_add(zmod_mul(S, Gn), zmod_mul(T, Hn)), one);
  // c, d = divrem(s b, h')
  ZModPoly cq, cd;
  zmod_divrem(zmod_mul(S, B), Hn, cq, cd);
  ZModPoly Sn = zmod_sub(S, cd);
  ZModPoly Tn = zmod_sub(zmod_sub(T, zmod_mul(T, B)), zmod_mul(cq, Gn));
  g = Gn.c;
  h = Hn.c;
  s = Sn.c;
  t = Tn.c;
}

}  // namespace

std::vector<ZModPoly> hensel_lift(const std::vector<BigInt>& f_int, long p,
                                  const std::vector<std::vector<BigInt>>& factors_mod_p, long N) {
  BigInt cap = int_pow(BigInt(p), (unsigned long)N);
  if (factors_mod_p.size() == 1) {
    return {zmod_from(f_int, cap)};
  }
  // Split factors into two balanced groups, lift recursively.
  size_t half = factors_mod_p.size() / 2;
  std::vector<std::vector<BigInt>> left(factors_mod_p.begin(), factors_mod_p.begin() + half);
  std::vector<std::vector<BigInt>> right(factors_mod_p.begin() + half, factors_mod_p.end());
  BigInt P(p);
  auto mul_group = [&](const std::vector<std::vector<BigInt>>& grp) {
    ZModPoly acc = zmod_from({BigInt(1)}, P);
    for (const auto& g : grp) acc = zmod_mul(acc, zmod_from(g, P));
    return acc.c;
  };
  std::vector<BigInt> g = mul_group(left), h = mul_group(right), s, t;
  fp_bezout(g, h, p, s, t);
  BigInt m(p);
  while (m < cap) {
    hensel_step(f_int, g, h, s, t, m, cap);
    m = m * m;
    if (m > cap) m = cap;
  }
  // Recurse on both halves with their lifted products as targets.
  std::vector<ZModPoly> out;
  for (auto& part : hensel_lift(g, p, left, N)) out.push_back(part);
  for (auto& part : hensel_lift(h, p, right, N)) out.push_back(part);
  return out;
}

}  // namespace logcap
