#include "logcap/quadratic.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace logcap {

BigRat RealQuadUnit::a() const { return half_basis ? BigRat(2 * x + y, 2) : BigRat(x); }
BigRat RealQuadUnit::b() const { return half_basis ? BigRat(y, 2) : BigRat(y); }

RealQuadUnit fundamental_unit_real_quadratic(const BigInt& d) {
  if (d <= 1) throw InputError("fundamental unit: d must be > 1");
  if (!is_squarefree(d)) throw InputError("fundamental unit: d must be squarefree");
  bool half = (d % 4 == 1);
  // Continued fraction of w over the standard order basis {1, w}:
  // quadratic irrational (P + sqrt(D)) / Q with D = d (half: shifted form).
  // For w = (1+sqrt(d))/2: track alpha = (P + sqrt(d)) / Q with P=1, Q=2.
  BigInt P = half ? 1 : 0;
  BigInt Q = half ? 2 : 1;
  BigInt sq = isqrt(d);
  auto floor_alpha = [&](const BigInt& Pc, const BigInt& Qc) -> BigInt {
    // floor((Pc + sqrt(d)) / Qc); handles Qc < 0 too
    BigInt num = Pc + sq;
    BigInt qq = Qc;
    if (qq < 0) {
      // floor((P + sqrt d)/Q) with Q<0: use exact sqrt bracketing
      num = -(Pc + sq + 1);
      qq = -qq;
      if (num >= 0) return BigInt(num / qq);
      BigInt neg = -num + qq - 1;
      BigInt r = neg / qq;
      return BigInt(-r);
    }
    if (num >= 0) return num / qq;
    return -((-num + qq - 1) / qq);
  };
  // convergents h/k of w; the fundamental unit is the first h + k*w... with
  // norm +-1 (units of the order appear among the convergents and the first
  // one is fundamental).
  BigInt h0 = 1, h1 = floor_alpha(P, Q);
  BigInt k0 = 0, k1 = 1;
  BigInt Pc = P, Qc = Q;
  BigInt a = h1;
  auto test_convergent = [&](const BigInt& h, const BigInt& k) -> std::optional<RealQuadUnit> {
    // candidate unit h + k*w... the convergent p/q gives p - q*conj(w):
    // check N(p + q*w) and N(p - q*w-conjugate-free form) both ways.
    for (int var = 1; var >= 0; --var) {
      BigRat A, B;
      if (!half) {
        A = BigRat(h);
        B = BigRat(k);
      } else if (var == 1) {
        // h - k*(1-sqrt d)/2 = (2h-k)/2 + k/2 sqrt(d)
        A = BigRat(2 * h - k, 2);
        B = BigRat(k, 2);
      } else {
        // h + k*(1+sqrt d)/2
        A = BigRat(2 * h + k, 2);
        B = BigRat(k, 2);
      }
      BigRat Nrm = A * A - BigRat(d) * B * B;
      if (Nrm == 1 || Nrm == -1) {
        RealQuadUnit cand;
        cand.d = d;
        cand.half_basis = half;
        if (!half) {
          cand.x = h;
          cand.y = k;
        } else {
          // store as x + y*w with w = (1+sqrt d)/2: A = x + y/2, B = y/2
          cand.y = rat_num(B * 2);
          cand.x = rat_num(A - B);
        }
        cand.norm = Nrm == 1 ? 1 : -1;
        return cand;
      }
    }
    return std::nullopt;
  };
  if (auto u = test_convergent(h1, k1)) return *u;
  std::map<std::pair<BigInt, BigInt>, int> seen;
  for (int it = 0; it < 100000; ++it) {
    BigInt Pn = a * Qc - Pc;
    BigInt Qn = (d - Pn * Pn) / Qc;
    if (Qn == 0) throw InvariantViolation("cf: Q vanished (d square?)");
    Pc = Pn;
    Qc = Qn;
    auto key = std::make_pair(Pc, Qc);
    if (seen.count(key)) break;
    seen[key] = it;
    a = floor_alpha(Pc, Qc);
    BigInt h2 = a * h1 + h0;
    BigInt k2 = a * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (auto u = test_convergent(h1, k1)) return *u;
  }
  // Fall back: direct search over y.
  for (BigInt y = 1; y < BigInt(2000000); ++y) {
    if (half) {
      // x + y*(1+sqrt d)/2: norm = ((2x+y)^2 - d y^2)/4
      BigInt target1 = d * y * y + 4, target2 = d * y * y - 4;
      BigInt r;
      if (is_perfect_square(target2, &r) && (r - y) % 2 == 0) return {(r - y) / 2, y, d, true, -1};
      if (is_perfect_square(target1, &r) && (r - y) % 2 == 0) return {(r - y) / 2, y, d, true, 1};
    } else {
      BigInt t1 = d * y * y + 1, t2 = d * y * y - 1;
      BigInt r;
      if (is_perfect_square(t2, &r)) return {r, y, d, false, -1};
      if (is_perfect_square(t1, &r)) return {r, y, d, false, 1};
    }
  }
  throw CapacityError("fundamental unit search failed");
}

}  // namespace logcap
