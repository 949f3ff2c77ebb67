#include "logcap/zfactor.hpp"

#include "logcap/fqpoly.hpp"

#include <algorithm>
#include <functional>

namespace logcap {

namespace {

QPoly to_qpoly(const std::vector<BigInt>& f) {
  std::vector<BigRat> c;
  for (const BigInt& x : f) c.push_back(BigRat(x));
  return QPoly(std::move(c));
}

// Coefficient bound for monic factors (Mignotte-style, generous).
BigInt factor_coeff_bound(const std::vector<BigInt>& f) {
  BigInt norm2 = 0;
  for (const BigInt& c : f) norm2 += c * c;
  BigInt b = isqrt(norm2) + 1;
  long n = (long)f.size() - 1;
  return (BigInt(1) << (unsigned)(n + 2)) * b;
}

std::vector<BigInt> symmetric_lift(const ZModPoly& g) {
  std::vector<BigInt> out = g.c;
  BigInt half = g.modulus / 2;
  for (BigInt& c : out)
    if (c > half) c -= g.modulus;
  return out;
}

bool divides_exactly(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  std::vector<BigInt> r = f;
  long dg = (long)g.size() - 1;
  while (!r.empty() && (long)r.size() - 1 >= dg) {
    BigInt lead = r.back();
    long shift = (long)r.size() - 1 - dg;
    for (long i = 0; i <= dg; ++i) r[shift + i] -= lead * g[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return r.empty();
}

std::vector<BigInt> exact_quotient(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  std::vector<BigInt> r = f, q((size_t)((long)f.size() - (long)g.size() + 1), 0);
  long dg = (long)g.size() - 1;
  while (!r.empty() && (long)r.size() - 1 >= dg) {
    BigInt lead = r.back();
    long shift = (long)r.size() - 1 - dg;
    q[shift] = lead;
    for (long i = 0; i <= dg; ++i) r[shift + i] -= lead * g[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  if (!r.empty()) throw InvariantViolation("exact_quotient: not divisible");
  return q;
}

void factor_squarefree_monic(const std::vector<BigInt>& f,
                             std::vector<std::vector<BigInt>>& out) {
  long n = (long)f.size() - 1;
  if (n <= 1) {
    out.push_back(f);
    return;
  }
  QPoly fq = to_qpoly(f);
  BigRat disc = qpoly_disc(fq);
  BigInt dnum = rat_num(disc);
  long best_p = 0;
  size_t best_count = SIZE_MAX;
  std::vector<std::pair<FqPoly, long>> best_factors;
  int tried = 0;
  for (long p : primes_up_to(2000)) {
    if (p == 2) continue;
    if (dnum % p == 0) continue;
    FqCtx ctx = FqCtx::prime_field(p);
    FqPoly fp = fqp_from_int_coeffs(ctx, f);
    auto fac = fqp_factor(ctx, fp);
    if (fac.size() < best_count) {
      best_count = fac.size();
      best_p = p;
      best_factors = fac;
    }
    if (++tried >= 5 || best_count == 1) break;
  }
  if (best_p == 0) throw CapacityError("zpoly_factor: no good prime found");
  if (best_count == 1) {
    out.push_back(f);  // irreducible
    return;
  }
  BigInt bound = factor_coeff_bound(f);
  long N = 1;
  BigInt pk(best_p);
  while (pk <= 2 * bound) {
    pk *= best_p;
    ++N;
  }
  std::vector<std::vector<BigInt>> mod_factors;
  for (auto& [g, m] : best_factors) {
    if (m != 1) throw InvariantViolation("zpoly_factor: squarefree input expected");
    std::vector<BigInt> coeffs;
    for (const Fq& c : g) coeffs.push_back(c[0]);
    mod_factors.push_back(coeffs);
  }
  auto lifted = hensel_lift(f, best_p, mod_factors, N);

  size_t k = lifted.size();
  std::vector<bool> used(k, false);
  std::vector<BigInt> rem = f;
  for (size_t sz = 1; sz <= k; ++sz) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<size_t> avail;
      for (size_t i = 0; i < k; ++i)
        if (!used[i]) avail.push_back(i);
      if (sz > avail.size()) break;
      std::vector<size_t> idx(sz);
      std::function<bool(size_t, size_t)> choose = [&](size_t pos, size_t start) -> bool {
        if (pos == sz) {
          ZModPoly prod = zmod_from({BigInt(1)}, lifted[0].modulus);
          for (size_t j = 0; j < sz; ++j) prod = zmod_mul(prod, lifted[avail[idx[j]]]);
          auto cand = symmetric_lift(prod);
          if ((long)cand.size() - 1 >= (long)rem.size() - 1) return false;
          if (divides_exactly(rem, cand)) {
            out.push_back(cand);
            for (size_t j = 0; j < sz; ++j) used[avail[idx[j]]] = true;
            rem = exact_quotient(rem, cand);
            return true;
          }
          return false;
        }
        for (size_t s = start; s < avail.size(); ++s) {
          idx[pos] = s;
          if (choose(pos + 1, s + 1)) return true;
        }
        return false;
      };
      if (choose(0, 0)) progress = true;
    }
  }
  if ((long)rem.size() - 1 > 0) out.push_back(rem);
}

}  // namespace

std::vector<std::vector<BigInt>> zpoly_factor_monic(const std::vector<BigInt>& f) {
  if (f.empty() || f.back() != 1) throw InputError("zpoly_factor: monic polynomial required");
  std::vector<std::vector<BigInt>> out;
  if ((long)f.size() - 1 <= 0) return out;
  QPoly fq = to_qpoly(f);
  QPoly g = qpoly_gcd(fq, fq.derivative());
  if (g.deg() > 0) {
    QPoly q, r;
    qpoly_divrem(fq, g, q, r);
    BigInt den1;
    auto qi = qpoly_scaled_int_coeffs(q, &den1);
    if (den1 != 1) throw InvariantViolation("zpoly_factor: non-integral squarefree part");
    auto gi = qpoly_scaled_int_coeffs(g, &den1);
    if (den1 != 1) throw InvariantViolation("zpoly_factor: non-integral gcd part");
    for (auto& h : zpoly_factor_monic(qi)) out.push_back(h);
    for (auto& h : zpoly_factor_monic(gi)) out.push_back(h);
    return out;
  }
  factor_squarefree_monic(f, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

bool zpoly_irreducible(const std::vector<BigInt>& f) {
  if ((long)f.size() - 1 <= 0) return false;
  QPoly fq = to_qpoly(f);
  if (qpoly_gcd(fq, fq.derivative()).deg() > 0) return false;
  auto fac = zpoly_factor_monic(f);
  return fac.size() == 1;
}

}  // namespace logcap
