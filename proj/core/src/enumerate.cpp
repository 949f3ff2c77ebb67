#include "logcap/enumerate.hpp"

namespace logcap {

void enumerate_short_vectors(const QMat& G, const BigRat& bound,
                             const std::function<bool(const std::vector<BigInt>&)>& visit,
                             long max_nodes) {
  long n = G.rows;
  if (n == 0) return;
  // Quadratic completion: Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
  QMat q = G;
  for (long i = 0; i < n; ++i) {
    if (q.at(i, i) <= 0) throw InputError("enumerate: Gram not positive definite");
    for (long j = i + 1; j < n; ++j) {
      BigRat gij = q.at(i, j);
      q.at(j, i) = gij;
      q.at(i, j) = gij / q.at(i, i);
    }
    for (long k = i + 1; k < n; ++k)
      for (long l = k; l < n; ++l) q.at(k, l) -= q.at(k, i) * q.at(i, l);
  }
  std::vector<BigInt> x(n, 0);
  std::vector<BigRat> center(n, BigRat(0));
  std::vector<BigRat> budget(n, BigRat(0));
  long nodes = 0;
  bool stop = false;

  std::function<void(long)> rec = [&](long i) {
    if (stop) return;
    if (++nodes > max_nodes) throw CapacityError("enumerate: node budget exceeded");
    if (i < 0) {
      // report up to sign: highest nonzero coordinate positive
      long h = n - 1;
      while (h >= 0 && x[h] == 0) --h;
      if (h < 0) return;  // zero vector
      if (x[h] < 0) return;
      if (!visit(x)) stop = true;
      return;
    }
    // x_i ranges over integers with q_ii (x_i + c_i)^2 <= budget_i
    BigRat c(0);
    for (long j = i + 1; j < n; ++j) c += q.at(i, j) * BigRat(x[j]);
    const BigRat& qi = q.at(i, i);
    const BigRat& Ti = budget[i];
    // start near -c and expand in both directions
    BigInt x0 = rat_num(-c) / rat_den(-c);  // truncated toward zero; fine as seed
    auto ok = [&](const BigInt& v) {
      BigRat t = BigRat(v) + c;
      return qi * t * t <= Ti;
    };
    auto descend = [&](const BigInt& v) {
      if (stop) return;
      x[i] = v;
      if (i == 0) {
        rec(-1);
        return;
      }
      BigRat t = BigRat(v) + c;
      budget[i - 1] = Ti - qi * t * t;
      rec(i - 1);
    };
    // find some admissible start
    BigInt s = x0;
    if (!ok(s)) {
      bool found = false;
      for (long step = 1; step <= 4 && !found; ++step) {
        if (ok(x0 + step)) {
          s = x0 + step;
          found = true;
        } else if (ok(x0 - step)) {
          s = x0 - step;
          found = true;
        }
      }
      if (!found) return;  // empty range (center estimation off => range < 1)
    }
    for (BigInt v = s; ok(v); ++v) descend(v);
    for (BigInt v = s - 1; ok(v); --v) descend(v);
  };

  budget[n - 1] = bound;
  center.clear();
  rec(n - 1);
}

}  // namespace logcap
