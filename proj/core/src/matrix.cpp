#include "logcap/matrix.hpp"

#include <algorithm>

namespace logcap {

ZMat ZMat::identity(long n) {
  ZMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat ZMat::operator*(const ZMat& o) const {
  if (cols != o.rows) throw InputError("ZMat: dimension mismatch");
  ZMat r(rows, o.cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      const BigInt& v = at(i, k);
      if (v == 0) continue;
      for (long j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

std::vector<BigInt> ZMat::apply(const std::vector<BigInt>& x) const {
  if ((long)x.size() != cols) throw InputError("ZMat: vector size mismatch");
  std::vector<BigInt> r(rows, 0);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * x[j];
  return r;
}

ZMat ZMat::transpose() const {
  ZMat t(cols, rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMat QMat::from(const ZMat& m) {
  QMat q(m.rows, m.cols);
  for (long i = 0; i < m.rows * m.cols; ++i) q.a[i] = BigRat(m.a[i]);
  return q;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols != o.rows) throw InputError("QMat: dimension mismatch");
  QMat r(rows, o.cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      const BigRat& v = at(i, k);
      if (v == 0) continue;
      for (long j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

std::vector<BigRat> QMat::apply(const std::vector<BigRat>& x) const {
  std::vector<BigRat> r(rows, BigRat(0));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * x[j];
  return r;
}

BigInt det(const ZMat& m) {
  if (m.rows != m.cols) throw InputError("det: not square");
  // Bareiss fraction-free elimination.
  long n = m.rows;
  ZMat w = m;
  BigInt prev = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      long piv = -1;
      for (long i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        BigInt t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        w.at(i, j) = t / prev;
      }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : BigInt(-w.at(n - 1, n - 1));
}

BigRat det(const QMat& m) {
  if (m.rows != m.cols) throw InputError("det: not square");
  QMat w = m;
  long n = m.rows;
  BigRat d = 1;
  for (long k = 0; k < n; ++k) {
    long piv = -1;
    for (long i = k; i < n; ++i)
      if (w.at(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return BigRat(0);
    if (piv != k) {
      for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      d = -d;
    }
    d *= w.at(k, k);
    BigRat inv = BigRat(1) / w.at(k, k);
    for (long i = k + 1; i < n; ++i) {
      BigRat f = w.at(i, k) * inv;
      if (f == 0) continue;
      for (long j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
    }
  }
  return d;
}

std::optional<std::vector<BigRat>> solve(const QMat& A, const std::vector<BigRat>& b) {
  long n = A.rows, m = A.cols;
  QMat w(n, m + 1);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < m; ++j) w.at(i, j) = A.at(i, j);
    w.at(i, m) = b[i];
  }
  std::vector<long> pivot_col;
  long r = 0;
  for (long c = 0; c < m && r < n; ++c) {
    long piv = -1;
    for (long i = r; i < n; ++i)
      if (w.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j <= m; ++j) std::swap(w.at(r, j), w.at(piv, j));
    BigRat inv = BigRat(1) / w.at(r, c);
    for (long j = c; j <= m; ++j) w.at(r, j) *= inv;
    for (long i = 0; i < n; ++i) {
      if (i == r || w.at(i, c) == 0) continue;
      BigRat f = w.at(i, c);
      for (long j = c; j <= m; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (long i = r; i < n; ++i)
    if (w.at(i, m) != 0) return std::nullopt;
  std::vector<BigRat> x(m, BigRat(0));
  for (long i = 0; i < r; ++i) x[pivot_col[i]] = w.at(i, m);
  return x;
}

std::optional<QMat> inverse(const QMat& A) {
  if (A.rows != A.cols) return std::nullopt;
  long n = A.rows;
  QMat w(n, 2 * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) w.at(i, j) = A.at(i, j);
    w.at(i, n + i) = 1;
  }
  for (long c = 0; c < n; ++c) {
    long piv = -1;
    for (long i = c; i < n; ++i)
      if (w.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (long j = 0; j < 2 * n; ++j) std::swap(w.at(c, j), w.at(piv, j));
    BigRat inv = BigRat(1) / w.at(c, c);
    for (long j = 0; j < 2 * n; ++j) w.at(c, j) *= inv;
    for (long i = 0; i < n; ++i) {
      if (i == c || w.at(i, c) == 0) continue;
      BigRat f = w.at(i, c);
      for (long j = 0; j < 2 * n; ++j) w.at(i, j) -= f * w.at(c, j);
    }
  }
  QMat r(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) r.at(i, j) = w.at(i, n + j);
  return r;
}

ZMat hnf(const ZMat& A) {
  long n = A.rows, m = A.cols;
  ZMat w = A;
  long row = 0, col = 0;
  std::vector<long> pivots;
  while (row < n && col < m) {
    // Reduce columns col..m-1 against each other in row `row`.
    while (true) {
      long piv = -1;
      for (long j = col; j < m; ++j)
        if (w.at(row, j) != 0) {
          if (piv < 0 ||
              boost::multiprecision::abs(w.at(row, j)) < boost::multiprecision::abs(w.at(row, piv)))
            piv = j;
        }
      if (piv < 0) break;
      if (piv != col)
        for (long i = 0; i < n; ++i) std::swap(w.at(i, col), w.at(i, piv));
      bool clean = true;
      for (long j = col + 1; j < m; ++j) {
        if (w.at(row, j) == 0) continue;
        BigInt q = w.at(row, j) / w.at(row, col);
        if (q != 0)
          for (long i = 0; i < n; ++i) w.at(i, j) -= q * w.at(i, col);
        if (w.at(row, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (w.at(row, col) != 0) {
      if (w.at(row, col) < 0)
        for (long i = 0; i < n; ++i) w.at(i, col) = -w.at(i, col);
      // Reduce earlier columns by this pivot.
      for (long j = 0; j < col; ++j) {
        if (w.at(row, j) == 0) continue;
        BigInt q = w.at(row, j) / w.at(row, col);
        BigInt r = w.at(row, j) - q * w.at(row, col);
        if (r < 0) q -= 1;
        if (q != 0)
          for (long i = 0; i < n; ++i) w.at(i, j) -= q * w.at(i, col);
      }
      pivots.push_back(col);
      ++col;
    }
    ++row;
  }
  // Drop zero columns.
  std::vector<long> keep;
  for (long j = 0; j < m; ++j) {
    bool z = true;
    for (long i = 0; i < n; ++i)
      if (w.at(i, j) != 0) {
        z = false;
        break;
      }
    if (!z) keep.push_back(j);
  }
  ZMat h(n, (long)keep.size());
  for (long jj = 0; jj < (long)keep.size(); ++jj)
    for (long i = 0; i < n; ++i) h.at(i, jj) = w.at(i, keep[jj]);
  return h;
}

ZMat kernel(const ZMat& A) {
  // Kernel via SNF: A = U^-1 S V^-1, kernel spanned by V * e_j for zero
  // columns of S.
  SmithResult s = smith(A);
  long n = A.cols;
  long r = 0;
  long d = std::min(A.rows, A.cols);
  for (long i = 0; i < d; ++i)
    if (s.divisors[i] != 0) ++r;
  ZMat k(n, n - r);
  for (long j = r; j < n; ++j)
    for (long i = 0; i < n; ++i) k.at(i, j - r) = s.V.at(i, j);
  return k;
}

SmithResult smith(const ZMat& A) {
  long n = A.rows, m = A.cols;
  SmithResult res;
  res.S = A;
  res.U = ZMat::identity(n);
  res.V = ZMat::identity(m);
  ZMat& S = res.S;
  ZMat& U = res.U;
  ZMat& V = res.V;
  long d = std::min(n, m);
  for (long k = 0; k < d; ++k) {
    while (true) {
      // Find pivot: smallest nonzero |entry| in subblock.
      long pi = -1, pj = -1;
      for (long i = k; i < n; ++i)
        for (long j = k; j < m; ++j)
          if (S.at(i, j) != 0) {
            if (pi < 0 || boost::multiprecision::abs(S.at(i, j)) <
                              boost::multiprecision::abs(S.at(pi, pj))) {
              pi = i;
              pj = j;
            }
          }
      if (pi < 0) break;  // all zero
      if (pi != k)
        for (long j = 0; j < m; ++j) std::swap(S.at(k, j), S.at(pi, j));
      if (pi != k)
        for (long j = 0; j < n; ++j) std::swap(U.at(k, j), U.at(pi, j));
      if (pj != k) {
        for (long i = 0; i < n; ++i) std::swap(S.at(i, k), S.at(i, pj));
        for (long i = 0; i < m; ++i) std::swap(V.at(i, k), V.at(i, pj));
      }
      bool reduced = true;
      for (long i = k + 1; i < n; ++i) {
        if (S.at(i, k) == 0) continue;
        BigInt q = S.at(i, k) / S.at(k, k);
        if (q != 0) {
          for (long j = 0; j < m; ++j) S.at(i, j) -= q * S.at(k, j);
          for (long j = 0; j < n; ++j) U.at(i, j) -= q * U.at(k, j);
        }
        if (S.at(i, k) != 0) reduced = false;
      }
      for (long j = k + 1; j < m; ++j) {
        if (S.at(k, j) == 0) continue;
        BigInt q = S.at(k, j) / S.at(k, k);
        if (q != 0) {
          for (long i = 0; i < n; ++i) S.at(i, j) -= q * S.at(i, k);
          for (long i = 0; i < m; ++i) V.at(i, j) -= q * V.at(i, k);
        }
        if (S.at(k, j) != 0) reduced = false;
      }
      if (!reduced) continue;
      // Divisibility: S[k][k] must divide everything below-right.
      bool fix = false;
      for (long i = k + 1; i < n && !fix; ++i)
        for (long j = k + 1; j < m && !fix; ++j)
          if (S.at(i, j) % S.at(k, k) != 0) {
            for (long jj = 0; jj < m; ++jj) S.at(k, jj) += S.at(i, jj);
            for (long jj = 0; jj < n; ++jj) U.at(k, jj) += U.at(i, jj);
            fix = true;
          }
      if (!fix) break;
    }
    if (S.at(k, k) < 0) {
      for (long j = 0; j < m; ++j) S.at(k, j) = -S.at(k, j);
      for (long j = 0; j < n; ++j) U.at(k, j) = -U.at(k, j);
    }
  }
  res.divisors.resize(d);
  for (long i = 0; i < d; ++i) res.divisors[i] = S.at(i, i);
  return res;
}

PadicSmithResult smith_mod_prime_power(const ZMat& A, long p, long N) {
  BigInt M = int_pow(BigInt(p), (unsigned long)N);
  long n = A.rows, m = A.cols;
  PadicSmithResult res;
  res.cap = N;
  ZMat S(n, m);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < m; ++j) S.at(i, j) = mod_pos(A.at(i, j), M);
  ZMat U = ZMat::identity(n), V = ZMat::identity(m);
  auto val_of = [&](const BigInt& x) -> long {
    if (x == 0) return N;
    long v = 0;
    BigInt t = x;
    while (t % p == 0 && v < N) {
      t /= p;
      ++v;
    }
    return v;
  };
  long d = std::min(n, m);
  for (long k = 0; k < d; ++k) {
    // Pivot with minimal valuation.
    long best = N, pi = -1, pj = -1;
    for (long i = k; i < n; ++i)
      for (long j = k; j < m; ++j) {
        long v = val_of(S.at(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0 || best >= N) break;  // rest is zero at this precision
    if (pi != k) {
      for (long j = 0; j < m; ++j) std::swap(S.at(k, j), S.at(pi, j));
      for (long j = 0; j < n; ++j) std::swap(U.at(k, j), U.at(pi, j));
    }
    if (pj != k) {
      for (long i = 0; i < n; ++i) std::swap(S.at(i, k), S.at(i, pj));
      for (long i = 0; i < m; ++i) std::swap(V.at(i, k), V.at(i, pj));
    }
    // Normalize pivot to p^v: multiply row by unit inverse.
    BigInt pv = int_pow(BigInt(p), (unsigned long)best);
    BigInt unit = S.at(k, k) / pv;
    BigInt uinv = mod_inverse(unit, M);
    for (long j = 0; j < m; ++j) S.at(k, j) = mod_pos(S.at(k, j) * uinv, M);
    for (long j = 0; j < n; ++j) U.at(k, j) = mod_pos(U.at(k, j) * uinv, M);
    // Eliminate (entries have valuation >= pivot's, so quotients are exact).
    for (long i = k + 1; i < n; ++i) {
      if (S.at(i, k) == 0) continue;
      BigInt q = S.at(i, k) / pv;
      for (long j = 0; j < m; ++j) S.at(i, j) = mod_pos(S.at(i, j) - q * S.at(k, j), M);
      for (long j = 0; j < n; ++j) U.at(i, j) = mod_pos(U.at(i, j) - q * U.at(k, j), M);
    }
    for (long j = k + 1; j < m; ++j) {
      if (S.at(k, j) == 0) continue;
      BigInt q = S.at(k, j) / pv;
      for (long i = 0; i < n; ++i) S.at(i, j) = mod_pos(S.at(i, j) - q * S.at(i, k), M);
      for (long i = 0; i < m; ++i) V.at(i, j) = mod_pos(V.at(i, j) - q * V.at(i, k), M);
    }
  }
  res.exponents.assign(d, N);
  for (long i = 0; i < d; ++i) res.exponents[i] = val_of(S.at(i, i));
  std::sort(res.exponents.begin(), res.exponents.end());
  res.U = U;
  res.V = V;
  return res;
}

std::vector<BigInt> FinAb::classify(const std::vector<BigInt>& x) const {
  std::vector<BigInt> y = to_smith.apply(x);
  std::vector<BigInt> out;
  for (long i = 0; i < rank_gens; ++i) {
    const BigInt& di = all_divisors[i];
    if (di == 1) continue;
    if (di == 0) {
      if (y[i] != 0) throw InvariantViolation("FinAb: class hits infinite component");
      continue;
    }
    out.push_back(mod_pos(y[i], di));
  }
  return out;
}

bool FinAb::is_trivial_class(const std::vector<BigInt>& x) const {
  for (const BigInt& c : classify(x))
    if (c != 0) return false;
  return true;
}

std::string FinAb::str() const {
  if (divisors.empty()) return finite ? "1" : "Z^?";
  std::string s;
  for (size_t i = 0; i < divisors.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + divisors[i].str();
  }
  return s;
}

FinAb finab_from_relations(long rank, const std::vector<std::vector<BigInt>>& relation_cols) {
  ZMat A(rank, (long)relation_cols.size());
  for (long j = 0; j < (long)relation_cols.size(); ++j) {
    if ((long)relation_cols[j].size() != rank) throw InputError("finab: bad relation size");
    for (long i = 0; i < rank; ++i) A.at(i, j) = relation_cols[j][i];
  }
  SmithResult s = smith(A);
  FinAb g;
  g.rank_gens = rank;
  g.to_smith = s.U;
  g.all_divisors.assign(rank, 0);
  long d = std::min(A.rows, A.cols);
  for (long i = 0; i < d; ++i) g.all_divisors[i] = s.divisors[i];
  g.order = 1;
  g.finite = true;
  for (long i = 0; i < rank; ++i) {
    const BigInt& di = g.all_divisors[i];
    if (di == 0) {
      g.finite = false;
      g.order = 0;
    } else if (di > 1) {
      g.divisors.push_back(di);
      if (g.finite) g.order *= di;
    }
  }
  return g;
}

std::vector<BigInt> lattice_quotient_divisors(const ZMat& L1, const ZMat& L2) {
  // Solve L1 * C = L2 over Q, check integrality, take SNF of C.
  QMat q1 = QMat::from(L1);
  ZMat C(L1.cols, L2.cols);
  for (long j = 0; j < L2.cols; ++j) {
    std::vector<BigRat> b(L2.rows);
    for (long i = 0; i < L2.rows; ++i) b[i] = BigRat(L2.at(i, j));
    auto x = solve(q1, b);
    if (!x) throw InputError("lattice_quotient: L2 not inside span of L1");
    for (long i = 0; i < L1.cols; ++i) {
      if (rat_den((*x)[i]) != 1) throw InputError("lattice_quotient: L2 not inside L1");
      C.at(i, j) = rat_num((*x)[i]);
    }
  }
  SmithResult s = smith(C);
  std::vector<BigInt> out;
  long d = std::min(C.rows, C.cols);
  for (long i = 0; i < d; ++i) out.push_back(s.divisors[i]);
  for (long i = d; i < C.rows; ++i) out.push_back(0);
  return out;
}

std::optional<std::vector<BigInt>> solve_integer(const ZMat& A, const std::vector<BigInt>& b) {
  // x = V * y with S y = U b solved diagonally.
  SmithResult s = smith(A);
  std::vector<BigInt> ub = s.U.apply(b);
  long d = std::min(A.rows, A.cols);
  std::vector<BigInt> y(A.cols, 0);
  for (long i = 0; i < A.rows; ++i) {
    BigInt diag = i < d ? s.divisors[i] : BigInt(0);
    if (diag == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % diag != 0) return std::nullopt;
      if (i < A.cols) y[i] = ub[i] / diag;
    }
  }
  return s.V.apply(y);
}

}  // namespace logcap
