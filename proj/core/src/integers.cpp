#include "logcap/integers.hpp"

#include <algorithm>

namespace logcap {

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = gcd(a, b);
  BigInt r = (a / g) * b;
  return r < 0 ? BigInt(-r) : r;
}

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  if (b == 0) {
    x = a < 0 ? -1 : 1;
    y = 0;
    return a < 0 ? BigInt(-a) : a;
  }
  BigInt x1, y1;
  BigInt g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt x, y;
  BigInt g = ext_gcd(mod_pos(a, m), m, x, y);
  if (g != 1) throw InputError("mod_inverse: arguments not coprime");
  return mod_pos(x, m);
}

BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m) {
  if (m == 1) return 0;
  base = mod_pos(base, m);
  BigInt result = 1;
  while (exp > 0) {
    if ((exp & 1) != 0) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return result;
}

BigInt int_pow(const BigInt& base, unsigned long exp) {
  BigInt r = 1, b = base;
  unsigned long e = exp;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InputError("isqrt of negative number");
  if (n == 0) return 0;
  BigInt x = BigInt(1) << (unsigned)((boost::multiprecision::msb(n) / 2) + 1);
  while (true) {
    BigInt y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

bool is_perfect_square(const BigInt& n, BigInt* root) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

long padic_val(BigInt n, const BigInt& p) {
  if (n == 0) throw InputError("padic_val of zero");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long padic_val_rat(const BigRat& r, const BigInt& p) {
  if (r == 0) throw InputError("padic_val of zero");
  long v = 0;
  BigInt n = rat_num(r);
  if (n % p == 0) v = padic_val(n, p);
  BigInt d = rat_den(r);
  if (d % p == 0) v -= padic_val(d, p);
  return v;
}

namespace {

bool miller_rabin(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  long s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Deterministic for n < 3.3e24 with this witness set.
  for (long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!miller_rabin(n, a)) return false;
  }
  if (n < BigInt("3317044064679887385961981")) return true;
  Rng rng(0xabcdef12u);
  for (int i = 0; i < 24; ++i) {
    BigInt a = 2 + BigInt(rng.next()) % (n - 3);
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  for (long i = 2; i <= bound; ++i) {
    if (sieve[i]) {
      out.push_back(i);
      for (long j = 2 * i; j <= bound; j += i) sieve[j] = false;
    }
  }
  return out;
}

namespace {

BigInt pollard_rho(const BigInt& n, Rng& rng) {
  if ((n & 1) == 0) return 2;
  while (true) {
    BigInt x = 2 + BigInt(rng.next()) % (n - 3);
    BigInt c = 1 + BigInt(rng.next()) % (n - 2);
    BigInt y = x, d = 1;
    auto f = [&](const BigInt& v) { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(x >= y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(BigInt n, std::vector<BigInt>& out, Rng& rng, int depth) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (depth > 64) throw CapacityError("factorize: recursion limit");
  BigInt d = pollard_rho(n, rng);
  factor_rec(d, out, rng, depth + 1);
  factor_rec(n / d, out, rng, depth + 1);
}

}  // namespace

std::vector<std::pair<BigInt, long>> factorize(BigInt n) {
  if (n == 0) throw InputError("factorize(0)");
  if (n < 0) n = -n;
  std::vector<BigInt> primes;
  for (long p : primes_up_to(10000)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
    if (n == 1) break;
  }
  if (n > 1) {
    Rng rng(0x5eed5eedu);
    factor_rec(n, primes, rng, 0);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<BigInt, long>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      out.back().second++;
    else
      out.push_back({p, 1});
  }
  return out;
}

bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

int kronecker(BigInt a, BigInt n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  long v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v % 2 == 1) {
    BigInt am8 = mod_pos(a, 8);
    if (am8 == 3 || am8 == 5) result = -result;
  }
  a = mod_pos(a, n);
  while (a != 0) {
    long w = 0;
    while ((a & 1) == 0) {
      a >>= 1;
      ++w;
    }
    if (w % 2 == 1) {
      BigInt nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
    BigInt t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? result : 0;
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const BigRat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace logcap
