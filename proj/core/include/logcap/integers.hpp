#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace logcap {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Errors thrown across the library.  The CLI maps them to exit codes.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline BigInt rat_num(const BigRat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const BigRat& r) { return boost::multiprecision::denominator(r); }

BigInt gcd(BigInt a, BigInt b);
BigInt lcm(const BigInt& a, const BigInt& b);
// g = ax + by
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y);
BigInt mod_pos(const BigInt& a, const BigInt& m);
BigInt mod_inverse(const BigInt& a, const BigInt& m);
BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m);
BigInt int_pow(const BigInt& base, unsigned long exp);

// Largest s with s*s <= n (n >= 0).
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n, BigInt* root = nullptr);

// v_p(n) for n != 0.
long padic_val(BigInt n, const BigInt& p);
long padic_val_rat(const BigRat& r, const BigInt& p);

bool is_prime(const BigInt& n);
std::vector<long> primes_up_to(long bound);
// Trial division + Pollard rho; throws CapacityError when a composite
// cofactor resists factoring.
std::vector<std::pair<BigInt, long>> factorize(BigInt n);
bool is_squarefree(const BigInt& n);

// Kronecker symbol (a/n), n may be even or negative.
int kronecker(BigInt a, BigInt n);

// Deterministic split-mix style generator for randomized algorithms
// (factoring, relation search).  Seeded per call site for reproducibility.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

std::string to_string(const BigInt& n);
std::string to_string(const BigRat& r);

}  // namespace logcap
