#pragma once

#include "logcap/polynomial.hpp"

namespace logcap {

// Factorization of monic integer polynomials over Z (Zassenhaus: modular
// factorization, Hensel lifting, subset recombination).
std::vector<std::vector<BigInt>> zpoly_factor_monic(const std::vector<BigInt>& f);
bool zpoly_irreducible(const std::vector<BigInt>& f);

}  // namespace logcap
