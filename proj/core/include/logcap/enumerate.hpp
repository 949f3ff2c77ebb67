#pragma once

#include "logcap/matrix.hpp"

#include <functional>

namespace logcap {

// Fincke-Pohst enumeration over an exact rational positive-definite Gram
// matrix: visits every nonzero x (up to sign) with x^T G x <= bound.
// The callback returns false to stop early.  Throws CapacityError when
// max_nodes is exceeded, InputError when G is not positive definite.
void enumerate_short_vectors(const QMat& G, const BigRat& bound,
                             const std::function<bool(const std::vector<BigInt>&)>& visit,
                             long max_nodes = 2000000);

}  // namespace logcap
