#pragma once

#include "mcv/numutil.hpp"

namespace mcv {

// B_0 = 1, B_1 = -1/2, B_k = 0 for odd k >= 3; cached and thread-safe
const Rat& bernoulli(unsigned k);

// value of the Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j x^(k-j)
Rat bernoulli_poly_eval(unsigned k, const Rat& x);

}  // namespace mcv
