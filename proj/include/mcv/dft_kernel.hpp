#pragma once

#include <vector>

#include "mcv/groupring.hpp"

namespace mcv {

/* Galois orbit of characters: rho and rho^s share one value order d, and a
   Galois-equivariant value family is determined on the orbit by its value at
   the representative.  orbits are in bijection with pairs of divisors
   (d1 | p-1, p^j | p^n); each has exactly phi(d) members. */
struct CharOrbit {
    long a, b;    // representative labels (lex-least)
    long d;       // common value order
    long sD, sG;  // representative's exponent strides
    std::vector<std::pair<long, long>> members;
};

// cached, read-only after construction; orbit sizes sum to |G|
const std::vector<CharOrbit>& char_orbits(const TowerLayer& L);

// Tr_{Q(zeta_d)/Q}(zeta_d^y) for y in [0, d); cached
const std::vector<long>& trace_table(long d);

/* cyclotomic value with cleared denominators in the redundant basis
   1, z, ..., z^(d-1) (not reduced mod Phi_d): value = (1/den) sum num[x] z^x */
struct RedVec {
    long d = 1;
    std::vector<Int> num;
    Int den = 1;
};

// canonical element -> redundant integer vector at order d (v.order() | d)
RedVec cyclo_to_redvec(const CycloElem& v, long d);

/* inverse DFT x(t) = |G|^{-1} sum_rho v_rho rho(sigma_t^{-1}) for a
   Galois-equivariant family, one RedVec per orbit (indexed like
   char_orbits(L)).  orbit sums collapse to rational trace sums, so the
   whole kernel runs in integer arithmetic; `parallel` distributes the
   per-coefficient loop across threads when OpenMP is available. */
RatElem compose_trace(const TowerLayer& L, const std::vector<RedVec>& orbit_vals,
                      bool parallel = false);

}  // namespace mcv
