#pragma once

#include "mcv/bernoulli.hpp"
#include "mcv/characters.hpp"

namespace mcv {

// L_S(chi, 1-k): exact value of the (possibly Euler-stripped) Dirichlet
// L-function of the primitive chi at s = 1-k
struct LValue {
    CycloElem value;
    DirichletChar chi;
    unsigned k = 2;          // the point is s = 1-k
    std::vector<long> S;     // primes whose Euler factors were stripped

    Rat rational_value() const { return value.rational_value(); }
};

// B_{k,chi} = f^{k-1} sum_{a=1..f} chi(a) B_k(a/f) on the primitive character;
// the inclusive upper limit makes the conductor-1, k=1 case equal +1/2
CycloElem gen_bernoulli(const DirichletChar& chi, unsigned k);
Rat gen_bernoulli_rat(const DirichletChar& chi, unsigned k);

// L(chi, 1-k) = -B_{k,chi}/k, primitive, unstripped; PoleAtOne for (trivial, k=1)
LValue l_value(const DirichletChar& chi, unsigned k);

// multiply by prod_{l in S} (1 - chi(l) l^(k-1)); k must match v.k
LValue euler_strip(LValue v, const std::vector<long>& S, unsigned k);

/* class-number cross-checks */
struct ClassNumberFixture {
    long D;  // fundamental discriminant < 0
    long h;  // class number
    long w;  // number of roots of unity
};
const std::vector<ClassNumberFixture>& class_number_fixtures();  // |D| <= 200

struct ClassNumberCheck {
    std::string field;
    Rat lhs, rhs;  // analytic side, arithmetic side
    bool pass;
};
ClassNumberCheck class_number_formula_check();        // Q: zeta(0) = -1/2
ClassNumberCheck class_number_formula_check(long D);  // L(chi_D, 0) = 2h/w

// h^-(Q(zeta_p)) = 2p prod_{chi odd mod p} (-B_{1,chi}/2), exact integer
Int minus_class_number(long p, long bound = 100);

// even k <= p-3 with p | numerator(B_k)
std::vector<unsigned> kummer_irregular_indices(long p);

}  // namespace mcv
