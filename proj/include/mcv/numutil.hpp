#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>
#include <vector>

#include "mcv/errors.hpp"

namespace mcv {

using Int = mpz_class;
using Rat = mpq_class;

// sentinel for the valuation of zero
inline constexpr long val_inf = std::numeric_limits<long>::max();

// fraction constructor that canonicalizes (mpq_class(n,d) alone does not)
inline Rat frac(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}
inline Rat frac(const Int& n, const Int& d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

long vp(const Int& x, long p);  // val_inf for x == 0
long vp(const Rat& x, long p);

Int pow_int(const Int& b, unsigned long e);
Int pow_mod(const Int& b, const Int& e, const Int& m);
Int inv_mod(const Int& a, const Int& m);  // DivisionByZero if gcd(a,m) != 1

inline Int lcm_int(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

bool is_prime(long n);
std::vector<long> prime_factors(long n);  // distinct primes, ascending
long euler_phi(long n);

// smallest g that generates (Z/p)^* and (Z/p^2)^* (hence every (Z/p^j)^*, p odd)
long primitive_root_mod_p2(long p);

std::string rat_str(const Rat& x);

}  // namespace mcv
