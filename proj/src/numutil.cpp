#include "mcv/numutil.hpp"

namespace mcv {

long vp(const Int& x, long p) {
    if (x == 0) return val_inf;
    Int q, r = x;
    long v = 0;
    while (true) {
        Int rem;
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(),
                       static_cast<unsigned long>(p));
        if (rem != 0) break;
        r = q;
        ++v;
    }
    return v;
}

long vp(const Rat& x, long p) {
    if (x == 0) return val_inf;
    return vp(x.get_num(), p) - vp(x.get_den(), p);
}

Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Int pow_mod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw DivisionByZero("inv_mod: " + a.get_str() + " not invertible mod " +
                             m.get_str());
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    Int m(n);
    return mpz_probab_prime_p(m.get_mpz_t(), 40) != 0;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    if (n < 0) n = -n;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

long euler_phi(long n) {
    long r = n;
    for (long q : prime_factors(n)) r = r / q * (q - 1);
    return r;
}

long primitive_root_mod_p2(long p) {
    if (p < 3 || !is_prime(p)) throw error("primitive_root_mod_p2: need odd prime");
    Int p2 = Int(p) * p;
    for (long g = 2; g < p; ++g) {
        // order mod p must be p-1: no prime factor q of p-1 may satisfy g^((p-1)/q)=1
        bool ok = true;
        for (long q : prime_factors(p - 1)) {
            if (pow_mod(g, Int((p - 1) / q), Int(p)) == 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // and g^(p-1) != 1 mod p^2 so the order lifts to p(p-1)
        if (pow_mod(g, Int(p - 1), p2) != 1) return g;
    }
    throw error("primitive_root_mod_p2: none found (unreachable for odd primes)");
}

std::string rat_str(const Rat& x) {
    return x.get_str();
}

}  // namespace mcv
