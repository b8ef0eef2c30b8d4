#pragma once

#include <string>

#include "mcv/numutil.hpp"

namespace mcv {

// valuation with an "at least N" sentinel for residues indistinguishable from 0
struct Valuation {
    long v;
    bool at_least;  // true: v_p >= v (element is 0 mod p^N)
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.v == b.v && a.at_least == b.at_least;
    }
};

/* p-adic integer known mod p^N: residue in [0, p^N), p an odd prime >= 3.
   arithmetic tracks precision as the min of the operands' precisions. */
class PadicInt {
public:
    PadicInt() : p_(3), N_(1), r_(0) {}
    PadicInt(long p, int N);                   // zero at precision N
    PadicInt(long p, int N, const Int& val);   // val reduced mod p^N

    static PadicInt from_rational(long p, int N, const Rat& x);  // NotPIntegral

    long p() const { return p_; }
    int precision() const { return N_; }
    const Int& residue() const { return r_; }
    const Int& modulus() const { return pN_; }

    Valuation valuation() const;
    bool is_zero() const { return r_ == 0; }  // zero at working precision
    bool is_unit() const { return r_ % p_ != 0; }

    PadicInt with_precision(int N) const;  // raise is an error, lower reduces
    PadicInt unit_inverse() const;         // NotAUnit unless is_unit()
    PadicInt pow(unsigned long e) const;

    PadicInt operator-() const;
    PadicInt& operator+=(const PadicInt& o);
    PadicInt& operator-=(const PadicInt& o);
    PadicInt& operator*=(const PadicInt& o);
    friend PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
    friend PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
    friend PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }

    // equality at the min of the two precisions (same p required)
    friend bool operator==(const PadicInt& a, const PadicInt& b);
    friend bool operator!=(const PadicInt& a, const PadicInt& b) {
        return !(a == b);
    }

    std::string str() const;  // "r mod p^N"

private:
    long p_;
    int N_;
    Int r_;
    Int pN_;
    void check_base(const PadicInt& o) const;
};

// Teichmuller representative of a mod p^N (a a unit mod p); NotAUnit otherwise
PadicInt teichmuller(long p, int N, const Int& a);

// a/b tracking lost precision: requires v(b) <= v(a) and b != 0 at working
// precision; result has precision min(Na,Nb) - v(b)
PadicInt padic_ratio(const PadicInt& a, const PadicInt& b);

std::ostream& operator<<(std::ostream& os, const PadicInt& x);

}  // namespace mcv
