#pragma once

#include <iosfwd>
#include <vector>

#include "mcv/numutil.hpp"

namespace mcv {

/* element of Q(zeta_d), stored in the canonical power basis
   1, z, ..., z^(phi(d)-1) after reduction mod the d-th cyclotomic polynomial.
   binary operations on mismatched orders embed both sides into Q(zeta_lcm). */
class CycloElem {
public:
    CycloElem() : d_(1), c_(1, Rat(0)) {}                      // rational zero
    explicit CycloElem(const Rat& r) : d_(1), c_(1, r) {}
    explicit CycloElem(long n) : d_(1), c_(1, Rat(n)) {}

    static CycloElem zeta_pow(long d, long e);                 // zeta_d^e
    static CycloElem from_coeffs(long d, std::vector<Rat> raw);  // indices taken mod d

    long order() const { return d_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // error unless is_rational()

    CycloElem embedded(long dd) const;  // OrderMismatch unless d_ | dd
    CycloElem galois(long s) const;     // z -> z^s; NotAUnit unless gcd(s,d)=1
    CycloElem inv() const;              // DivisionByZero on zero
    CycloElem conj() const { return galois(d_ <= 2 ? 1 : d_ - 1); }

    CycloElem operator-() const;
    CycloElem& operator+=(const CycloElem& o);
    CycloElem& operator-=(const CycloElem& o);
    CycloElem& operator*=(const CycloElem& o);
    CycloElem& operator*=(const Rat& s);

    friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
    friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
    friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
    friend CycloElem operator*(CycloElem a, const Rat& s) { return a *= s; }
    friend CycloElem operator*(const Rat& s, CycloElem a) { return a *= s; }
    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) {
        return a * b.inv();
    }
    friend bool operator==(const CycloElem& a, const CycloElem& b);
    friend bool operator!=(const CycloElem& a, const CycloElem& b) {
        return !(a == b);
    }

    std::string str() const;  // polynomial in z with the order annotated

private:
    long d_;
    std::vector<Rat> c_;  // size phi(d_)
};

std::ostream& operator<<(std::ostream& os, const CycloElem& x);

// integer coefficients of Phi_d (monic, ascending), exposed for tests
const std::vector<Int>& cyclotomic_polynomial(long d);

}  // namespace mcv
