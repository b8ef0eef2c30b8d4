#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcv/cyclo.hpp"

namespace mcv {

/* Dirichlet character: a primitive core of conductor f given by exact
   root-of-unity values, inflated to a working modulus m (f | m) and extended
   by zero to non-units mod m.

   cyclic presentation (serialized "chi:f:g:e:d"): f an odd prime power or 1,
   g a generator of (Z/f)^*, chi(g) = zeta_d^e.  kronecker presentation
   ("kron:D"): the quadratic character (D/.) of a fundamental discriminant,
   whose group (Z/|D|)^* need not be cyclic. */
class DirichletChar {
public:
    DirichletChar() = default;  // member defaults give the trivial character

    static DirichletChar trivial_char();
    static DirichletChar cyclic(long f, long g, long e, long d);
    static DirichletChar kronecker(long D);
    static DirichletChar parse(const std::string& s);

    std::string format() const;

    long modulus() const { return modulus_; }
    long conductor() const { return conductor_; }
    long order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }
    bool is_odd() const { return odd_; }

    // value as exponent of zeta_order; nullopt when gcd(a, modulus) > 1
    std::optional<long> value_exp(const Int& a) const;
    CycloElem value(const Int& a) const;  // zero element when not a unit

    // same primitive core, modulus raised to m (conductor | m required)
    DirichletChar inflated(long m) const;
    DirichletChar primitive() const { return inflated(conductor_); }

    friend bool operator==(const DirichletChar& a, const DirichletChar& b);

private:
    enum class Backend { trivial, cyclic, kronecker };
    Backend backend_ = Backend::trivial;
    long modulus_ = 1;
    long conductor_ = 1;
    long order_ = 1;
    bool odd_ = false;
    // cyclic core data (conductor-level)
    long gen_ = 1, exp_ = 0;
    std::vector<long> dlog_;  // index a mod conductor -> dlog base gen_, -1 non-unit
    // kronecker core data
    long disc_ = 0;
};

bool is_fundamental_discriminant(long D);

}  // namespace mcv
