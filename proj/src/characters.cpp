#include "mcv/characters.hpp"

#include <numeric>
#include <sstream>

namespace mcv {

namespace {

// f = q^j for an odd prime q, or 1; returns q (0 for f = 1)
long odd_prime_power_base(long f) {
    if (f == 1) return 0;
    auto ps = prime_factors(f);
    if (ps.size() != 1 || ps[0] == 2)
        throw error("character conductor must be an odd prime power, got " +
                    std::to_string(f));
    return ps[0];
}

std::vector<long> build_dlog(long f, long g) {
    std::vector<long> dl(f, -1);
    long phi = euler_phi(f);
    Int cur(1);
    for (long i = 0; i < phi; ++i) {
        long r = static_cast<long>(mpz_get_ui(cur.get_mpz_t())) % f;
        if (dl[r] != -1) throw error("generator " + std::to_string(g) +
                                     " does not generate (Z/" + std::to_string(f) + ")^*");
        dl[r] = i;
        cur = (cur * g) % f;
    }
    return dl;
}

}  // namespace

DirichletChar DirichletChar::trivial_char() {
    DirichletChar c;
    c.backend_ = Backend::trivial;
    c.modulus_ = 1;
    c.conductor_ = 1;
    c.order_ = 1;
    c.odd_ = false;
    c.gen_ = 1;
    c.exp_ = 0;
    c.dlog_.clear();
    c.disc_ = 0;
    return c;
}

DirichletChar DirichletChar::cyclic(long f, long g, long e, long d) {
    if (f < 1 || d < 1 || e < 0 || e >= d)
        throw error("bad character data chi:" + std::to_string(f) + ":" +
                    std::to_string(g) + ":" + std::to_string(e) + ":" +
                    std::to_string(d));
    if (f == 1) {
        if (e != 0 && d / std::gcd(e, d) != 1)
            throw error("conductor-1 character must be trivial");
        return trivial_char();
    }
    long q = odd_prime_power_base(f);
    long phi = euler_phi(f);
    (void)build_dlog(f, ((g % f) + f) % f);  // validates that g generates (Z/f)^*
    // normalize the image: chi(g) = zeta_{d'}^{e'} with gcd(e', d') = 1
    long gg = std::gcd(e, d);
    long dp = (e == 0) ? 1 : d / gg;
    long ep = (e == 0) ? 0 : e / gg;
    if (phi % dp != 0)
        throw error("character order " + std::to_string(dp) +
                    " does not divide phi(" + std::to_string(f) + ")");
    if (dp == 1) {
        // trivial core but the stated modulus survives as the working modulus
        DirichletChar c = trivial_char();
        c.modulus_ = f;
        return c;
    }
    // minimal conductor: smallest q^i with dp | phi(q^i)
    long f0 = q, ph0 = q - 1;
    while (ph0 % dp != 0) {
        f0 *= q;
        ph0 *= q;
        if (f0 > f) throw error("internal: conductor search overran modulus");
    }
    DirichletChar c;
    c.backend_ = Backend::cyclic;
    c.modulus_ = f;
    c.conductor_ = f0;
    c.order_ = dp;
    c.gen_ = g % f0;
    c.exp_ = ep;
    c.dlog_ = build_dlog(f0, c.gen_);
    // parity: chi(-1) = zeta^{e' * dlog(-1)}; -1 = g^{phi(f0)/2}
    long dl_m1 = c.dlog_[f0 - 1];
    c.odd_ = ((ep * (dl_m1 % dp)) % dp) != 0;
    return c;
}

DirichletChar DirichletChar::kronecker(long D) {
    if (!is_fundamental_discriminant(D))
        throw error("kronecker character needs a fundamental discriminant, got " +
                    std::to_string(D));
    DirichletChar c;
    c.backend_ = Backend::kronecker;
    c.modulus_ = std::abs(D);
    c.conductor_ = std::abs(D);
    c.order_ = (D == 1) ? 1 : 2;
    c.odd_ = D < 0;
    c.disc_ = D;
    return c;
}

DirichletChar DirichletChar::parse(const std::string& s) {
    std::istringstream is(s);
    std::string head;
    std::getline(is, head, ':');
    if (head == "chi") {
        long f, g, e, d;
        char c1, c2, c3;
        std::istringstream rest(s.substr(4));
        if (!(rest >> f >> c1 >> g >> c2 >> e >> c3 >> d) || c1 != ':' ||
            c2 != ':' || c3 != ':')
            throw error("malformed character string: " + s);
        return cyclic(f, g, e, d);
    }
    if (head == "kron") {
        long D;
        std::istringstream rest(s.substr(5));
        if (!(rest >> D)) throw error("malformed character string: " + s);
        return kronecker(D);
    }
    throw error("malformed character string: " + s);
}

std::string DirichletChar::format() const {
    switch (backend_) {
        case Backend::trivial:
            return "chi:1:1:0:1";
        case Backend::cyclic:
            return "chi:" + std::to_string(conductor_) + ":" + std::to_string(gen_) +
                   ":" + std::to_string(exp_) + ":" + std::to_string(order_);
        case Backend::kronecker:
            return "kron:" + std::to_string(disc_);
    }
    return "";
}

std::optional<long> DirichletChar::value_exp(const Int& a) const {
    if (modulus_ > 1) {
        Int g;
        mpz_gcd_ui(g.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(modulus_));
        if (g != 1) return std::nullopt;
    }
    switch (backend_) {
        case Backend::trivial:
            return 0;
        case Backend::cyclic: {
            Int r;
            mpz_mod_ui(r.get_mpz_t(), a.get_mpz_t(),
                       static_cast<unsigned long>(conductor_));
            long dl = dlog_[mpz_get_ui(r.get_mpz_t())];
            return (exp_ * (dl % order_)) % order_;
        }
        case Backend::kronecker: {
            // (D/.) is periodic mod |D| for fundamental D; reduce first
            Int d(disc_), r;
            mpz_mod_ui(r.get_mpz_t(), a.get_mpz_t(),
                       static_cast<unsigned long>(modulus_));
            int k = mpz_kronecker(d.get_mpz_t(), r.get_mpz_t());
            return k == 1 ? 0 : 1;  // k == -1; 0 excluded by the gcd test
        }
    }
    return std::nullopt;
}

CycloElem DirichletChar::value(const Int& a) const {
    auto e = value_exp(a);
    if (!e) return CycloElem::from_coeffs(order_, std::vector<Rat>(1, Rat(0)));
    return CycloElem::zeta_pow(order_, *e);
}

DirichletChar DirichletChar::inflated(long m) const {
    if (m % conductor_ != 0)
        throw OrderMismatch("inflated: conductor " + std::to_string(conductor_) +
                            " does not divide " + std::to_string(m));
    DirichletChar c = *this;
    c.modulus_ = m;
    return c;
}

bool operator==(const DirichletChar& a, const DirichletChar& b) {
    if (a.modulus_ != b.modulus_ || a.conductor_ != b.conductor_ ||
        a.order_ != b.order_ || a.odd_ != b.odd_)
        return false;
    // same values on a generator set decides it; compare pointwise on units
    for (long t = 1; t < a.conductor_; ++t) {
        if (std::gcd(t, a.conductor_) != 1) continue;
        if (a.value_exp(Int(t)) != b.value_exp(Int(t))) return false;
    }
    return true;
}

bool is_fundamental_discriminant(long D) {
    if (D == 1) return true;  // trivial character convention
    if (D == 0) return false;
    long d4 = ((D % 4) + 4) % 4;
    auto squarefree = [](long n) {
        n = std::abs(n);
        for (long q = 2; q * q <= n; ++q)
            if (n % (q * q) == 0) return false;
        return true;
    };
    if (d4 == 1) return squarefree(D);
    if (d4 == 0) {
        long m = D / 4;
        long m4 = ((m % 4) + 4) % 4;
        return (m4 == 2 || m4 == 3) && squarefree(m);
    }
    return false;
}

}  // namespace mcv
