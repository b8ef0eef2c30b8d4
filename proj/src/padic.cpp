#include "mcv/padic.hpp"

#include <ostream>

namespace mcv {

PadicInt::PadicInt(long p, int N) : p_(p), N_(N), r_(0) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw error("PadicInt: p must be an odd prime (got " + std::to_string(p) + ")");
    if (N < 1) throw error("PadicInt: precision must be >= 1");
    pN_ = pow_int(Int(p), static_cast<unsigned long>(N));
}

PadicInt::PadicInt(long p, int N, const Int& val) : PadicInt(p, N) {
    mpz_mod(r_.get_mpz_t(), val.get_mpz_t(), pN_.get_mpz_t());
}

PadicInt PadicInt::from_rational(long p, int N, const Rat& x) {
    long vden = vp(x.get_den(), p);
    if (vden > 0)
        throw NotPIntegral("from_rational: denominator " + x.get_den().get_str() +
                           " divisible by " + std::to_string(p));
    PadicInt r(p, N);
    Int den_inv = inv_mod(x.get_den(), r.pN_);
    r.r_ = x.get_num() * den_inv;
    mpz_mod(r.r_.get_mpz_t(), r.r_.get_mpz_t(), r.pN_.get_mpz_t());
    return r;
}

Valuation PadicInt::valuation() const {
    if (r_ == 0) return {static_cast<long>(N_), true};
    return {vp(r_, p_), false};
}

PadicInt PadicInt::with_precision(int N) const {
    if (N > N_)
        throw PrecisionInsufficient("with_precision: cannot raise " +
                                    std::to_string(N_) + " to " + std::to_string(N));
    PadicInt r(p_, N);
    mpz_mod(r.r_.get_mpz_t(), r_.get_mpz_t(), r.pN_.get_mpz_t());
    return r;
}

PadicInt PadicInt::unit_inverse() const {
    if (!is_unit()) throw NotAUnit("unit_inverse: " + str());
    PadicInt r(p_, N_);
    r.r_ = inv_mod(r_, pN_);
    return r;
}

PadicInt PadicInt::pow(unsigned long e) const {
    PadicInt r(p_, N_);
    r.r_ = pow_mod(r_, Int(e), pN_);
    return r;
}

PadicInt PadicInt::operator-() const {
    PadicInt r(p_, N_);
    if (r_ != 0) r.r_ = pN_ - r_;
    return r;
}

void PadicInt::check_base(const PadicInt& o) const {
    if (p_ != o.p_)
        throw BaseMismatch("p-adic arithmetic across primes " + std::to_string(p_) +
                           " and " + std::to_string(o.p_));
}

PadicInt& PadicInt::operator+=(const PadicInt& o) {
    check_base(o);
    if (o.N_ < N_) *this = with_precision(o.N_);
    r_ += o.r_;
    mpz_mod(r_.get_mpz_t(), r_.get_mpz_t(), pN_.get_mpz_t());
    return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& o) {
    check_base(o);
    if (o.N_ < N_) *this = with_precision(o.N_);
    r_ -= o.r_;
    mpz_mod(r_.get_mpz_t(), r_.get_mpz_t(), pN_.get_mpz_t());
    return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& o) {
    check_base(o);
    if (o.N_ < N_) *this = with_precision(o.N_);
    r_ *= o.r_;
    mpz_mod(r_.get_mpz_t(), r_.get_mpz_t(), pN_.get_mpz_t());
    return *this;
}

bool operator==(const PadicInt& a, const PadicInt& b) {
    if (a.p_ != b.p_) return false;
    int N = std::min(a.N_, b.N_);
    Int m = pow_int(Int(a.p_), static_cast<unsigned long>(N));
    Int da = a.r_ % m, db = b.r_ % m;
    return da == db;
}

std::string PadicInt::str() const {
    return r_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(N_);
}

PadicInt teichmuller(long p, int N, const Int& a) {
    PadicInt w(p, N, a);
    if (!w.is_unit())
        throw NotAUnit("teichmuller: " + a.get_str() + " not a unit at p = " +
                       std::to_string(p));
    // x -> x^p gains at least one digit of stability per step
    Int r = w.residue();
    for (int i = 0; i < N + 1; ++i) r = pow_mod(r, Int(p), w.modulus());
    return PadicInt(p, N, r);
}

PadicInt padic_ratio(const PadicInt& a, const PadicInt& b) {
    if (a.p() != b.p())
        throw BaseMismatch("padic_ratio across primes " + std::to_string(a.p()) +
                           " and " + std::to_string(b.p()));
    if (b.is_zero()) throw DivisionByZero("padic_ratio: denominator 0 mod p^N");
    long vb = b.valuation().v;
    long va = a.valuation().v;
    if (!a.is_zero() && va < vb)
        throw NotPIntegral("padic_ratio: v(num) = " + std::to_string(va) +
                           " < v(den) = " + std::to_string(vb));
    int N = std::min(a.precision(), b.precision()) - static_cast<int>(vb);
    if (N < 1)
        throw PrecisionInsufficient("padic_ratio: no digits left after shifting by " +
                                    std::to_string(vb));
    Int pv = pow_int(Int(a.p()), static_cast<unsigned long>(vb));
    PadicInt num(a.p(), N, a.residue() / pv);
    PadicInt den(a.p(), N, b.residue() / pv);
    return num * den.unit_inverse();
}

std::ostream& operator<<(std::ostream& os, const PadicInt& x) {
    return os << x.str();
}

}  // namespace mcv
