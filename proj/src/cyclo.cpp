#include "mcv/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mcv {

namespace {

/* per-order tables: Phi_d and the rows x^e mod Phi_d for e in [phi(d), d).
   rows have integer entries (Phi_d is monic over Z), built once and shared. */
struct CycloTables {
    long d = 1;
    long phi = 1;
    std::vector<Int> phi_poly;             // ascending, length phi+1
    std::vector<std::vector<Int>> rows;    // rows[e-phi][j], j < phi
};

std::map<long, CycloTables> table_cache;
std::mutex table_mtx;

// exact division of integer polynomials (ascending coeffs), remainder must vanish
std::vector<Int> poly_divexact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        // den is monic in every use below (cyclotomics)
        Int c = num[i + den.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw error("poly_divexact: nonzero remainder");
    return q;
}

const CycloTables& tables_unlocked(long d);

std::vector<Int> compute_phi_poly(long d) {
    if (d == 1) return {Int(-1), Int(1)};  // x - 1
    // (x^d - 1) / prod_{d'|d, d'<d} Phi_d'
    std::vector<Int> num(d + 1, Int(0));
    num[0] = -1;
    num[d] = 1;
    for (long dd = 1; dd < d; ++dd) {
        if (d % dd != 0) continue;
        num = poly_divexact(std::move(num), tables_unlocked(dd).phi_poly);
    }
    return num;
}

const CycloTables& tables_unlocked(long d) {
    auto it = table_cache.find(d);
    if (it != table_cache.end()) return it->second;
    CycloTables t;
    t.d = d;
    t.phi = euler_phi(d);
    t.phi_poly = compute_phi_poly(d);
    // x^phi = -low(Phi); then repeatedly multiply by x and fold
    t.rows.reserve(d - t.phi);
    std::vector<Int> cur(t.phi);
    for (long j = 0; j < t.phi; ++j) cur[j] = -t.phi_poly[j];
    for (long e = t.phi; e < d; ++e) {
        t.rows.push_back(cur);
        if (e + 1 == d) break;
        // cur <- x*cur mod Phi
        Int top = cur[t.phi - 1];
        for (long j = t.phi - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (long j = 0; j < t.phi; ++j) cur[j] -= top * t.phi_poly[j];
    }
    return table_cache.emplace(d, std::move(t)).first->second;
}

const CycloTables& tables(long d) {
    std::lock_guard<std::mutex> lk(table_mtx);
    return tables_unlocked(d);
}

// reduce a redundant coefficient vector (size d, exponents of zeta_d) to canonical
std::vector<Rat> reduce_redundant(long d, const std::vector<Rat>& raw) {
    const CycloTables& t = tables(d);
    std::vector<Rat> out(raw.begin(), raw.begin() + t.phi);
    for (long e = t.phi; e < d; ++e) {
        if (raw[e] == 0) continue;
        const std::vector<Int>& row = t.rows[e - t.phi];
        for (long j = 0; j < t.phi; ++j)
            if (row[j] != 0) out[j] += raw[e] * Rat(row[j]);
    }
    return out;
}

/* rational polynomial helpers for the inverse (extended euclid mod Phi_d) */
using QPoly = std::vector<Rat>;  // ascending, no trailing-zero guarantee

void qtrim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qtrim(r);
    return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qtrim(a);
    return a;
}

// a mod b and the quotient, b nonzero
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
    QPoly q;
    qtrim(a);
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    Rat lead = b.back();
    while (a.size() >= b.size()) {
        Rat c = a.back() / lead;
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) a[off + j] -= c * b[j];
        qtrim(a);
        if (a.empty()) break;
    }
    return {q, a};
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long d) {
    return tables(d).phi_poly;
}

CycloElem CycloElem::zeta_pow(long d, long e) {
    if (d < 1) throw error("zeta_pow: order must be positive");
    std::vector<Rat> raw(d, Rat(0));
    long ee = ((e % d) + d) % d;
    raw[ee] = 1;
    CycloElem x;
    x.d_ = d;
    x.c_ = reduce_redundant(d, raw);
    return x;
}

CycloElem CycloElem::from_coeffs(long d, std::vector<Rat> raw) {
    if (d < 1) throw error("from_coeffs: order must be positive");
    std::vector<Rat> folded(d, Rat(0));
    for (size_t e = 0; e < raw.size(); ++e)
        if (raw[e] != 0) folded[e % d] += raw[e];
    CycloElem x;
    x.d_ = d;
    x.c_ = reduce_redundant(d, folded);
    return x;
}

bool CycloElem::is_zero() const {
    for (const Rat& c : c_)
        if (c != 0) return false;
    return true;
}

bool CycloElem::is_rational() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

Rat CycloElem::rational_value() const {
    if (!is_rational())
        throw error("rational_value: element of order " + std::to_string(d_) +
                    " is not rational");
    return c_[0];
}

CycloElem CycloElem::embedded(long dd) const {
    if (dd % d_ != 0)
        throw OrderMismatch("embedded: " + std::to_string(d_) +
                            " does not divide " + std::to_string(dd));
    if (dd == d_) return *this;
    long stride = dd / d_;
    std::vector<Rat> raw(dd, Rat(0));
    for (size_t j = 0; j < c_.size(); ++j)
        if (c_[j] != 0) raw[(j * stride) % dd] += c_[j];
    CycloElem x;
    x.d_ = dd;
    x.c_ = reduce_redundant(dd, raw);
    return x;
}

CycloElem CycloElem::galois(long s) const {
    long ss = ((s % d_) + d_) % d_;
    if (std::gcd(ss, d_) != 1)
        throw NotAUnit("galois: exponent " + std::to_string(s) +
                       " not a unit mod " + std::to_string(d_));
    std::vector<Rat> raw(d_, Rat(0));
    for (size_t j = 0; j < c_.size(); ++j)
        if (c_[j] != 0) raw[(j * ss) % d_] += c_[j];
    CycloElem x;
    x.d_ = d_;
    x.c_ = reduce_redundant(d_, raw);
    return x;
}

CycloElem CycloElem::operator-() const {
    CycloElem x = *this;
    for (Rat& c : x.c_) c = -c;
    return x;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
    if (d_ != o.d_) {
        long l = std::lcm(d_, o.d_);
        *this = embedded(l);
        return *this += o.embedded(l);
    }
    for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
    if (d_ != o.d_) {
        long l = std::lcm(d_, o.d_);
        *this = embedded(l);
        return *this -= o.embedded(l);
    }
    for (size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& o) {
    if (d_ != o.d_) {
        long l = std::lcm(d_, o.d_);
        *this = embedded(l);
        return *this *= o.embedded(l);
    }
    // convolve into the redundant basis (zeta^d = 1), then reduce
    std::vector<Rat> raw(d_, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            raw[(i + j) % d_] += c_[i] * o.c_[j];
        }
    }
    c_ = reduce_redundant(d_, raw);
    return *this;
}

CycloElem& CycloElem::operator*=(const Rat& s) {
    for (Rat& c : c_) c *= s;
    return *this;
}

CycloElem CycloElem::inv() const {
    if (is_zero()) throw DivisionByZero("cyclo inv of zero");
    if (is_rational()) {
        CycloElem x = *this;
        x.c_[0] = Rat(1) / x.c_[0];
        return x;
    }
    // extended euclid: u*a + v*Phi = gcd (a unit mod Phi since Phi irreducible)
    const CycloTables& t = tables(d_);
    QPoly a(c_.begin(), c_.end());
    qtrim(a);
    QPoly b(t.phi_poly.size());
    for (size_t j = 0; j < t.phi_poly.size(); ++j) b[j] = Rat(t.phi_poly[j]);
    QPoly r0 = b, r1 = a, u0 = {}, u1 = {Rat(1)};
    while (!r1.empty()) {
        auto [q, r2] = qdivmod(r0, r1);
        QPoly u2 = qsub(u0, qmul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r0 = gcd (nonzero constant), u0 * a ≡ r0 mod Phi
    if (r0.size() != 1)
        throw error("cyclo inv: gcd not constant (Phi not coprime to element?)");
    std::vector<Rat> raw(d_, Rat(0));
    for (size_t j = 0; j < u0.size() && j < static_cast<size_t>(d_); ++j)
        raw[j] = u0[j] / r0[0];
    CycloElem x;
    x.d_ = d_;
    x.c_ = reduce_redundant(d_, raw);
    return x;
}

bool operator==(const CycloElem& a, const CycloElem& b) {
    if (a.d_ == b.d_) return a.c_ == b.c_;
    long l = std::lcm(a.d_, b.d_);
    return a.embedded(l).c_ == b.embedded(l).c_;
}

std::string CycloElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        os << c_[j].get_str();
        if (j >= 1) os << "*z^" << j;
        first = false;
    }
    if (first) os << "0";
    if (d_ > 1) os << " (z = zeta_" << d_ << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloElem& x) {
    return os << x.str();
}

}  // namespace mcv
