#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mcv/cyclo.hpp"
#include "mcv/padic.hpp"

namespace mcv {

/* Galois layer G_n = Gal(Q(zeta_{p^(n+1)})/Q) = Delta x Z/p^n, working modulus
   m = p^(n+1).  delta = sigma_{omega(g)} generates Delta (g the fixed primitive
   root mod p^2), gamma_n = sigma_{1+p} generates the p-part.  every unit t mod m
   is indexed by (i, j) with sigma_t = delta^i gamma_n^j:
   i(t) = dlog_g(t mod p), j(t) = dlog_{1+p}(t/omega(t) mod m). */
struct TowerLayer {
    long p;
    int n;
    long m;      // p^(n+1)
    long pn;     // p^n
    long g;      // primitive root mod p^2 (stable across the tower)
    long delta_rep, gamma_rep;  // omega(g) mod m and 1+p

    std::vector<long> units;       // ascending, size (p-1) p^n
    std::vector<long> unit_index;  // size m; -1 for non-units
    std::vector<long> iexp, jexp;  // per unit index
    std::vector<long> idx_of_ij;   // (i * p^n + j) -> unit index
    std::vector<long> inv_idx;     // unit index of t^{-1}

    long order() const { return static_cast<long>(units.size()); }
    long index_of(long t) const;       // error on non-unit
    long at_ij(long i, long j) const { return idx_of_ij[((i % (p - 1) + (p - 1)) % (p - 1)) * pn + ((j % pn) + pn) % pn]; }

    // cached, read-only after construction
    static const TowerLayer& get(long p, int n);
};

/* element of Scalar[G_n], dense coefficient vector in unit-index order */
template <class S>
struct GroupRingElem {
    const TowerLayer* layer = nullptr;
    std::vector<S> a;

    GroupRingElem() = default;
    GroupRingElem(const TowerLayer& L, const S& zero)
        : layer(&L), a(L.order(), zero) {}

    S& at(long t) { return a[layer->index_of(t)]; }
    const S& at(long t) const { return a[layer->index_of(t)]; }

    GroupRingElem& operator+=(const GroupRingElem& o) {
        check_same_layer(o);
        for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }
    GroupRingElem& operator-=(const GroupRingElem& o) {
        check_same_layer(o);
        for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }
    friend GroupRingElem operator+(GroupRingElem x, const GroupRingElem& y) { return x += y; }
    friend GroupRingElem operator-(GroupRingElem x, const GroupRingElem& y) { return x -= y; }
    friend bool operator==(const GroupRingElem& x, const GroupRingElem& y) {
        return x.layer == y.layer && x.a == y.a;
    }

    void check_same_layer(const GroupRingElem& o) const {
        if (layer != o.layer) throw error("group ring elements on different layers");
    }
};

using RatElem = GroupRingElem<Rat>;
using CycloGRElem = GroupRingElem<CycloElem>;
using PadicElem = GroupRingElem<PadicInt>;

template <class S>
GroupRingElem<S> scale(GroupRingElem<S> x, const S& c) {
    for (auto& v : x.a) v *= c;
    return x;
}

// left translation: (sigma_t * x)(u) = x(t^{-1} u)
template <class S>
GroupRingElem<S> sigma_mul(long t, const GroupRingElem<S>& x) {
    const TowerLayer& L = *x.layer;
    GroupRingElem<S> out = x;
    long ti = L.units[L.inv_idx[L.index_of(t % L.m)]];
    for (long u = 0; u < L.order(); ++u) {
        long src = (L.units[u] * ti) % L.m;
        out.a[u] = x.a[L.unit_index[src]];
    }
    return out;
}

// full convolution product (desk-scale O(|G|^2), reference implementation)
template <class S>
GroupRingElem<S> convolve(const GroupRingElem<S>& x, const GroupRingElem<S>& y) {
    x.check_same_layer(y);
    const TowerLayer& L = *x.layer;
    GroupRingElem<S> out = x;
    for (auto& v : out.a) v = v - v;  // zero of the right shape/precision
    for (long s = 0; s < L.order(); ++s) {
        for (long t = 0; t < L.order(); ++t) {
            long st = (L.units[s] * L.units[t]) % L.m;
            out.a[L.unit_index[st]] += x.a[s] * y.a[t];
        }
    }
    return out;
}

// push coefficients along G_n -> G_{n-1} (sum over fibers t mod p^n)
template <class S>
GroupRingElem<S> project(const GroupRingElem<S>& x) {
    const TowerLayer& L = *x.layer;
    if (L.n < 1) throw error("project: already at the bottom layer");
    const TowerLayer& Lo = TowerLayer::get(L.p, L.n - 1);
    GroupRingElem<S> out(Lo, x.a[0] - x.a[0]);
    for (long u = 0; u < L.order(); ++u)
        out.a[Lo.unit_index[L.units[u] % Lo.m]] += x.a[u];
    return out;
}

/* the dual group: character rho_{a,b}(sigma_t) = zeta_d^(sD i(t) + sG j(t)),
   d = lcm(order of zeta_{p-1}^a, order of zeta_{p^n}^b) */
struct CharacterTable {
    struct Entry {
        long a, b;   // labels: rho(delta) = zeta_{p-1}^a, rho(gamma) = zeta_{p^n}^b
        long d;      // value order
        long sD, sG; // exponent strides
    };
    const TowerLayer* layer;
    std::vector<Entry> chars;  // all (p-1) p^n of them, (a,b) lex order

    static const CharacterTable& get(const TowerLayer& L);
    const Entry& entry(long a, long b) const;
    long exp_at(const Entry& c, long unit_idx) const {
        const TowerLayer& L = *layer;
        return (c.sD * L.iexp[unit_idx] + c.sG * L.jexp[unit_idx]) % c.d;
    }
    CycloElem value(const Entry& c, long unit_idx) const;
    // Teichmuller regime: Delta-character omega^a at sigma_t, p-adic
    PadicInt teich_value(long a, long unit_idx, int N) const;
};

// rho-component sum_t x(t) rho(sigma_t) for one character
CycloElem component(const RatElem& x, long a, long b);
CycloElem component(const CycloGRElem& x, long a, long b);

// all components at once (exact cyclotomic regime)
std::map<std::pair<long, long>, CycloElem> rho_decompose(const RatElem& x);

// inverse DFT over cyclotomic rationals: x(t) = |G|^{-1} sum_rho v_rho rho(sigma_t^{-1});
// the value map must be complete
CycloGRElem rho_compose(const TowerLayer& L,
                        const std::map<std::pair<long, long>, CycloElem>& values);
// same, asserting every coefficient lands in Q (Galois-equivariant value maps)
RatElem rho_compose_rat(const TowerLayer& L,
                        const std::map<std::pair<long, long>, CycloElem>& values);

/* p-adic regime: only the Delta-direction is available (p-power roots of unity
   do not live in Q_p, and dividing by |G_n| = (p-1)p^n loses precision) */
PadicInt component_delta(const PadicElem& x, long a);
PadicElem rho_compose_delta(const TowerLayer& L, const std::vector<PadicInt>& vals);

/* abelian reduced norm: on units K_1 = A^*, so the map certifies rather than
   transforms; the component list (all nonzero) is the certificate */
struct ReducedNorm {
    RatElem x;
    std::map<std::pair<long, long>, CycloElem> components;
};
ReducedNorm reduced_norm_abelian(const RatElem& x);

}  // namespace mcv
