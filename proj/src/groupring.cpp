#include "mcv/groupring.hpp"

#include <cassert>
#include <memory>
#include <mutex>
#include <numeric>

#include "mcv/errors.hpp"
#include "mcv/numutil.hpp"

namespace mcv {

long TowerLayer::index_of(long t) const {
    long r = ((t % m) + m) % m;
    long ix = unit_index[r];
    if (ix < 0) throw error("not a unit modulo " + std::to_string(m));
    return ix;
}

namespace {

std::unique_ptr<TowerLayer> build_layer(long p, int n) {
    if (p < 3 || !is_prime(p)) throw error("tower prime must be an odd prime");
    if (n < 0) throw error("negative tower layer");
    auto L = std::make_unique<TowerLayer>();
    L->p = p;
    L->n = n;
    L->pn = 1;
    for (int i = 0; i < n; ++i) L->pn *= p;
    L->m = L->pn * p;
    L->g = primitive_root_mod_p2(p);
    L->gamma_rep = 1 + p;

    // discrete log base g mod p (Delta direction)
    std::vector<long> dlog_p(p, -1);
    for (long i = 0, acc = 1; i < p - 1; ++i, acc = acc * L->g % p) dlog_p[acc] = i;

    // discrete log base 1+p mod m (Gamma direction, on the 1 mod p subgroup)
    std::vector<long> dlog_gamma(L->m, -1);
    {
        Int acc = 1;
        for (long j = 0; j < L->pn; ++j) {
            dlog_gamma[acc.get_si()] = j;
            acc = acc * L->gamma_rep % L->m;
        }
    }

    long N = (p - 1) * L->pn;
    L->units.reserve(N);
    L->unit_index.assign(L->m, -1);
    L->idx_of_ij.assign(N, -1);
    L->delta_rep = pow_mod(Int(L->g), Int(L->pn), Int(L->m)).get_si();
    for (long t = 1; t < L->m; ++t) {
        if (t % p == 0) continue;
        long ix = static_cast<long>(L->units.size());
        L->units.push_back(t);
        L->unit_index[t] = ix;
        long i = dlog_p[t % p];
        // omega(t) = t^(p^n) mod m is the order-(p-1) part; t/omega(t) is 1 mod p
        long om = pow_mod(Int(t), Int(L->pn), Int(L->m)).get_si();
        long brack = Int(Int(t) * pow_mod(Int(om), Int(p - 2), Int(L->m)) % L->m).get_si();
        long j = dlog_gamma[brack];
        assert(i >= 0 && j >= 0);
        L->iexp.push_back(i);
        L->jexp.push_back(j);
        long slot = i * L->pn + j;
        assert(L->idx_of_ij[slot] == -1);  // (i,j) must be a bijection
        L->idx_of_ij[slot] = ix;
    }
    assert(static_cast<long>(L->units.size()) == N);

    L->inv_idx.resize(N);
    for (long ix = 0; ix < N; ++ix) {
        long i = (p - 1 - L->iexp[ix]) % (p - 1);
        long j = (L->pn - L->jexp[ix]) % L->pn;
        L->inv_idx[ix] = L->idx_of_ij[i * L->pn + j];
    }
    return L;
}

std::mutex layer_mx;
std::map<std::pair<long, int>, std::unique_ptr<TowerLayer>> layer_cache;

std::mutex table_mx;
std::map<const TowerLayer*, std::unique_ptr<CharacterTable>> table_cache;

}  // namespace

const TowerLayer& TowerLayer::get(long p, int n) {
    std::lock_guard<std::mutex> lk(layer_mx);
    auto& slot = layer_cache[{p, n}];
    if (!slot) slot = build_layer(p, n);
    return *slot;
}

const CharacterTable& CharacterTable::get(const TowerLayer& L) {
    std::lock_guard<std::mutex> lk(table_mx);
    auto& slot = table_cache[&L];
    if (!slot) {
        auto T = std::make_unique<CharacterTable>();
        T->layer = &L;
        T->chars.reserve(L.order());
        for (long a = 0; a < L.p - 1; ++a) {
            long ordD = (L.p - 1) / std::gcd(a, L.p - 1);
            for (long b = 0; b < L.pn; ++b) {
                long ordG = L.pn / std::gcd(b, L.pn);
                Entry e;
                e.a = a;
                e.b = b;
                e.d = std::lcm(ordD, ordG);
                e.sD = a ? (e.d / ordD) * (a / std::gcd(a, L.p - 1)) % e.d : 0;
                e.sG = b ? (e.d / ordG) * (b / std::gcd(b, L.pn)) % e.d : 0;
                T->chars.push_back(e);
            }
        }
        slot = std::move(T);
    }
    return *slot;
}

const CharacterTable::Entry& CharacterTable::entry(long a, long b) const {
    const TowerLayer& L = *layer;
    long ar = ((a % (L.p - 1)) + L.p - 1) % (L.p - 1);
    long br = ((b % L.pn) + L.pn) % L.pn;
    return chars[ar * L.pn + br];
}

CycloElem CharacterTable::value(const Entry& c, long unit_idx) const {
    return CycloElem::zeta_pow(c.d, exp_at(c, unit_idx));
}

PadicInt CharacterTable::teich_value(long a, long unit_idx, int N) const {
    const TowerLayer& L = *layer;
    PadicInt w = teichmuller(L.p, N, Int(L.g));
    long e = ((a % (L.p - 1)) + L.p - 1) % (L.p - 1) * L.iexp[unit_idx] % (L.p - 1);
    return w.pow(static_cast<unsigned long>(e));
}

namespace {

// shared bucket fold: coefficients of sum_t x(t) zeta_d^(sign * e(t))
template <class S>
std::vector<S> exponent_buckets(const GroupRingElem<S>& x,
                                const CharacterTable::Entry& c, int sign,
                                const S& zero) {
    const CharacterTable& T = CharacterTable::get(*x.layer);
    std::vector<S> bucket(c.d, zero);
    for (long u = 0; u < x.layer->order(); ++u) {
        long e = T.exp_at(c, u);
        if (sign < 0) e = (c.d - e) % c.d;
        bucket[e] += x.a[u];
    }
    return bucket;
}

}  // namespace

CycloElem component(const RatElem& x, long a, long b) {
    const CharacterTable& T = CharacterTable::get(*x.layer);
    const auto& c = T.entry(a, b);
    auto bucket = exponent_buckets(x, c, +1, Rat(0));
    return CycloElem::from_coeffs(c.d, bucket);
}

CycloElem component(const CycloGRElem& x, long a, long b) {
    const CharacterTable& T = CharacterTable::get(*x.layer);
    const auto& c = T.entry(a, b);
    CycloElem acc;
    auto bucket = exponent_buckets(x, c, +1, CycloElem());
    for (long e = 0; e < c.d; ++e)
        if (!bucket[e].is_zero()) acc = acc + bucket[e] * CycloElem::zeta_pow(c.d, e);
    return acc;
}

std::map<std::pair<long, long>, CycloElem> rho_decompose(const RatElem& x) {
    const CharacterTable& T = CharacterTable::get(*x.layer);
    std::map<std::pair<long, long>, CycloElem> out;
    for (const auto& c : T.chars) {
        auto bucket = exponent_buckets(x, c, +1, Rat(0));
        out.emplace(std::make_pair(c.a, c.b), CycloElem::from_coeffs(c.d, bucket));
    }
    return out;
}

CycloGRElem rho_compose(const TowerLayer& L,
                        const std::map<std::pair<long, long>, CycloElem>& values) {
    const CharacterTable& T = CharacterTable::get(L);
    if (static_cast<long>(values.size()) != L.order())
        throw MissingRoots("character value map incomplete: " +
                           std::to_string(values.size()) + " of " +
                           std::to_string(L.order()));
    // the working field: exponent of the group joined with the value orders
    // (a twist can force roots of unity the group itself does not need)
    long D = (L.p - 1) * L.pn;
    for (const auto& [ab, v] : values) D = std::lcm(D, v.order());
    CycloGRElem out(L, CycloElem());
    std::vector<Rat> raw(D);
    for (long u = 0; u < L.order(); ++u) {
        for (auto& r : raw) r = 0;
        for (const auto& c : T.chars) {
            const CycloElem& v = values.at({c.a, c.b});
            if (v.is_zero()) continue;
            // v * zeta_d^{-e} accumulated in the redundant order-D basis
            long dd = std::lcm(v.order(), c.d);
            long e = T.exp_at(c, u);
            long shift = (c.d - e) % c.d * (dd / c.d);
            long stride = D / dd;
            const CycloElem vd = v.embedded(dd);
            const auto& cf = vd.coeffs();
            for (size_t jj = 0; jj < cf.size(); ++jj) {
                if (cf[jj] == 0) continue;
                raw[(static_cast<long>(jj) + shift) % dd * stride] += cf[jj];
            }
        }
        CycloElem s = CycloElem::from_coeffs(D, raw);
        out.a[u] = s * frac(1, L.order());
    }
    return out;
}

RatElem rho_compose_rat(const TowerLayer& L,
                        const std::map<std::pair<long, long>, CycloElem>& values) {
    CycloGRElem z = rho_compose(L, values);
    RatElem out(L, Rat(0));
    for (long u = 0; u < L.order(); ++u) {
        if (!z.a[u].is_rational())
            throw error("rho_compose: coefficient at index " + std::to_string(u) +
                        " is not rational");
        out.a[u] = z.a[u].rational_value();
    }
    return out;
}

PadicInt component_delta(const PadicElem& x, long a) {
    const TowerLayer& L = *x.layer;
    int N = x.a[0].precision();
    PadicInt w = teichmuller(L.p, N, Int(L.g));
    // bucket per i(t), then one pass of Teichmuller powers
    std::vector<PadicInt> bucket(L.p - 1, PadicInt(L.p, N, 0));
    for (long u = 0; u < L.order(); ++u) bucket[L.iexp[u]] += x.a[u];
    PadicInt acc(L.p, N, 0);
    long ar = ((a % (L.p - 1)) + L.p - 1) % (L.p - 1);
    for (long i = 0; i < L.p - 1; ++i)
        acc += bucket[i] * w.pow(static_cast<unsigned long>(ar * i % (L.p - 1)));
    return acc;
}

PadicElem rho_compose_delta(const TowerLayer& L, const std::vector<PadicInt>& vals) {
    if (L.n > 0)
        throw NonInvertibleOrder("p-adic recomposition needs p invertible in |G|; "
                                 "only the bottom layer (Delta-only) qualifies");
    if (static_cast<long>(vals.size()) != L.p - 1)
        throw MissingRoots("need one value per Delta-character");
    int N = vals[0].precision();
    PadicInt w = teichmuller(L.p, N, Int(L.g));
    PadicInt inv_order = PadicInt(L.p, N, L.p - 1).unit_inverse();
    PadicElem out(L, PadicInt(L.p, N, 0));
    for (long u = 0; u < L.order(); ++u) {
        long i = L.iexp[u];
        PadicInt acc(L.p, N, 0);
        for (long a = 0; a < L.p - 1; ++a) {
            long e = (L.p - 1 - a * i % (L.p - 1)) % (L.p - 1);
            acc += vals[a] * w.pow(static_cast<unsigned long>(e));
        }
        out.a[u] = acc * inv_order;
    }
    return out;
}

ReducedNorm reduced_norm_abelian(const RatElem& x) {
    ReducedNorm rn;
    rn.x = x;
    rn.components = rho_decompose(x);
    std::string zeros;
    for (const auto& [key, v] : rn.components) {
        if (v.is_zero()) {
            if (!zeros.empty()) zeros += ", ";
            zeros += "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
        }
    }
    if (!zeros.empty())
        throw NotAUnit("vanishing components: " + zeros);
    return rn;
}

}  // namespace mcv
