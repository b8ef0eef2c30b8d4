#include "mcv/zeta_tower.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace mcv {

std::vector<long> effective_strip_set(long p, const DirichletChar& chi,
                                      std::vector<long> S) {
    for (long l : S)
        if (!is_prime(l)) throw error("strip set entry " + std::to_string(l) +
                                      " is not prime");
    S.push_back(p);
    for (long q : prime_factors(chi.conductor())) S.push_back(q);
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

DirichletChar rho_as_dirichlet(const TowerLayer& L, long a, long b) {
    const CharacterTable& T = CharacterTable::get(L);
    const auto& c = T.entry(a, b);
    if (c.d == 1) return DirichletChar::trivial_char();
    long e = T.exp_at(c, L.index_of(L.g));  // rho(sigma_g) = zeta_d^e
    return DirichletChar::cyclic(L.m, L.g, e, c.d);
}

namespace {

// denominator-clearing data for u -> M^k B_k(u/M): integer Horner coefficients
// of Dk M^k B_k(u/M) = sum_j C(k,j) (Dk B_j) M^j u^(k-j)
struct BernoulliKernel {
    Int Dk;                // lcm of the B_j denominators, j <= k
    Int den;               // k * M * Dk: denominator of -(1/k) M^(k-1) B_k(u/M)
    std::vector<Int> cj;   // Horner coefficients, ascending j

    BernoulliKernel(unsigned k, long M) {
        Dk = 1;
        for (unsigned j = 0; j <= k; ++j)
            Dk = lcm_int(Dk, Int(bernoulli(j).get_den()));
        cj.resize(k + 1);
        for (unsigned j = 0; j <= k; ++j) {
            Rat bj = bernoulli(j) * Rat(Dk);
            assert(bj.get_den() == 1);
            cj[j] = binom(k, j) * bj.get_num() * pow_int(Int(M), j);
        }
        den = Int(k) * M * Dk;
    }

    Int eval(long u) const {  // Dk M^k B_k(u/M)
        Int E = cj[0];
        for (size_t j = 1; j < cj.size(); ++j) {
            E *= u;
            E += cj[j];
        }
        return E;
    }
};

// chi restricted to {+1, -1}: sign exponent of a rational-valued character
bool chi_negative_at(const DirichletChar& chi, long u) {
    auto e = chi.value_exp(Int(u));
    if (!e) throw error("character undefined at " + std::to_string(u));
    return *e != 0;
}

/* stripped L-values per character orbit as cleared trace vectors:
   value(rho) = -(1/k) sum_{u mod M} chi(u) M^(k-1) B_k(u/M) zeta^(e_rho(u)),
   M = f p^(n+1).  the modulus-M sum strips exactly the primes of M; extra
   primes act as the cyclic factor 1 - chi(l) l^(k-1) zeta^(e_rho(l)). */
std::vector<RedVec> stripped_orbit_lvalues(const TowerLayer& L,
                                           const DirichletChar& chi, unsigned k,
                                           const std::vector<long>& extraS,
                                           bool unstrip_p) {
    const DirichletChar prim = chi.primitive();
    long f = prim.conductor();
    long M = f * L.m;
    BernoulliKernel ker(k, M);

    const auto& orbits = char_orbits(L);
    std::vector<RedVec> vals(orbits.size());
    for (size_t o = 0; o < orbits.size(); ++o) {
        vals[o].d = orbits[o].d;
        vals[o].num.assign(orbits[o].d, Int(0));
        vals[o].den = ker.den;
    }

    for (long u = 1; u < M; ++u) {
        if (std::gcd(u, M) != 1) continue;
        Int E = ker.eval(u);
        if (!chi_negative_at(prim, u)) E = -E;  // accumulate -chi(u) E(u)
        long ui = L.unit_index[u % L.m];
        for (size_t o = 0; o < orbits.size(); ++o) {
            const CharOrbit& O = orbits[o];
            long e = (O.sD * L.iexp[ui] + O.sG * L.jexp[ui]) % O.d;
            vals[o].num[e] += E;
        }
    }

    for (long l : extraS) {
        if (M % l == 0) continue;  // already stripped by the modulus
        Int lk = pow_int(Int(l), k - 1);
        if (chi_negative_at(prim, l)) lk = -lk;
        long ui = L.unit_index[l % L.m];
        for (size_t o = 0; o < orbits.size(); ++o) {
            CharOrbit const& O = orbits[o];
            long e = (O.sD * L.iexp[ui] + O.sG * L.jexp[ui]) % O.d;
            std::vector<Int> shifted(O.d);
            for (long x = 0; x < O.d; ++x) {
                long ix = x - e;
                if (ix < 0) ix += O.d;
                shifted[x] = vals[o].num[x] - lk * vals[o].num[ix];
            }
            vals[o].num = std::move(shifted);
        }
    }

    if (unstrip_p) {
        // only the trivial character's L-value sees the p-Euler factor (every
        // nontrivial rho chi has p in its conductor); divide it back out
        assert(orbits[0].a == 0 && orbits[0].b == 0 && orbits[0].d == 1);
        Rat v0 = frac(vals[0].num[0], vals[0].den);
        Int pk = pow_int(Int(L.p), k - 1);  // chi(p) pk with |pk| > 1: factor != 0
        if (chi_negative_at(prim, L.p)) pk = -pk;
        v0 /= Rat(1) - Rat(pk);
        vals[0].num[0] = v0.get_num();
        vals[0].den = v0.get_den();
    }
    return vals;
}

// one stripped component as an exact cyclotomic number (reference path)
CycloElem component_lvalue(const TowerLayer& L, const CharacterTable::Entry& c,
                           const DirichletChar& chi, unsigned k,
                           const std::vector<long>& extraS) {
    const DirichletChar prim = chi.primitive();
    long f = prim.conductor();
    long M = f * L.m;
    BernoulliKernel ker(k, M);
    long dchi = prim.order();
    long dd = std::lcm(c.d, dchi);

    std::vector<Rat> bucket(dd, Rat(0));
    for (long u = 1; u < M; ++u) {
        if (std::gcd(u, M) != 1) continue;
        long echi = prim.value_exp(Int(u)).value();
        long ui = L.unit_index[u % L.m];
        long erho = (c.sD * L.iexp[ui] + c.sG * L.jexp[ui]) % c.d;
        long e = (echi * (dd / dchi) + erho * (dd / c.d)) % dd;
        bucket[e] -= frac(ker.eval(u), ker.den);
    }
    CycloElem v = CycloElem::from_coeffs(dd, bucket);

    for (long l : extraS) {
        if (M % l == 0) continue;
        long ui = L.unit_index[l % L.m];
        long erho = (c.sD * L.iexp[ui] + c.sG * L.jexp[ui]) % c.d;
        CycloElem factor = CycloElem(1L) - Rat(pow_int(Int(l), k - 1)) *
                                               prim.value(Int(l)) *
                                               CycloElem::zeta_pow(c.d, erho);
        v *= factor;
    }
    return v;
}

void validate_inputs(long p, const DirichletChar& chi, unsigned k) {
    if (k < 2) throw error("weight must be at least 2 (weight 1 is the "
                           "classical Stickelberger sum)");
    if (k > 40) throw BoundExceeded("weight " + std::to_string(k) +
                                    " beyond the desk-scale bound 40");
    if (chi.conductor() % p == 0)
        throw error("twist conductor must be coprime to the tower prime");
}

EquivariantLElem equivariant_l_impl(long p, int n, const DirichletChar& chi,
                                    unsigned k, std::vector<long> S,
                                    bool require_p) {
    validate_inputs(p, chi, k);
    bool has_p = std::find(S.begin(), S.end(), p) != S.end();
    if (require_p && !has_p)
        throw error("the tower prime must belong to the stripped set");
    std::vector<long> S_eff = effective_strip_set(p, chi, S);
    if (!has_p) S_eff.erase(std::find(S_eff.begin(), S_eff.end(), p));

    const TowerLayer& L = TowerLayer::get(p, n);
    EquivariantLElem out;
    out.layer = &L;
    out.chi = chi.primitive();
    out.k = k;
    out.S = S_eff;

    if (chi.order() <= 2) {
        auto vals = stripped_orbit_lvalues(L, chi, k, S_eff, !has_p);
        out.rat = compose_trace(L, vals, true);
    } else {
        if (!has_p)
            throw error("omitting p from the stripped set is only supported "
                        "for rational-valued twists");
        if (L.order() > 500)
            throw BoundExceeded("cyclotomic-coefficient construction is "
                                "limited to groups of order <= 500");
        const CharacterTable& T = CharacterTable::get(L);
        std::map<std::pair<long, long>, CycloElem> values;
        for (const auto& c : T.chars)
            values[{c.a, c.b}] = component_lvalue(L, c, chi, k, S_eff);
        out.cyc = rho_compose(L, values);
    }
    return out;
}

}  // namespace

EquivariantLElem equivariant_l(long p, int n, const DirichletChar& chi,
                               unsigned k, std::vector<long> S) {
    return equivariant_l_impl(p, n, chi, k, std::move(S), true);
}

CycloGRElem equivariant_l_generic(long p, int n, const DirichletChar& chi,
                                  unsigned k, std::vector<long> S) {
    validate_inputs(p, chi, k);
    if (std::find(S.begin(), S.end(), p) == S.end())
        throw error("the tower prime must belong to the stripped set");
    std::vector<long> S_eff = effective_strip_set(p, chi, S);
    const TowerLayer& L = TowerLayer::get(p, n);
    if (L.order() > 500)
        throw BoundExceeded("reference construction is limited to groups of "
                            "order <= 500");
    const CharacterTable& T = CharacterTable::get(L);
    std::map<std::pair<long, long>, CycloElem> values;
    for (const auto& c : T.chars)
        values[{c.a, c.b}] = component_lvalue(L, c, chi, k, S_eff);
    return rho_compose(L, values);
}

namespace {

ZetaDistribution build_distribution_impl(long p, int n_max,
                                         const DirichletChar& chi, unsigned k,
                                         std::vector<long> S, bool require_p) {
    if (n_max < 0) throw error("negative n_max");
    ZetaDistribution d;
    d.p = p;
    d.n_max = n_max;
    d.chi = chi.primitive();
    d.k = k;
    for (int n = 0; n <= n_max; ++n)
        d.layers.push_back(equivariant_l_impl(p, n, chi, k, S, require_p));
    d.S = d.layers[0].S;

    for (int n = 1; n <= n_max; ++n) {
        const TowerLayer& Lo = *d.layers[n - 1].layer;
        if (d.layers[n].is_rational()) {
            RatElem down = project(*d.layers[n].rat);
            const RatElem& ref = *d.layers[n - 1].rat;
            for (long u = 0; u < Lo.order(); ++u)
                if (down.a[u] != ref.a[u])
                    throw CompatibilityViolation(
                        n, "sigma_" + std::to_string(Lo.units[u]));
        } else {
            CycloGRElem down = project(*d.layers[n].cyc);
            const CycloGRElem& ref = *d.layers[n - 1].cyc;
            for (long u = 0; u < Lo.order(); ++u)
                if (!(down.a[u] == ref.a[u]))
                    throw CompatibilityViolation(
                        n, "sigma_" + std::to_string(Lo.units[u]));
        }
    }
    return d;
}

}  // namespace

ZetaDistribution build_distribution(long p, int n_max, const DirichletChar& chi,
                                    unsigned k, std::vector<long> S) {
    return build_distribution_impl(p, n_max, chi, k, std::move(S), true);
}

ZetaDistribution build_distribution_raw(long p, int n_max,
                                        const DirichletChar& chi, unsigned k,
                                        std::vector<long> S) {
    return build_distribution_impl(p, n_max, chi, k, std::move(S), false);
}

RatElem theta_classical(long p, int n) {
    const TowerLayer& L = TowerLayer::get(p, n);
    RatElem out(L, Rat(0));
    for (long u = 0; u < L.order(); ++u)
        out.a[L.inv_idx[u]] = frac(L.units[u], L.m) - frac(1, 2);
    return out;
}

long default_regulator(long p, const DirichletChar& chi) {
    long f = chi.conductor();
    long g = primitive_root_mod_p2(p);
    if (std::gcd(g, f) == 1) return g;
    // step to the next primitive root coprime to the conductor
    Int p2 = Int(p) * p;
    std::vector<long> qs = prime_factors(p * (p - 1));
    for (long cand = g + 1; cand < 2000; ++cand) {
        if (cand % p == 0 || std::gcd(cand, f) != 1) continue;
        bool ok = true;
        for (long q : qs)
            if (pow_mod(Int(cand), Int(p * (p - 1) / q), p2) == 1) {
                ok = false;
                break;
            }
        if (ok) return cand;
    }
    throw error("no small primitive root coprime to the conductor");
}

PadicInt embed_cyclo_delta(const CycloElem& v, long p, int N, long g) {
    long d = v.order();
    if ((p - 1) % d != 0)
        throw EmbeddingUnavailable("order " + std::to_string(d) +
                                   " does not divide p-1 = " +
                                   std::to_string(p - 1));
    // clear p-powers from coordinate denominators first
    long s = 0;
    for (const Rat& c : v.coeffs()) {
        if (c == 0) continue;
        long w = vp(c, p);
        if (w < 0) s = std::max(s, -w);
    }
    int Nw = N + static_cast<int>(s);
    PadicInt w = teichmuller(p, Nw, Int(g))
                     .pow(static_cast<unsigned long>((p - 1) / d));
    PadicInt acc(p, Nw, 0);
    PadicInt zi(p, Nw, 1);
    Int ps = pow_int(Int(p), static_cast<unsigned long>(s));
    const auto& cf = v.coeffs();
    for (size_t i = 0; i < cf.size(); ++i) {
        if (cf[i] != 0)
            acc += PadicInt::from_rational(p, Nw, cf[i] * Rat(ps)) * zi;
        zi *= w;
    }
    if (s > 0) {
        if (acc.residue() % ps != 0)
            throw NotIntegral("embedded value has valuation " +
                              std::to_string(vp(acc.residue(), p) - s));
        return PadicInt(p, N, acc.residue() / ps);
    }
    return acc;
}

RegularizedPair regularize(const ZetaDistribution& d, long c, int N) {
    long p = d.p;
    long f = d.chi.conductor();
    if (c <= 1) throw error("regularization constant must exceed 1");
    if (std::gcd(c, p * f) != 1)
        throw error("regularization constant must be coprime to p and the "
                    "conductor");
    if (N < 1) throw error("precision must be positive");

    RegularizedPair out;
    out.p = p;
    out.k = d.k;
    out.c = c;
    out.N = N;
    Rat ck = Rat(pow_int(Int(c), d.k));

    for (const EquivariantLElem& x : d.layers) {
        const TowerLayer& L = *x.layer;
        int n = L.n;
        RatElem g_exact = [&] {
            RatElem e(L, Rat(0));
            e.at(1) = 1;
            e.at(c % L.m) -= ck;
            return e;
        }();
        PadicElem gp(L, PadicInt(p, N, 0));
        for (long u = 0; u < L.order(); ++u)
            gp.a[u] = PadicInt::from_rational(p, N, g_exact.a[u]);
        out.g.push_back(gp);

        PadicElem fp(L, PadicInt(p, N, 0));
        if (x.is_rational()) {
            RatElem f_exact = *x.rat - scale(sigma_mul(c, *x.rat), ck);
            for (long u = 0; u < L.order(); ++u) {
                try {
                    fp.a[u] = PadicInt::from_rational(p, N, f_exact.a[u]);
                } catch (const NotPIntegral&) {
                    throw NotIntegral("layer " + std::to_string(n) + ", sigma_" +
                                      std::to_string(L.units[u]) + ": v_p = " +
                                      std::to_string(vp(f_exact.a[u], p)));
                }
            }
            out.f_exact.push_back(std::move(f_exact));
            out.g_exact.push_back(std::move(g_exact));
        } else {
            CycloGRElem f_cyc = *x.cyc - scale(sigma_mul(c, *x.cyc),
                                               CycloElem(ck));
            for (long u = 0; u < L.order(); ++u) {
                try {
                    fp.a[u] = embed_cyclo_delta(f_cyc.a[u], p, N, L.g);
                } catch (const NotPIntegral&) {
                    throw NotIntegral("layer " + std::to_string(n) + ", sigma_" +
                                      std::to_string(L.units[u]));
                } catch (const NotIntegral& ni) {
                    throw NotIntegral("layer " + std::to_string(n) + ", sigma_" +
                                      std::to_string(L.units[u]) + ": " +
                                      ni.what());
                }
            }
        }
        out.f.push_back(std::move(fp));
    }
    return out;
}

}  // namespace mcv
