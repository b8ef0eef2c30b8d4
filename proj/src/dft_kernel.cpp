#include "mcv/dft_kernel.hpp"

#include <cassert>
#include <memory>
#include <mutex>
#include <numeric>

#include "mcv/errors.hpp"
#include "mcv/numutil.hpp"

namespace mcv {

namespace {

std::mutex orbit_mx;
std::map<const TowerLayer*, std::unique_ptr<std::vector<CharOrbit>>> orbit_cache;

std::mutex trace_mx;
std::map<long, std::unique_ptr<std::vector<long>>> trace_cache;

std::unique_ptr<std::vector<CharOrbit>> build_orbits(const TowerLayer& L) {
    const CharacterTable& T = CharacterTable::get(L);
    auto out = std::make_unique<std::vector<CharOrbit>>();
    std::vector<char> seen(L.order(), 0);
    long total = 0;
    for (long a = 0; a < L.p - 1; ++a) {
        for (long b = 0; b < L.pn; ++b) {
            if (seen[a * L.pn + b]) continue;
            const auto& e = T.entry(a, b);
            CharOrbit O;
            O.a = a;
            O.b = b;
            O.d = e.d;
            O.sD = e.sD;
            O.sG = e.sG;
            for (long s = 0; s < e.d; ++s) {
                if (std::gcd(s, e.d) != 1) continue;
                // (sa, sb) is well defined and injective in s mod d: the
                // stabilizer s = 1 mod lcm(ord a, ord b) = d is trivial
                long sa = s * a % (L.p - 1);
                long sb = s % L.pn * b % L.pn;
                assert(!seen[sa * L.pn + sb]);
                seen[sa * L.pn + sb] = 1;
                O.members.emplace_back(sa, sb);
            }
            assert(static_cast<long>(O.members.size()) == euler_phi(e.d));
            total += static_cast<long>(O.members.size());
            out->push_back(std::move(O));
        }
    }
    assert(total == L.order());
    return out;
}

std::unique_ptr<std::vector<long>> build_trace_table(long d) {
    auto out = std::make_unique<std::vector<long>>(d);
    long phid = euler_phi(d);
    for (long y = 0; y < d; ++y) {
        long dg = d / std::gcd(y, d);  // order of zeta_d^y
        // Tr(primitive order-dg root) = mu(dg); the full trace scales by phi(d)/phi(dg)
        auto ps = prime_factors(dg);
        long sqfree = 1;
        for (long q : ps) sqfree *= q;
        long mu = (sqfree == dg) ? (ps.size() % 2 ? -1 : 1) : 0;
        (*out)[y] = mu * (phid / euler_phi(dg));
    }
    return out;
}

}  // namespace

const std::vector<CharOrbit>& char_orbits(const TowerLayer& L) {
    std::lock_guard<std::mutex> lk(orbit_mx);
    auto& slot = orbit_cache[&L];
    if (!slot) slot = build_orbits(L);
    return *slot;
}

const std::vector<long>& trace_table(long d) {
    std::lock_guard<std::mutex> lk(trace_mx);
    auto& slot = trace_cache[d];
    if (!slot) slot = build_trace_table(d);
    return *slot;
}

RedVec cyclo_to_redvec(const CycloElem& v, long d) {
    if (d % v.order() != 0)
        throw OrderMismatch("value of order " + std::to_string(v.order()) +
                            " does not embed at order " + std::to_string(d));
    RedVec r;
    r.d = d;
    r.num.assign(d, Int(0));
    r.den = 1;
    const CycloElem vd = v.embedded(d);
    const auto& cf = vd.coeffs();
    for (const auto& c : cf) r.den = lcm_int(r.den, Int(c.get_den()));
    for (size_t j = 0; j < cf.size(); ++j)
        r.num[j] = cf[j].get_num() * (r.den / cf[j].get_den());
    return r;
}

RatElem compose_trace(const TowerLayer& L, const std::vector<RedVec>& orbit_vals,
                      bool parallel) {
    const auto& orbits = char_orbits(L);
    if (orbit_vals.size() != orbits.size())
        throw MissingRoots("need one value per character orbit: got " +
                           std::to_string(orbit_vals.size()) + " of " +
                           std::to_string(orbits.size()));

    Int den_common = 1;
    for (size_t o = 0; o < orbits.size(); ++o) {
        if (orbit_vals[o].d != orbits[o].d ||
            static_cast<long>(orbit_vals[o].num.size()) != orbits[o].d)
            throw OrderMismatch("orbit value " + std::to_string(o) +
                                " has the wrong order");
        den_common = lcm_int(den_common, orbit_vals[o].den);
    }

    std::vector<std::vector<Int>> pnum(orbits.size());
    std::vector<const std::vector<long>*> ttab(orbits.size());
    for (size_t o = 0; o < orbits.size(); ++o) {
        Int f = den_common / orbit_vals[o].den;
        pnum[o].resize(orbits[o].d);
        for (long x = 0; x < orbits[o].d; ++x)
            pnum[o][x] = orbit_vals[o].num[x] * f;
        ttab[o] = &trace_table(orbits[o].d);
    }

    long N = L.order();
    std::vector<Int> acc(N);
#ifdef MCV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#else
    (void)parallel;
#endif
    for (long u = 0; u < N; ++u) {
        Int s = 0;
        for (size_t o = 0; o < orbits.size(); ++o) {
            const CharOrbit& O = orbits[o];
            long e = (O.sD * L.iexp[u] + O.sG * L.jexp[u]) % O.d;
            const std::vector<long>& T = *ttab[o];
            const std::vector<Int>& nm = pnum[o];
            for (long x = 0; x < O.d; ++x) {
                long ix = x - e;
                if (ix < 0) ix += O.d;
                long tr = T[ix];
                if (tr > 0)
                    mpz_addmul_ui(s.get_mpz_t(), nm[x].get_mpz_t(),
                                  static_cast<unsigned long>(tr));
                else if (tr < 0)
                    mpz_submul_ui(s.get_mpz_t(), nm[x].get_mpz_t(),
                                  static_cast<unsigned long>(-tr));
            }
        }
        acc[u] = std::move(s);
    }

    RatElem out(L, Rat(0));
    Int full_den = den_common * N;
    for (long u = 0; u < N; ++u) out.a[u] = frac(acc[u], full_den);
    return out;
}

}  // namespace mcv
