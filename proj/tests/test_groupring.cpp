#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mcv/dft_kernel.hpp"
#include "mcv/groupring.hpp"

using namespace mcv;

namespace {

RatElem random_elem(const TowerLayer& L, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    RatElem x(L, Rat(0));
    for (auto& c : x.a) c = frac(num(rng), den(rng));
    return x;
}

RatElem dirac(const TowerLayer& L, long t, const Rat& c = Rat(1)) {
    RatElem x(L, Rat(0));
    x.at(t) = c;
    return x;
}

}  // namespace

TEST_CASE("tower layer structure") {
    const TowerLayer& L = TowerLayer::get(5, 1);
    CHECK(L.m == 25);
    CHECK(L.order() == 20);
    CHECK(L.g == 2);
    CHECK(L.delta_rep == 7);  // 2^5 mod 25
    CHECK(L.gamma_rep == 6);
    // (i, j) coordinates invert t and compose multiplicatively
    for (long u = 0; u < L.order(); ++u) {
        long t = L.units[u];
        CHECK(L.at_ij(L.iexp[u], L.jexp[u]) == u);
        long tinv = L.units[L.inv_idx[u]];
        CHECK(t * tinv % L.m == 1);
    }
    // sigma_t = delta^i gamma^j as residues
    for (long u = 0; u < L.order(); ++u) {
        Int re = pow_mod(Int(L.delta_rep), Int(L.iexp[u]), Int(L.m)) *
                 pow_mod(Int(L.gamma_rep), Int(L.jexp[u]), Int(L.m)) % L.m;
        CHECK(re == L.units[u]);
    }
    CHECK_THROWS_AS(TowerLayer::get(4, 0), error);
    CHECK_THROWS_AS(L.index_of(10), error);
}

TEST_CASE("decompose on the order-2 group") {
    const TowerLayer& L = TowerLayer::get(3, 0);
    CHECK(L.order() == 2);
    Rat a = frac(3, 4), b = frac(-2, 5);
    RatElem x = dirac(L, 1, a) + dirac(L, 2, b);  // a + b*sigma
    CHECK(component(x, 0, 0) == CycloElem(a + b));
    CHECK(component(x, 1, 0) == CycloElem(a - b));
}

TEST_CASE("decompose identity, compose all-ones") {
    const TowerLayer& L = TowerLayer::get(5, 1);
    auto comps = rho_decompose(dirac(L, 1));
    CHECK(comps.size() == 20);
    for (const auto& [ab, v] : comps) CHECK(v == CycloElem(1L));

    std::map<std::pair<long, long>, CycloElem> ones;
    for (const auto& c : CharacterTable::get(L).chars)
        ones[{c.a, c.b}] = CycloElem(1L);
    CHECK(rho_compose_rat(L, ones) == dirac(L, 1));
}

TEST_CASE("decompose/compose round trip") {
    std::mt19937 rng(20260816u);
    for (long p : {3L, 5L}) {
        for (int n = 0; n <= 2; ++n) {
            const TowerLayer& L = TowerLayer::get(p, n);
            for (int rep = 0; rep < 17; ++rep) {
                RatElem x = random_elem(L, rng);
                CHECK(rho_compose_rat(L, rho_decompose(x)) == x);
            }
        }
    }
}

TEST_CASE("decompose is a ring homomorphism") {
    std::mt19937 rng(4242u);
    int done = 0;
    while (done < 100) {
        long p = (done % 2) ? 5 : 3;
        const TowerLayer& L = TowerLayer::get(p, 1);
        RatElem x = random_elem(L, rng), y = random_elem(L, rng);
        auto cx = rho_decompose(x), cy = rho_decompose(y);
        auto cxy = rho_decompose(convolve(x, y));
        for (const auto& [ab, v] : cxy) CHECK(v == cx.at(ab) * cy.at(ab));
        ++done;
    }
}

TEST_CASE("character sums vanish off the trivial character") {
    for (long p : {3L, 5L, 7L}) {
        for (int n = 0; n <= 2; ++n) {
            const TowerLayer& L = TowerLayer::get(p, n);
            RatElem ones(L, Rat(1));
            for (const auto& c : CharacterTable::get(L).chars) {
                CycloElem s = component(ones, c.a, c.b);
                if (c.a == 0 && c.b == 0)
                    CHECK(s == CycloElem(Rat(L.order())));
                else
                    CHECK(s.is_zero());
            }
        }
    }
}

TEST_CASE("pairwise orthogonality, literal form") {
    std::mt19937 rng(5150u);
    for (long p : {3L, 5L}) {
        for (int n = 0; n <= 1; ++n) {
            const TowerLayer& L = TowerLayer::get(p, n);
            const CharacterTable& T = CharacterTable::get(L);
            std::uniform_int_distribution<long> pick(0, L.order() - 1);
            for (int rep = 0; rep < 10; ++rep) {
                const auto& r1 = T.chars[pick(rng)];
                const auto& r2 = T.chars[pick(rng)];
                CycloElem s;
                for (long u = 0; u < L.order(); ++u)
                    s += T.value(r1, u) * T.value(r2, L.inv_idx[u]);
                if (r1.a == r2.a && r1.b == r2.b)
                    CHECK(s == CycloElem(Rat(L.order())));
                else
                    CHECK(s.is_zero());
            }
        }
    }
}

TEST_CASE("projection to the lower layer") {
    const TowerLayer& L1 = TowerLayer::get(5, 1);
    const TowerLayer& L0 = TowerLayer::get(5, 0);

    // a constant sums over fibers of size p
    RatElem c(L1, frac(3, 7));
    RatElem pc = project(c);
    CHECK(pc.layer == &L0);
    for (const auto& v : pc.a) CHECK(v == frac(15, 7));

    // the identity projects to the identity
    CHECK(project(dirac(L1, 1)) == dirac(L0, 1));

    // compatible with the dual: project picks up the inflated character
    std::mt19937 rng(31337u);
    RatElem x = random_elem(L1, rng);
    RatElem px = project(x);
    for (long a = 0; a < 4; ++a)
        CHECK(component(px, a, 0) == component(x, a, 0));

    // ring homomorphism
    for (long p : {3L, 5L}) {
        const TowerLayer& L = TowerLayer::get(p, 1);
        for (int rep = 0; rep < 5; ++rep) {
            RatElem u = random_elem(L, rng), v = random_elem(L, rng);
            CHECK(project(convolve(u, v)) == convolve(project(u), project(v)));
        }
    }

    // functorial through intermediate layers
    const TowerLayer& M2 = TowerLayer::get(3, 2);
    RatElem y = random_elem(M2, rng);
    RatElem once = project(project(y));
    const TowerLayer& M0 = TowerLayer::get(3, 0);
    RatElem direct(M0, Rat(0));
    for (long u = 0; u < M2.order(); ++u)
        direct.a[M0.unit_index[M2.units[u] % M0.m]] += y.a[u];
    CHECK(once == direct);

    CHECK_THROWS_AS(project(dirac(M0, 1)), error);
}

TEST_CASE("projection of inflated characters at the coefficient level") {
    // component(project(x), a, b) = component(x, a, p b)
    std::mt19937 rng(999u);
    const TowerLayer& L2 = TowerLayer::get(5, 2);
    RatElem x = random_elem(L2, rng);
    RatElem px = project(x);
    for (long a = 0; a < 4; ++a)
        for (long b = 0; b < 5; ++b)
            CHECK(component(px, a, b) == component(x, a, 5 * b));
}

TEST_CASE("sigma action twists components") {
    const TowerLayer& L = TowerLayer::get(5, 1);
    const CharacterTable& T = CharacterTable::get(L);
    std::mt19937 rng(808u);
    RatElem x = random_elem(L, rng);
    long c = 7;
    RatElem sx = sigma_mul(c, x);
    for (const auto& ch : T.chars) {
        CycloElem lhs = component(sx, ch.a, ch.b);
        CycloElem rhs = T.value(ch, L.index_of(c)) * component(x, ch.a, ch.b);
        CHECK(lhs == rhs);
    }
    // sigma_1 is the identity action
    CHECK(sigma_mul(1, x) == x);
    // sigma_c sigma_d = sigma_{cd}
    CHECK(sigma_mul(7, sigma_mul(11, x)) == sigma_mul(77 % 25, x));
}

TEST_CASE("reduced norm certifies units") {
    const TowerLayer& L = TowerLayer::get(3, 1);
    ReducedNorm rn = reduced_norm_abelian(dirac(L, 1, Rat(2)));
    CHECK(rn.x == dirac(L, 1, Rat(2)));
    CHECK(rn.components.size() == 6);
    for (const auto& [ab, v] : rn.components) CHECK(v == CycloElem(2L));

    // 1 - sigma_2 kills the trivial component
    RatElem z = dirac(L, 1) - dirac(L, 2);
    CHECK_THROWS_WITH_AS(reduced_norm_abelian(z),
                         doctest::Contains("(0,0)"), NotAUnit);
}

TEST_CASE("p-adic Delta components") {
    const TowerLayer& L = TowerLayer::get(7, 0);
    const int N = 6;
    std::mt19937 rng(616u);
    std::uniform_int_distribution<long> pickr(0, 117648);

    PadicElem x(L, PadicInt(7, N, 0));
    for (auto& v : x.a) v = PadicInt(7, N, Int(pickr(rng)));

    std::vector<PadicInt> vals;
    for (long a = 0; a < 6; ++a) vals.push_back(component_delta(x, a));
    CHECK(rho_compose_delta(L, vals) == x);

    // Teichmuller regime matches the abstract character values
    const CharacterTable& T = CharacterTable::get(L);
    for (long a = 0; a < 6; ++a) {
        for (long u = 0; u < L.order(); ++u) {
            PadicInt tv = T.teich_value(a, u, N);
            PadicInt direct = teichmuller(7, N, Int(L.units[u])).pow(
                static_cast<unsigned long>(a));
            CHECK(tv == direct);
        }
    }

    // recomposition beyond the bottom layer would divide by p
    const TowerLayer& L1 = TowerLayer::get(5, 1);
    std::vector<PadicInt> dummy(4, PadicInt(5, 3, 1));
    CHECK_THROWS_AS(rho_compose_delta(L1, dummy), NonInvertibleOrder);
}

TEST_CASE("trace tables") {
    CHECK(trace_table(1) == std::vector<long>{1});
    CHECK(trace_table(4) == std::vector<long>({2, 0, -2, 0}));
    CHECK(trace_table(6) == std::vector<long>({2, 1, -1, -2, -1, 1}));
    // each table sums to zero for d > 1 (sum of all d-th roots with multiplicity)
    for (long d : {2L, 3L, 5L, 8L, 12L, 20L, 100L}) {
        long s = 0;
        for (long v : trace_table(d)) s += v;
        CHECK(s == 0);
    }
}

TEST_CASE("character orbits partition the dual group") {
    const TowerLayer& L = TowerLayer::get(5, 1);
    const auto& os = char_orbits(L);
    CHECK(os.size() == 6);  // divisor pairs of 4 and 5
    long total = 0;
    for (const auto& o : os) total += static_cast<long>(o.members.size());
    CHECK(total == 20);

    const TowerLayer& L7 = TowerLayer::get(7, 2);
    CHECK(char_orbits(L7).size() == 12);  // tau(6) * 3
}

TEST_CASE("trace kernel inverts the decomposition") {
    std::mt19937 rng(2718u);
    for (auto [p, n] : {std::pair<long, int>{3, 2}, {5, 1}, {7, 1}}) {
        const TowerLayer& L = TowerLayer::get(p, n);
        const auto& os = char_orbits(L);
        RatElem x = random_elem(L, rng);
        auto comps = rho_decompose(x);
        std::vector<RedVec> vals;
        for (const auto& o : os)
            vals.push_back(cyclo_to_redvec(comps.at({o.a, o.b}), o.d));
        CHECK(compose_trace(L, vals, false) == x);
    }
}

TEST_CASE("parallel trace kernel agrees with serial") {
    std::mt19937 rng(1618u);
    const TowerLayer& L = TowerLayer::get(5, 2);
    const auto& os = char_orbits(L);
    RatElem x = random_elem(L, rng);
    auto comps = rho_decompose(x);
    std::vector<RedVec> vals;
    for (const auto& o : os)
        vals.push_back(cyclo_to_redvec(comps.at({o.a, o.b}), o.d));
    RatElem serial = compose_trace(L, vals, false);
    RatElem parallel = compose_trace(L, vals, true);
    CHECK(serial == parallel);
    CHECK(serial == x);
}

TEST_CASE("incomplete value maps are rejected") {
    const TowerLayer& L = TowerLayer::get(3, 1);
    std::map<std::pair<long, long>, CycloElem> partial;
    partial[{0, 0}] = CycloElem(1L);
    CHECK_THROWS_AS(rho_compose(L, partial), MissingRoots);
    CHECK_THROWS_AS(compose_trace(L, {}, false), MissingRoots);
}
