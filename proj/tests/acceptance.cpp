/* acceptance gate: one line per criterion, tolerances and time budgets
   pinned in code.  every check prints enough of both sides to re-derive
   the comparison; a criterion fails on any violated identity or on a
   blown budget. */
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "mcv/dft_kernel.hpp"
#include "mcv/mcverify.hpp"
#include "mcv/numutil.hpp"

using namespace mcv;

namespace {

int g_failures = 0;

void criterion(int idx, const std::string& label, double budget_s,
               const std::function<bool(std::ostream&)>& body) {
    std::ostringstream detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool pass = ok && err.empty() && secs < budget_s;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": "
              << label << " (" << std::fixed << std::setprecision(2) << secs
              << "s, budget " << std::setprecision(0) << budget_s << "s)\n";
    std::cout << detail.str();
    if (!err.empty()) std::cout << "    unexpected error: " << err << "\n";
    if (ok && err.empty() && secs >= budget_s)
        std::cout << "    all identities hold but the time budget is blown\n";
    if (!pass) ++g_failures;
}

int run_cli(const std::vector<std::string>& args, std::string* out_s) {
    std::vector<const char*> argv;
    argv.push_back("mcverify");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_s) *out_s = out.str();
    return rc;
}

IwasawaSeries series_of(long p, long branch, int N,
                        const std::vector<Int>& coeffs) {
    IwasawaSeries s(Branch(p, branch), static_cast<long>(coeffs.size()) - 1, N);
    for (size_t j = 0; j < coeffs.size(); ++j)
        s.set_coeff(static_cast<long>(j), PadicInt(p, N, coeffs[j]));
    return s;
}

unsigned base_weight(long p, long branch) {
    return static_cast<unsigned>(branch < 2 ? branch + (p - 1) : branch);
}

/* certified agreement between the folded pair and the stripped classical
   value at weight k: the congruence f(t) den(L) = g(t) num(L) holds mod
   p^digits, where digits is capped by the evaluation certificates and, away
   from the base weight, by the tower-depth bound n_max + 1 + v_p(k - k0) */
long pair_digits_at(const std::pair<IwasawaSeries, IwasawaSeries>& pair,
                    long p, unsigned k, unsigned k0, int n_max, bool* agree) {
    PadicInt t = interpolation_point(p, k, k0, pair.first.precision());
    PadicInt num = evaluate(pair.first, t);
    PadicInt den = evaluate(pair.second, t);
    long digits = std::min<long>(num.precision(), den.precision());
    if (k != k0)
        digits = std::min<long>(
            digits, n_max + 1 +
                        vp(Int(static_cast<long>(k) - static_cast<long>(k0)),
                           p));
    Rat target =
        euler_strip(l_value(DirichletChar::trivial_char(), k), {p}, k)
            .rational_value();
    int d = static_cast<int>(digits);
    *agree = num.with_precision(d) * PadicInt(p, d, target.get_den()) ==
             den.with_precision(d) * PadicInt(p, d, target.get_num());
    return digits;
}

}  // namespace

int main() {
    std::cout << "acceptance run: exact equivariant L-value machinery at desk "
                 "scale\n";

    criterion(1, "classical special values, exactly", 5.0, [](std::ostream& log) {
        ClassNumberCheck q = class_number_formula_check();
        bool ok = q.pass && q.lhs == frac(-1, 2);
        std::string out;
        ok = ok && run_cli({"lvalue", "--k", "1"}, &out) == 0 &&
             out == "zeta(0) = -1/2\n";
        log << "    zeta(0) = " << rat_str(q.lhs) << " (library and cli agree)\n";
        size_t n = 0;
        for (const ClassNumberFixture& fx : class_number_fixtures()) {
            ClassNumberCheck r = class_number_formula_check(fx.D);
            bool one = r.pass &&
                       l_value(DirichletChar::kronecker(fx.D), 1)
                               .rational_value() == frac(2 * fx.h, fx.w);
            if (!one)
                log << "    MISMATCH at D = " << fx.D << ": " << rat_str(r.lhs)
                    << " vs 2h/w = " << rat_str(r.rhs) << "\n";
            ok = ok && one;
            ++n;
        }
        log << "    L(chi_D, 0) = 2h/w for all " << n
            << " fundamental discriminants with |D| <= 200\n";
        return ok && n > 0;
    });

    criterion(2, "the first equivariant element, and transform round trips",
              10.0, [](std::ostream& log) {
        EquivariantLElem e =
            equivariant_l(3, 0, DirichletChar::trivial_char(), 2, {3});
        const TowerLayer& L0 = *e.layer;
        bool ok = e.is_rational() && L0.order() == 2;
        for (long u = 0; ok && u < L0.order(); ++u)
            ok = e.rat->a[u] == frac(1, 12);
        log << "    (p=3, n=0, k=2, S={3}): coefficients "
            << rat_str(e.rat->a[0]) << ", " << rat_str(e.rat->a[1])
            << " == (1 + sigma)/12\n";

        int trips = 0, good = 0;
        for (long p : {3L, 5L}) {
            for (const char* cs : {"trivial", "kron:-4"}) {
                DirichletChar chi = std::string(cs) == "trivial"
                                        ? DirichletChar::trivial_char()
                                        : DirichletChar::parse(cs);
                for (int n = 0; n <= 1; ++n) {
                    for (unsigned k = 2; k <= 3; ++k) {
                        EquivariantLElem el = equivariant_l(p, n, chi, k, {p});
                        if (!el.is_rational()) continue;
                        const TowerLayer& L = *el.layer;
                        ++trips;
                        if (rho_compose_rat(L, rho_decompose(*el.rat)) ==
                            *el.rat)
                            ++good;
                    }
                }
            }
        }
        log << "    character-sum decomposition round trips: " << good << "/"
            << trips << " over p in {3,5}, chi in {trivial, kron:-4}, "
               "k in {2,3}, n <= 1\n";
        return ok && trips == 16 && good == trips;
    });

    criterion(3, "tower projections are exact identities", 30.0,
              [](std::ostream& log) {
        bool ok = true;
        int checked = 0;
        for (long p : {3L, 5L, 7L}) {
            for (unsigned k : {2u, 3u, 4u}) {
                ZetaDistribution d = build_distribution(
                    p, 3, DirichletChar::trivial_char(), k, {p});
                for (int n = 1; n <= 3; ++n) {
                    ok = ok && project(*d.layers[n].rat) == *d.layers[n - 1].rat;
                    ++checked;
                }
            }
        }
        log << "    " << checked
            << " consecutive-layer projections, p in {3,5,7}, k in {2,3,4}, "
               "n <= 3, all exact\n";

        // negative control: drop p from the stripped set.  projections stay
        // exact and shallow regularization still works; integrality fails
        // first where v_p = (k-1) - n turns negative, i.e. depth 2 at k = 2
        ZetaDistribution raw1 = build_distribution_raw(
            3, 1, DirichletChar::trivial_char(), 2, {});
        ok = ok && project(*raw1.layers[1].rat) == *raw1.layers[0].rat;
        bool shallow_ok = true;
        try {
            regularize(raw1, default_regulator(3, DirichletChar::trivial_char()), 8);
        } catch (const NotIntegral&) {
            shallow_ok = false;
        }
        ZetaDistribution raw2 = build_distribution_raw(
            3, 2, DirichletChar::trivial_char(), 2, {});
        bool deep_refused = false;
        std::string msg;
        try {
            regularize(raw2, default_regulator(3, DirichletChar::trivial_char()), 8);
        } catch (const NotIntegral& e) {
            deep_refused = true;
            msg = e.what();
        }
        ok = ok && shallow_ok && deep_refused;
        log << "    control (p = 3 omitted from S, k = 2): projections exact, "
               "depth 1 regularizes, depth 2 refused\n";
        log << "    measured boundary matches v_p = (k-1) - n: first failure "
               "at n = 2, not n = 1\n";
        if (deep_refused) log << "    refusal: " << msg << "\n";
        return ok;
    });

    criterion(4, "regularized elements are p-integral coefficientwise", 30.0,
              [](std::ostream& log) {
        bool ok = true;
        long coeffs = 0;
        for (long p : {5L, 7L}) {
            long c = default_regulator(p, DirichletChar::trivial_char());
            for (unsigned k : {2u, 3u, 4u}) {
                RegularizedPair rp = regularize(
                    build_distribution(p, 2, DirichletChar::trivial_char(), k,
                                       {p}),
                    c, 8);
                for (int n = 0; n <= 2; ++n) {
                    for (const Rat& a : rp.f_exact[n].a) {
                        ok = ok && vp(a, p) >= 0;
                        ++coeffs;
                    }
                    for (const Rat& a : rp.g_exact[n].a) {
                        ok = ok && vp(a, p) >= 0;
                        ++coeffs;
                    }
                }
            }
        }
        log << "    " << coeffs
            << " exact coefficients across p in {5,7}, k in {2,3,4}, n <= 2: "
               "v_p >= 0 for every one (N = 8)\n";
        return ok && coeffs > 0;
    });

    criterion(5, "branch series interpolate classical values to 5 digits",
              60.0, [](std::ostream& log) {
        const int N = 8;
        bool ok = true;

        // the tower-depth bound caps certified digits at n_max + 1 away from
        // the base weight; measure the cap at depth 3 before the real run
        {
            RegularizedPair rp3 = regularize(
                build_distribution(5, 3, DirichletChar::trivial_char(), 2,
                                   {5}),
                default_regulator(5, DirichletChar::trivial_char()), N);
            auto pair3 = mellin(rp3, Branch(5, 2));
            bool agree3 = false;
            long d3 = pair_digits_at(pair3, 5, 6, 2, 3, &agree3);
            ok = ok && agree3 && d3 == 4;
            log << "    depth cap, measured: n_max = 3 certifies " << d3
                << " digits at (p=5, k=6) -- below the 5-digit target, so "
                   "the run uses n_max = 4\n";
        }

        for (long p : {5L, 7L}) {
            long c = default_regulator(p, DirichletChar::trivial_char());
            int five_digit_weights = 0;
            for (long b = 2; b <= p - 3; b += 2) {
                unsigned k0 = base_weight(p, b);
                RegularizedPair rp = regularize(
                    build_distribution(p, 4, DirichletChar::trivial_char(),
                                       k0, {p}),
                    c, N);
                auto pair = mellin(rp, Branch(p, b));
                for (unsigned k = k0; k <= 20;
                     k += static_cast<unsigned>(p - 1)) {
                    bool agree = false;
                    long digits = pair_digits_at(pair, p, k, k0, 4, &agree);
                    ok = ok && agree;
                    if (digits >= 5) ++five_digit_weights;
                    log << "    p=" << p << " branch=" << b << " k=" << k
                        << ": f(t)/g(t) = (1-p^(k-1)) zeta(1-k) to " << digits
                        << " certified digits"
                        << (agree ? "" : "  [DISAGREES]") << "\n";
                }
            }
            ok = ok && five_digit_weights >= 5;
            log << "    p=" << p << ": " << five_digit_weights
                << " weights certified to >= 5 digits (need >= 5)\n";
        }
        return ok;
    });

    criterion(6, "irregularity: class numbers against branch invariants",
              120.0, [](std::ostream& log) {
        bool ok = true;

        VerificationConfig cfg;
        cfg.suite = "irregular";
        cfg.p = 37;
        cfg.N = 8;
        Report rep = suite_irregular(cfg);
        ok = ok && rep.pass;
        bool b32 = false, others_trivial = true;
        for (const CheckRecord& c : rep.checks) {
            if (c.name == "branch:b32")
                b32 = c.pass && c.lhs == "(mu_f, lambda_f) = (0, 1)";
            else if (c.name.rfind("branch:", 0) == 0)
                others_trivial = false;
        }
        ok = ok && b32 && others_trivial;
        log << "    p = 37: ord_37(h^-) = " << vp(minus_class_number(37), 37)
            << ", branch 32 carries (mu, lambda) = (0, 1), every other even "
               "branch (0, 0)\n";

        for (long p : {3L, 5L, 7L, 11L, 13L}) {
            VerificationConfig rc;
            rc.suite = "irregular";
            rc.p = p;
            rc.N = 8;
            Report rr = suite_irregular(rc);
            bool clean = rr.pass;
            for (const CheckRecord& c : rr.checks)
                clean = clean && c.name.rfind("branch:", 0) != 0;
            ok = ok && clean;
        }
        log << "    p in {3,5,7,11,13}: all branches trivial, matching "
               "ord_p(h^-) = 0\n";

        int primes = 0;
        for (long p = 3; p <= 50; p += 2) {
            if (!is_prime(p)) continue;
            bool irregular_bernoulli = !kummer_irregular_indices(p).empty();
            bool irregular_class = vp(minus_class_number(p), p) > 0;
            ok = ok && irregular_bernoulli == irregular_class;
            ++primes;
        }
        log << "    Kummer criterion agrees with h^- divisibility for all "
            << primes << " odd primes <= 50\n";
        return ok;
    });

    criterion(7, "randomized structure checks", 60.0, [](std::ostream& log) {
        bool ok = true;

        // (a) weierstrass preparation recovers planted factorizations
        {
            std::mt19937_64 rng(0xacce9701ull);
            const long M = 12;
            const int N = 9;
            int good = 0;
            for (int trial = 0; trial < 100; ++trial) {
                const long p = (trial % 2) ? 5 : 3;
                const Int pN = pow_int(Int(p), N);
                const long mu = static_cast<long>(rng() % 3);
                const long lambda = static_cast<long>(rng() % 6);
                std::vector<Int> dist(lambda + 1);
                for (long j = 0; j < lambda; ++j)
                    dist[j] =
                        p * (Int(static_cast<unsigned long>(rng())) % (pN / p));
                dist[lambda] = 1;
                std::vector<Int> unit(M + 1, Int(0));
                do {
                    unit[0] = Int(static_cast<unsigned long>(rng())) % pN;
                } while (unit[0] % p == 0);
                for (long j = 1; j <= M - lambda; ++j)
                    unit[j] = Int(static_cast<unsigned long>(rng())) % pN;
                const Int pmu = pow_int(Int(p), static_cast<unsigned long>(mu));
                std::vector<Int> prod(M + 1, Int(0));
                for (long i = 0; i <= lambda; ++i)
                    for (long j = 0; i + j <= M; ++j)
                        prod[i + j] = (prod[i + j] + dist[i] * unit[j]) % pN;
                for (long s = 0; s <= M; ++s) prod[s] = (prod[s] * pmu) % pN;
                WeierstrassData wd = weierstrass(series_of(p, 0, N, prod));
                bool one = wd.mu == mu && wd.lambda == lambda;
                const int Nr = N - static_cast<int>(mu);
                for (long j = 0; one && j <= lambda; ++j)
                    one = wd.distinguished[j] == PadicInt(p, Nr, dist[j]);
                if (one) ++good;
            }
            ok = ok && good == 100;
            log << "    weierstrass reconstruction: " << good << "/100\n";
        }

        // (b) character-sum transform round trips
        {
            std::mt19937 rng(0xacce9702u);
            std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
            int good = 0, total = 0;
            while (total < 100) {
                for (long p : {3L, 5L}) {
                    for (int n = 0; n <= 2 && total < 100; ++n) {
                        const TowerLayer& L = TowerLayer::get(p, n);
                        RatElem x(L, Rat(0));
                        for (auto& a : x.a) a = frac(num(rng), den(rng));
                        ++total;
                        if (rho_compose_rat(L, rho_decompose(x)) == x) ++good;
                    }
                }
            }
            ok = ok && good == 100;
            log << "    transform round trips: " << good << "/100\n";
        }

        // (c) the characteristic-ideal class survives elementary operations.
        // M is chosen so no product ever exceeds the truncation: the base
        // determinant has degree <= 9 and the four unit scalings add at most
        // 8 more, keeping every round exact and the class certificate sharp
        {
            std::mt19937 rng(0xacce9703u);
            const long p = 5, M = 20;
            const int N = 8;
            auto rint = [&](long lo, long hi) {
                return lo + static_cast<long>(rng() % static_cast<unsigned long>(
                                                  hi - lo + 1));
            };
            // every series lives at the common truncation M: multiplication
            // takes the minimum of the operands' truncations, so an unpadded
            // constant would collapse the whole product to degree 0
            auto padded = [&](std::vector<Int> c) {
                c.resize(static_cast<size_t>(M) + 1, Int(0));
                return series_of(p, 0, N, c);
            };
            auto rand_poly = [&](bool unit_c0, long deg) {
                std::vector<Int> c(static_cast<size_t>(deg) + 1);
                for (auto& x : c) x = rint(-20, 20);
                if (unit_c0)
                    while (c[0] % p == 0) c[0] = rint(1, 20);
                return padded(c);
            };
            int good = 0;
            for (int trial = 0; trial < 50; ++trial) {
                // nonzero determinant by construction: triangular base with
                // distinguished-times-unit diagonal entries
                long mu = rint(0, 1), lam1 = rint(0, 2), lam2 = rint(0, 2);
                std::vector<Int> d1(lam1 + 1), d2(lam2 + 1);
                for (long j = 0; j < lam1; ++j) d1[j] = p * rint(0, 24);
                for (long j = 0; j < lam2; ++j) d2[j] = p * rint(0, 24);
                d1[lam1] = 1;
                d2[lam2] = 1;
                IwasawaSeries f =
                    padded(d1) * rand_poly(true, 2) *
                    padded({pow_int(Int(p), static_cast<unsigned long>(mu))});
                IwasawaSeries h = padded(d2) * rand_poly(true, 2);
                IwasawaSeries g = rand_poly(false, 3);
                IwasawaSeries zero(Branch(p, 0), M, N);
                std::vector<std::vector<IwasawaSeries>> A = {{f, g}, {zero, h}};
                CharIdealClass base = char_ideal_from_presentation(A);
                for (int op = 0; op < 4; ++op) {
                    switch (rng() % 4) {
                    case 0: {  // row_1 += q * row_0
                        IwasawaSeries q = rand_poly(false, 2);
                        A[1][0] = A[1][0] + q * A[0][0];
                        A[1][1] = A[1][1] + q * A[0][1];
                        break;
                    }
                    case 1: {  // col_0 += q * col_1
                        IwasawaSeries q = rand_poly(false, 2);
                        A[0][0] = A[0][0] + q * A[0][1];
                        A[1][0] = A[1][0] + q * A[1][1];
                        break;
                    }
                    case 2: {  // scale a row by a unit
                        IwasawaSeries u = rand_poly(true, 2);
                        A[0][0] = u * A[0][0];
                        A[0][1] = u * A[0][1];
                        break;
                    }
                    default:  // swap rows (determinant changes by -1, a unit)
                        std::swap(A[0], A[1]);
                    }
                }
                if (char_ideal_from_presentation(A) == base) ++good;
            }
            ok = ok && good == 50;
            log << "    class invariance under elementary operations: " << good
                << "/50\n";
        }

        // (d) determinants of finite modules multiply over direct sums
        {
            std::mt19937 rng(0xacce9704u);
            int good = 0;
            for (int trial = 0; trial < 50; ++trial) {
                auto lengths = [&](int cnt) {
                    std::vector<long> v;
                    for (int i = 0; i < cnt; ++i)
                        v.push_back(static_cast<long>(rng() % 4));
                    return v;
                };
                std::vector<long> a = lengths(static_cast<int>(rng() % 4));
                std::vector<long> b = lengths(static_cast<int>(rng() % 4));
                long total = 0;
                for (long x : a) total += x;
                for (long x : b) total += x;
                int N = static_cast<int>(total) + 2;
                std::vector<long> ab = a;
                ab.insert(ab.end(), b.begin(), b.end());
                Generator ga = det_finite_module(5, a, N);
                Generator gb = det_finite_module(5, b, N);
                Generator gab = det_finite_module(5, ab, N);
                Generator t = tensor(ga, gb);
                if (t.line() == gab.line() &&
                    generator_ratio(t, gab).is_one())
                    ++good;
            }
            ok = ok && good == 50;
            log << "    finite-module determinant multiplicativity: " << good
                << "/50\n";
        }
        return ok;
    });

    std::cout << (g_failures == 0 ? "acceptance: ALL CRITERIA PASS\n"
                                  : "acceptance: " +
                                        std::to_string(g_failures) +
                                        " criterion(s) FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
