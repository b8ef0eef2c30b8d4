#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcv/mcverify.hpp"
#include "mcv/numutil.hpp"

namespace mcv {

namespace {

DirichletChar chi_from_arg(const std::string& s) {
    if (s == "trivial") return DirichletChar::trivial_char();
    return DirichletChar::parse(s);
}

std::string brace_set(const std::vector<long>& v) {
    std::string out = "{";
    for (size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

std::string poly_str(const std::vector<PadicInt>& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (size_t j = coeffs.size(); j-- > 0;) {
        if (coeffs[j].is_zero() && coeffs.size() > 1) continue;
        if (!first) os << " + ";
        first = false;
        os << coeffs[j].residue();
        if (j == 1) os << "*T";
        if (j > 1) os << "*T^" << j;
    }
    if (first) os << "0";
    return os.str();
}

// thrown for bad argument values discovered after flag parsing; separates
// exit status 2 (can't start) from status 1 (computation refused/failed)
struct UsageError : error {
    using error::error;
};

unsigned default_weight(long p, long branch) {
    return static_cast<unsigned>(branch < 2 ? branch + (p - 1) : branch);
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out,
                 std::ostream& err) {
    CLI::App app{
        "exact verification of equivariant L-value identities over "
        "cyclotomic towers"};
    app.require_subcommand(1);

    // ---- lvalue: classical special values, exact rationals -------------
    std::string lv_chi = "trivial";
    unsigned lv_k = 0;
    std::vector<long> lv_strip;
    CLI::App* lv = app.add_subcommand(
        "lvalue", "print L(chi, 1-k) exactly, optionally Euler-stripped");
    lv->add_option("--chi", lv_chi,
                   "character: trivial, chi:f:g:e:d or kron:D")
        ->capture_default_str();
    lv->add_option("--k", lv_k, "weight k >= 1; the point is s = 1-k")
        ->required();
    lv->add_option("--strip", lv_strip,
                   "comma-separated primes whose Euler factors to remove")
        ->delimiter(',');

    // ---- equivariant: one group-ring element, coefficientwise ----------
    long eq_p = 3;
    int eq_n = 0;
    unsigned eq_k = 2;
    std::string eq_chi = "trivial";
    std::vector<long> eq_strip;
    CLI::App* eq = app.add_subcommand(
        "equivariant",
        "print the stripped equivariant L-element of one tower layer");
    eq->add_option("--p", eq_p, "tower prime")->required();
    eq->add_option("--n", eq_n, "layer index (modulus p^(n+1))")
        ->capture_default_str();
    eq->add_option("--k", eq_k, "weight")->required();
    eq->add_option("--chi", eq_chi, "tame character")->capture_default_str();
    eq->add_option("--strip", eq_strip,
                   "stripped primes; must contain p (default {p})")
        ->delimiter(',');

    // ---- padic-l: regularized pair on one branch, as series files ------
    long pl_p = 5, pl_branch = 2;
    int pl_n = 2, pl_N = 8;
    unsigned pl_k0 = 0;
    long pl_c = 0;
    std::string pl_chi = "trivial", pl_out;
    std::vector<long> pl_strip;
    CLI::App* pl = app.add_subcommand(
        "padic-l",
        "write the regularized p-adic L pair (f, g) folded onto one branch");
    pl->add_option("--p", pl_p, "tower prime")->required();
    pl->add_option("--branch", pl_branch, "branch index in [0, p-2]")
        ->required();
    pl->add_option("--k0", pl_k0,
                   "base weight (default: smallest admissible for the branch)");
    pl->add_option("--n", pl_n, "tower depth n_max")->capture_default_str();
    pl->add_option("--N", pl_N, "p-adic precision")->capture_default_str();
    pl->add_option("--c", pl_c, "regularizer (default policy when omitted)");
    pl->add_option("--chi", pl_chi, "tame character")->capture_default_str();
    pl->add_option("--strip", pl_strip, "stripped primes (default {p})")
        ->delimiter(',');
    pl->add_option("--out", pl_out,
                   "basename; writes <out>.f.series and <out>.g.series "
                   "instead of stdout");

    // ---- invariants: Weierstrass data of one branch ---------------------
    long iv_p = 5, iv_branch = 2;
    int iv_n = 2, iv_N = 8;
    unsigned iv_k0 = 0;
    std::string iv_chi = "trivial";
    CLI::App* iv = app.add_subcommand(
        "invariants", "mu and lambda of one branch of the p-adic L pair");
    iv->add_option("--p", iv_p, "tower prime")->required();
    iv->add_option("--branch", iv_branch, "branch index in [0, p-2]")
        ->required();
    iv->add_option("--k0", iv_k0, "base weight (default per branch)");
    iv->add_option("--n", iv_n, "tower depth n_max")->capture_default_str();
    iv->add_option("--N", iv_N, "p-adic precision")->capture_default_str();
    iv->add_option("--chi", iv_chi, "tame character")->capture_default_str();

    // ---- charideal: class of a presented module -------------------------
    std::string ci_matrix;
    CLI::App* ci = app.add_subcommand(
        "charideal",
        "characteristic-ideal class of a finitely presented module");
    ci->add_option("--matrix", ci_matrix,
                   "presentation matrix file (inline polynomials or @series "
                   "references)")
        ->required();

    // ---- verify: the named suites ---------------------------------------
    VerificationConfig seed;  // library defaults, also the flag defaults
    std::string vf_suite = seed.suite, vf_chi = seed.chi, vf_cfg_path;
    std::string vf_emit = "text";
    long vf_p = seed.p, vf_Mcap = seed.M_cap, vf_c = seed.c;
    int vf_n = seed.n_max, vf_N = seed.N;
    unsigned vf_kmin = seed.k_min, vf_kmax = seed.k_max;
    std::vector<long> vf_S;
    CLI::App* vf = app.add_subcommand(
        "verify", "run a verification suite and report every identity");
    vf->add_option("--suite", vf_suite, "which suite to run")
        ->check(CLI::IsMember({"interpolation", "compatibility", "irregular"}))
        ->capture_default_str();
    vf->add_option("--config", vf_cfg_path,
                   "key = value file applied before explicit flags");
    vf->add_option("--emit", vf_emit, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    vf->add_option("--p", vf_p, "tower prime")->capture_default_str();
    vf->add_option("--n-max", vf_n, "tower depth")->capture_default_str();
    vf->add_option("--N", vf_N, "p-adic precision")->capture_default_str();
    vf->add_option("--M-cap", vf_Mcap, "series truncation cap")
        ->capture_default_str();
    vf->add_option("--chi", vf_chi, "tame character")->capture_default_str();
    vf->add_option("--k-min", vf_kmin, "lowest classical weight")
        ->capture_default_str();
    vf->add_option("--k-max", vf_kmax, "highest classical weight")
        ->capture_default_str();
    vf->add_option("--strip", vf_S, "stripped primes (default policy)")
        ->delimiter(',');
    vf->add_option("--c", vf_c, "regularizer (default policy when 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        err << "run with --help for the command list\n";
        return 2;
    }

    try {
        if (app.got_subcommand(lv)) {
            DirichletChar chi = [&] {
                try {
                    return chi_from_arg(lv_chi);
                } catch (const error& e) {
                    throw UsageError(e.what());
                }
            }();
            if (lv_k == 0)
                throw UsageError("--k must be >= 1 (the point is s = 1-k)");
            if (chi.is_trivial() && lv_k == 1 && lv_strip.empty()) {
                ClassNumberCheck r = class_number_formula_check();
                out << "zeta(0) = " << rat_str(r.lhs) << "\n";
                return 0;
            }
            LValue v = l_value(chi, lv_k);
            if (!lv_strip.empty()) v = euler_strip(v, lv_strip, lv_k);
            out << (lv_strip.empty() ? "L(" : "L_S(") << lv_chi << ", "
                << 1 - static_cast<long>(lv_k) << ") = "
                << (v.value.is_rational() ? rat_str(v.rational_value())
                                          : v.value.str())
                << "\n";
            if (!lv_strip.empty()) out << "S = " << brace_set(v.S) << "\n";
            return 0;
        }

        if (app.got_subcommand(eq)) {
            DirichletChar chi = [&] {
                try {
                    return chi_from_arg(eq_chi);
                } catch (const error& e) {
                    throw UsageError(e.what());
                }
            }();
            std::vector<long> S =
                eq_strip.empty() ? std::vector<long>{eq_p} : eq_strip;
            if (std::find(S.begin(), S.end(), eq_p) == S.end())
                throw UsageError("--strip must contain the tower prime " +
                                 std::to_string(eq_p));
            EquivariantLElem e = equivariant_l(eq_p, eq_n, chi, eq_k, S);
            const TowerLayer& L = *e.layer;
            out << "layer: p=" << eq_p << " n=" << eq_n << " modulus=" << L.m
                << " order=" << L.order() << " S=" << brace_set(e.S) << "\n";
            for (long u = 0; u < L.order(); ++u) {
                out << "sigma_" << L.units[u] << ": ";
                if (e.is_rational())
                    out << rat_str(e.rat->a[u]);
                else
                    out << e.cyc->a[u].str();
                out << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(pl)) {
            DirichletChar chi = [&] {
                try {
                    return chi_from_arg(pl_chi);
                } catch (const error& e) {
                    throw UsageError(e.what());
                }
            }();
            Branch b = [&] {
                try {
                    return Branch(pl_p, pl_branch);
                } catch (const error& e) {
                    throw UsageError(e.what());
                }
            }();
            unsigned k0 = pl_k0 ? pl_k0 : default_weight(pl_p, pl_branch);
            std::vector<long> S =
                pl_strip.empty() ? std::vector<long>{pl_p} : pl_strip;
            if (std::find(S.begin(), S.end(), pl_p) == S.end())
                throw UsageError("--strip must contain the tower prime " +
                                 std::to_string(pl_p));
            long c = pl_c ? pl_c : default_regulator(pl_p, chi);
            RegularizedPair rp =
                regularize(build_distribution(pl_p, pl_n, chi, k0, S), c, pl_N);
            auto pair = mellin(rp, b);
            std::ostringstream prov;
            prov << "p=" << pl_p << " branch=" << pl_branch << " k0=" << k0
                 << " n_max=" << pl_n << " S=" << brace_set(S) << " c=" << c;
            if (pl_out.empty()) {
                write_series(out, pair.first, pl_chi, prov.str() + " role=f");
                write_series(out, pair.second, pl_chi, prov.str() + " role=g");
            } else {
                std::ofstream ff(pl_out + ".f.series");
                std::ofstream fg(pl_out + ".g.series");
                if (!ff || !fg)
                    throw error("cannot write series files at basename " +
                                pl_out);
                write_series(ff, pair.first, pl_chi, prov.str() + " role=f");
                write_series(fg, pair.second, pl_chi, prov.str() + " role=g");
                out << "wrote " << pl_out << ".f.series and " << pl_out
                    << ".g.series\n";
            }
            return 0;
        }

        if (app.got_subcommand(iv)) {
            DirichletChar chi = [&] {
                try {
                    return chi_from_arg(iv_chi);
                } catch (const error& e) {
                    throw UsageError(e.what());
                }
            }();
            [&] {
                try {
                    Branch check(iv_p, iv_branch);
                    (void)check;
                } catch (const error& e) {
                    throw UsageError(e.what());
                }
            }();
            unsigned k0 = iv_k0 ? iv_k0 : default_weight(iv_p, iv_branch);
            BranchInvariants inv =
                invariants_of_branch(iv_p, iv_branch, chi, k0, iv_n, iv_N);
            out << "branch " << iv_branch << " of p=" << iv_p << " (k0=" << k0
                << ", n_max=" << iv_n << ", N=" << iv_N << ")\n";
            out << "mu_f=" << inv.mu_f << " lambda_f=" << inv.lambda_f
                << " mu_g=" << inv.mu_g << " lambda_g=" << inv.lambda_g
                << "\n";
            out << "f = " << inv.f_series.str() << "\n";
            out << "g = " << inv.g_series.str() << "\n";
            return 0;
        }

        if (app.got_subcommand(ci)) {
            auto A = read_presentation(ci_matrix);
            CharIdealClass cls =
                char_ideal_from_presentation(A, "presentation " + ci_matrix);
            out << "mu = " << cls.mu << "\n";
            out << "lambda = " << cls.lambda << "\n";
            out << "distinguished = " << poly_str(cls.distinguished)
                << "  (coefficients mod p^" << cls.N << ")\n";
            out << "class = p^" << cls.mu << " * (" << poly_str(cls.distinguished)
                << ")\n";
            return 0;
        }

        // verify: defaults, then config file, then explicitly passed flags
        VerificationConfig cfg;
        try {
            if (!vf_cfg_path.empty()) apply_config_file(cfg, vf_cfg_path);
            if (vf->count("--suite")) cfg.suite = vf_suite;
            if (vf->count("--p")) cfg.p = vf_p;
            if (vf->count("--n-max")) cfg.n_max = vf_n;
            if (vf->count("--N")) cfg.N = vf_N;
            if (vf->count("--M-cap")) cfg.M_cap = vf_Mcap;
            if (vf->count("--chi")) cfg.chi = vf_chi;
            if (vf->count("--k-min")) cfg.k_min = vf_kmin;
            if (vf->count("--k-max")) cfg.k_max = vf_kmax;
            if (vf->count("--strip")) cfg.S = vf_S;
            if (vf->count("--c")) cfg.c = vf_c;
            cfg.validate();
        } catch (const error& e) {
            err << "configuration error: " << e.what() << "\n";
            return 2;
        }
        Report rep = run_suite(cfg);
        out << (vf_emit == "json" ? rep.to_json() : rep.to_text());
        if (!rep.pass) err << "verification failure: see the report above\n";
        return rep.pass ? 0 : 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "verification failure: " << e.what() << "\n";
        return 1;
    }
}

int cli_dispatch(int argc, const char* const* argv) {
    return cli_dispatch(argc, argv, std::cout, std::cerr);
}

}  // namespace mcv
