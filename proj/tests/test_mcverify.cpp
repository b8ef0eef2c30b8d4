#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mcv/mcverify.hpp"

using namespace mcv;

namespace {

// scratch files live in the ctest working directory and are removed on
// destruction so reruns start clean
struct ScratchFile {
    std::string path;
    explicit ScratchFile(std::string name, const std::string& content)
        : path(std::move(name)) {
        std::ofstream os(path);
        os << content;
    }
    ~ScratchFile() { std::remove(path.c_str()); }
};

int run_cli(const std::vector<std::string>& args, std::string* out_s = nullptr,
            std::string* err_s = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("mcverify");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_s) *out_s = out.str();
    if (err_s) *err_s = err.str();
    return rc;
}

const CheckRecord* find_check(const Report& rep, const std::string& name) {
    for (const CheckRecord& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

// the timestamp is the only legitimately varying report field
std::string strip_timestamp(std::string s) {
    size_t at = s.find("\"generated\"");
    if (at == std::string::npos) return s;
    size_t end = s.find('\n', at);
    return s.erase(at, end - at);
}

}  // namespace

TEST_CASE("config invariants are enforced before any computation") {
    VerificationConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.p == 5);
    CHECK(cfg.n_max == 2);
    CHECK(cfg.N == 8);

    auto reject = [](void (*mut)(VerificationConfig&)) {
        VerificationConfig c;
        mut(c);
        CHECK_THROWS_AS(c.validate(), error);
    };
    reject([](VerificationConfig& c) { c.p = 4; });
    reject([](VerificationConfig& c) { c.p = 2; });
    reject([](VerificationConfig& c) { c.n_max = 5; });
    reject([](VerificationConfig& c) { c.k_min = 1; });
    reject([](VerificationConfig& c) { c.k_max = 41; });
    reject([](VerificationConfig& c) { c.k_min = 10; c.k_max = 4; });
    reject([](VerificationConfig& c) { c.S = {3, 7}; c.p = 5; });
    reject([](VerificationConfig& c) { c.c = 10; });  // divisible by p = 5
    reject([](VerificationConfig& c) { c.c = 1; });
    reject([](VerificationConfig& c) { c.suite = "everything"; });
    reject([](VerificationConfig& c) { c.chi = "chi:abc"; });

    // effective policies
    VerificationConfig c2;
    c2.p = 5;
    c2.chi = "chi:3:2:1:2";
    std::vector<long> S = c2.effective_S();
    CHECK(S == std::vector<long>{3, 5});
    CHECK(c2.effective_c() % 5 != 0);
    CHECK(c2.effective_c() % 3 != 0);  // prime to the conductor as well
    c2.n_max = 2;
    CHECK(c2.truncation() == 24);
    c2.M_cap = 10;
    CHECK(c2.truncation() == 10);
    c2.n_max = 0;
    CHECK(c2.truncation() == 0);
}

TEST_CASE("config files override defaults and flags override config files") {
    ScratchFile f("tmp_mcv_cfg.txt",
                  "# comment line\n"
                  "p = 7\n"
                  "n_max = 1\n"
                  "\n"
                  "chi = trivial\n"
                  "S = 7,11\n"
                  "k_max = 14   # trailing comment\n");
    VerificationConfig cfg;
    apply_config_file(cfg, f.path);
    CHECK(cfg.p == 7);
    CHECK(cfg.n_max == 1);
    CHECK(cfg.k_max == 14);
    CHECK(cfg.S == std::vector<long>{7, 11});
    CHECK(cfg.N == 8);  // untouched keys keep their defaults
    CHECK_NOTHROW(cfg.validate());

    ScratchFile bad_key("tmp_mcv_cfg_badkey.txt", "prime = 7\n");
    VerificationConfig c2;
    CHECK_THROWS_AS(apply_config_file(c2, bad_key.path), error);

    ScratchFile bad_val("tmp_mcv_cfg_badval.txt", "p = seven\n");
    CHECK_THROWS_AS(apply_config_file(c2, bad_val.path), error);

    CHECK_THROWS_AS(apply_config_file(c2, "tmp_mcv_cfg_missing.txt"), error);
}

TEST_CASE("series files round-trip exactly") {
    IwasawaSeries s(Branch(5, 2), 4, 6);
    s.set_coeff(0, PadicInt(5, 6, 7));
    s.set_coeff(1, PadicInt(5, 6, -3));
    s.set_coeff(3, PadicInt(5, 6, 125));
    std::ostringstream os;
    write_series(os, s, "trivial", "unit test fixture");

    std::istringstream is(os.str());
    std::string chi, prov;
    IwasawaSeries back = read_series(is, &chi, &prov);
    CHECK(back == s);
    CHECK(back.trunc() == 4);
    CHECK(back.precision() == 6);
    CHECK(back.branch().index == 2);
    CHECK(chi == "trivial");
    CHECK(prov == "unit test fixture");

    // two blocks concatenate cleanly
    std::ostringstream two;
    write_series(two, s, "trivial", "first");
    write_series(two, s, "trivial", "second");
    std::istringstream both(two.str());
    read_series(both, nullptr, &prov);
    CHECK(prov == "first");
    read_series(both, nullptr, &prov);
    CHECK(prov == "second");

    // a truncated file is an error, not a shorter series
    std::string text = os.str();
    std::istringstream cut(text.substr(0, text.size() - 3));
    CHECK_THROWS_AS(read_series(cut), error);

    std::istringstream empty("");
    CHECK_THROWS_AS(read_series(empty), error);

    std::istringstream noprov("p=5 branch=2 N=6 M=0 chi=trivial\n7\n");
    CHECK_THROWS_AS(read_series(noprov), error);
}

TEST_CASE("presentation matrices: inline polynomials and series references") {
    IwasawaSeries ref(Branch(5, 2), 3, 6);
    ref.set_coeff(0, PadicInt(5, 6, 5));
    ref.set_coeff(1, PadicInt(5, 6, 1));
    std::ostringstream blob;
    write_series(blob, ref, "trivial", "matrix entry");
    ScratchFile entry("tmp_mcv_entry.series", blob.str());

    ScratchFile mat("tmp_mcv_mat.txt",
                    "p=5 branch=2 N=6 M=3\n"
                    "T+5 0\n"
                    "25 @tmp_mcv_entry.series\n");
    auto A = read_presentation(mat.path);
    REQUIRE(A.size() == 2);
    REQUIRE(A[0].size() == 2);
    CHECK(A[0][0] == ref);  // T+5 parsed inline equals the stored series
    CHECK(A[0][1].is_zero());
    CHECK(A[1][0].coeff(0).residue() == 25);
    CHECK(A[1][1] == ref);

    // polynomial grammar: signs, exponents, duplicate-term accumulation
    ScratchFile g("tmp_mcv_gram.txt",
                  "p=5 branch=2 N=6 M=4\n"
                  "T^2-3T+2 -T^4 T+T 12\n");
    auto G = read_presentation(g.path);
    REQUIRE(G.size() == 1);
    CHECK(G[0][0].coeff(2).residue() == 1);
    CHECK(G[0][0].coeff(1) == PadicInt(5, 6, -3));
    CHECK(G[0][0].coeff(0).residue() == 2);
    CHECK(G[0][1].coeff(4) == PadicInt(5, 6, -1));
    CHECK(G[0][2].coeff(1).residue() == 2);
    CHECK(G[0][3].coeff(0).residue() == 12);

    ScratchFile too_deep("tmp_mcv_deep.txt",
                         "p=5 branch=2 N=6 M=2\nT^3\n");
    CHECK_THROWS_AS(read_presentation(too_deep.path), error);

    // a referenced series must live on the same branch ring
    IwasawaSeries other(Branch(5, 1), 3, 6);
    other.set_coeff(0, PadicInt(5, 6, 1));
    std::ostringstream ob;
    write_series(ob, other, "trivial", "wrong branch");
    ScratchFile wrong("tmp_mcv_wrong.series", ob.str());
    ScratchFile mat2("tmp_mcv_mat2.txt",
                     "p=5 branch=2 N=6 M=3\n@tmp_mcv_wrong.series\n");
    CHECK_THROWS_AS(read_presentation(mat2.path), BaseMismatch);

    // the characteristic ideal of a presented module flows through the file
    ScratchFile diag("tmp_mcv_diag.txt",
                     "p=5 branch=2 N=8 M=6\n"
                     "T+5 0\n"
                     "0 5\n");
    CharIdealClass cls = char_ideal_from_presentation(read_presentation(diag.path));
    CHECK(cls.mu == 1);
    CHECK(cls.lambda == 1);
}

TEST_CASE("interpolation suite: folded series match stripped classical values") {
    VerificationConfig cfg;
    cfg.suite = "interpolation";
    cfg.p = 5;
    cfg.n_max = 1;
    cfg.N = 6;
    cfg.k_min = 2;
    cfg.k_max = 10;
    Report rep = suite_interpolation(cfg);
    CHECK(rep.pass);
    CHECK(rep.suite == "interpolation");

    // trivial chi at p = 5: one even interpolating branch (2), two parity
    // branches (1, 3); branch 0 is the pole and only appears in the notes
    const CheckRecord* base = find_check(rep, "interp:br02:k02");
    REQUIRE(base != nullptr);
    CHECK(base->pass);
    CHECK(base->inputs.find("L_S(chi,-1)") != std::string::npos);
    CHECK(find_check(rep, "interp:br02:k06") != nullptr);
    CHECK(find_check(rep, "interp:br02:k10") != nullptr);
    CHECK(find_check(rep, "interp:br00:k02") == nullptr);
    CHECK(find_check(rep, "parity:br01") != nullptr);
    CHECK(find_check(rep, "parity:br03") != nullptr);
    bool pole_note = false;
    for (const std::string& n : rep.notes)
        pole_note = pole_note || n.find("pole") != std::string::npos;
    CHECK(pole_note);

    // records are sorted by name and both sides are printed digits-first
    for (size_t i = 1; i < rep.checks.size(); ++i)
        CHECK(rep.checks[i - 1].name < rep.checks[i].name);
    CHECK(base->lhs.find("mod") != std::string::npos);
    CHECK(base->rhs.find("mod") != std::string::npos);

    // a quadratic character exercises the odd branches
    VerificationConfig qc;
    qc.suite = "interpolation";
    qc.p = 5;
    qc.n_max = 1;
    qc.N = 6;
    qc.chi = "chi:3:2:1:2";
    qc.k_max = 9;
    Report qrep = suite_interpolation(qc);
    CHECK(qrep.pass);
    CHECK(find_check(qrep, "interp:br01:k05") != nullptr);
    CHECK(find_check(qrep, "interp:br03:k03") != nullptr);
    CHECK(find_check(qrep, "parity:br02") != nullptr);

    // n_max = 0 pins each branch to its base weight only
    VerificationConfig zc;
    zc.suite = "interpolation";
    zc.p = 5;
    zc.n_max = 0;
    zc.N = 6;
    zc.k_max = 10;
    Report zrep = suite_interpolation(zc);
    CHECK(zrep.pass);
    CHECK(find_check(zrep, "interp:br02:k02") != nullptr);
    CHECK(find_check(zrep, "interp:br02:k06") == nullptr);

    VerificationConfig oc;
    oc.chi = "chi:7:3:1:6";  // order-6 character has irrational values
    oc.p = 5;
    CHECK_THROWS_AS(suite_interpolation(oc), error);
}

TEST_CASE("compatibility suite: exact projections plus the negative control") {
    VerificationConfig cfg;
    cfg.suite = "compatibility";
    cfg.p = 3;
    cfg.n_max = 2;
    cfg.N = 8;
    cfg.k_min = 2;
    cfg.k_max = 4;
    Report rep = suite_compatibility(cfg);
    CHECK(rep.pass);

    for (const char* name : {"proj:k02:n1", "proj:k02:n2", "proj:k03:n1",
                             "proj:k04:n2", "control:proj:k02:n1",
                             "control:proj:k02:n2", "control:integrality"}) {
        const CheckRecord* c = find_check(rep, name);
        REQUIRE_MESSAGE(c != nullptr, name);
        CHECK_MESSAGE(c->pass, name);
    }
    const CheckRecord* ctl = find_check(rep, "control:integrality");
    CHECK(ctl->lhs.find("refused") != std::string::npos);
    CHECK(ctl->rhs.find("NotIntegral") != std::string::npos);

    // too shallow for the control: the suite says so instead of skipping
    VerificationConfig shallow = cfg;
    shallow.n_max = 1;
    Report srep = suite_compatibility(shallow);
    CHECK(srep.pass);
    CHECK(find_check(srep, "control:integrality") == nullptr);
    bool note = false;
    for (const std::string& n : srep.notes)
        note = note || n.find("negative control skipped") != std::string::npos;
    CHECK(note);
}

TEST_CASE("irregular suite: Kummer, lambda against the class number, mu = 0") {
    VerificationConfig reg;
    reg.suite = "irregular";
    reg.p = 5;
    reg.N = 8;
    Report rrep = suite_irregular(reg);
    CHECK(rrep.pass);
    const CheckRecord* kum = find_check(rrep, "kummer");
    REQUIRE(kum != nullptr);
    CHECK(kum->pass);
    CHECK(kum->lhs.find("regular") != std::string::npos);
    const CheckRecord* lvc = find_check(rrep, "lambda-vs-class");
    REQUIRE(lvc != nullptr);
    CHECK(lvc->lhs.find("sum of lambda_f = 0") != std::string::npos);
    CHECK(find_check(rrep, "mu-zero")->pass);
    CHECK(find_check(rrep, "pole")->pass);
    bool consequence = false;
    for (const std::string& n : rrep.notes)
        consequence = consequence || n.find("consequence check") != std::string::npos;
    CHECK(consequence);

    VerificationConfig irr;
    irr.suite = "irregular";
    irr.p = 37;
    irr.N = 8;
    Report irep = suite_irregular(irr);
    CHECK(irep.pass);
    const CheckRecord* b32 = find_check(irep, "branch:b32");
    REQUIRE(b32 != nullptr);
    CHECK(b32->pass);
    CHECK(b32->lhs == "(mu_f, lambda_f) = (0, 1)");
    // 37 is irregular exactly once; no other branch contributes
    for (const CheckRecord& c : irep.checks)
        if (c.name.rfind("branch:", 0) == 0) CHECK(c.name == "branch:b32");
    const CheckRecord* ilvc = find_check(irep, "lambda-vs-class");
    CHECK(ilvc->lhs.find("sum of lambda_f = 1") != std::string::npos);
    CHECK(ilvc->rhs.find("= 1") != std::string::npos);

    VerificationConfig big;
    big.suite = "irregular";
    big.p = 101;
    CHECK_THROWS_AS(suite_irregular(big), BoundExceeded);
}

TEST_CASE("reports render deterministically in both formats") {
    VerificationConfig cfg;
    cfg.suite = "interpolation";
    cfg.p = 5;
    cfg.n_max = 1;
    cfg.N = 6;
    cfg.k_max = 6;
    Report rep = run_suite(cfg);

    std::string j1 = rep.to_json();
    std::string j2 = run_suite(cfg).to_json();
    CHECK(strip_timestamp(j1) == strip_timestamp(j2));

    auto parsed = nlohmann::json::parse(j1);
    CHECK(parsed["suite"] == "interpolation");
    CHECK(parsed["pass"] == true);
    CHECK(parsed["version"] == kVersion);
    CHECK(parsed["config"]["p"] == 5);
    CHECK(parsed["config"]["S_policy"] == "default");
    CHECK(parsed["config"]["c_policy"] == "default");
    REQUIRE(parsed["checks"].is_array());
    REQUIRE(!parsed["checks"].empty());
    for (const auto& c : parsed["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("inputs"));
        CHECK(c.contains("lhs"));
        CHECK(c.contains("rhs"));
        CHECK(c.contains("precision"));
        CHECK(c.contains("pass"));
    }
    // stable key order, not map order
    CHECK(j1.find("\"suite\"") < j1.find("\"config\""));
    CHECK(j1.find("\"config\"") < j1.find("\"checks\""));
    CHECK(j1.find("\"checks\"") < j1.find("\"pass\""));

    std::string t = rep.to_text();
    CHECK(t.find("suite interpolation: PASS") != std::string::npos);
    CHECK(t.find("[ok]") != std::string::npos);
    CHECK(t.find("[FAIL]") == std::string::npos);
    CHECK(t.find("==") != std::string::npos);  // both sides always printed
}

TEST_CASE("cli: lvalue prints exact special values") {
    std::string out, err;
    CHECK(run_cli({"lvalue", "--chi", "chi:3:2:1:2", "--k", "1"}, &out) == 0);
    CHECK(out == "L(chi:3:2:1:2, 0) = 1/3\n");

    CHECK(run_cli({"lvalue", "--k", "1"}, &out) == 0);
    CHECK(out == "zeta(0) = -1/2\n");

    CHECK(run_cli({"lvalue", "--k", "2"}, &out) == 0);
    CHECK(out == "L(trivial, -1) = -1/12\n");

    CHECK(run_cli({"lvalue", "--chi", "kron:-7", "--k", "1"}, &out) == 0);
    CHECK(out == "L(kron:-7, 0) = 1\n");  // 2h/w with h = 1, w = 2

    CHECK(run_cli({"lvalue", "--k", "2", "--strip", "3"}, &out) == 0);
    CHECK(out.find("L_S(trivial, -1) = ") != std::string::npos);
    CHECK(out.find("S = {3}") != std::string::npos);
    // (1 - 3) * (-1/12) = 1/6
    CHECK(out.find("= 1/6") != std::string::npos);

    CHECK(run_cli({"lvalue", "--k", "0"}, &out, &err) == 2);
    CHECK(err.find("usage error") != std::string::npos);

    CHECK(run_cli({"lvalue", "--chi", "chi:bad", "--k", "2"}, &out, &err) == 2);
    CHECK(run_cli({"lvalue"}, &out, &err) == 2);  // --k is required
}

TEST_CASE("cli: equivariant prints the element coefficient by coefficient") {
    std::string out, err;
    CHECK(run_cli({"equivariant", "--p", "3", "--n", "0", "--k", "2"}, &out) ==
          0);
    CHECK(out.find("sigma_1: 1/12") != std::string::npos);
    CHECK(out.find("sigma_2: 1/12") != std::string::npos);
    CHECK(out.find("modulus=3") != std::string::npos);

    // strip set without the tower prime is rejected before any computation
    CHECK(run_cli({"equivariant", "--p", "3", "--k", "2", "--strip", "5"},
                  &out, &err) == 2);
    CHECK(err.find("usage error") != std::string::npos);
}

TEST_CASE("cli: padic-l writes series files that read back verbatim") {
    std::string out, err;
    CHECK(run_cli({"padic-l", "--p", "5", "--branch", "2", "--n", "1", "--N",
                   "6", "--out", "tmp_mcv_pair"},
                  &out) == 0);
    CHECK(out.find("tmp_mcv_pair.f.series") != std::string::npos);

    std::ifstream ff("tmp_mcv_pair.f.series");
    REQUIRE(ff.good());
    std::string chi, prov;
    IwasawaSeries f = read_series(ff, &chi, &prov);
    CHECK(f.p() == 5);
    CHECK(f.branch().index == 2);
    CHECK(prov.find("role=f") != std::string::npos);
    CHECK(prov.find("k0=2") != std::string::npos);
    std::ifstream fg("tmp_mcv_pair.g.series");
    REQUIRE(fg.good());
    IwasawaSeries g = read_series(fg, &chi, &prov);
    CHECK(prov.find("role=g") != std::string::npos);
    CHECK(!g.is_zero());
    std::remove("tmp_mcv_pair.f.series");
    std::remove("tmp_mcv_pair.g.series");

    // stdout mode emits two concatenated readable blocks
    CHECK(run_cli({"padic-l", "--p", "5", "--branch", "2", "--n", "1", "--N",
                   "6"},
                  &out) == 0);
    std::istringstream both(out);
    IwasawaSeries f2 = read_series(both, nullptr, &prov);
    CHECK(f2 == f);
    IwasawaSeries g2 = read_series(both, nullptr, &prov);
    CHECK(g2 == g);

    CHECK(run_cli({"padic-l", "--p", "5", "--branch", "7"}, &out, &err) == 2);
}

TEST_CASE("cli: invariants and charideal round out the library surface") {
    std::string out, err;
    CHECK(run_cli({"invariants", "--p", "5", "--branch", "2", "--n", "1"},
                  &out) == 0);
    CHECK(out.find("mu_f=0 lambda_f=0") != std::string::npos);
    CHECK(out.find("k0=2") != std::string::npos);

    // parity-mismatched branch is a computation refusal, not a usage error
    CHECK(run_cli({"invariants", "--p", "5", "--branch", "1", "--n", "1"},
                  &out, &err) == 1);
    CHECK(err.find("verification failure") != std::string::npos);

    ScratchFile diag("tmp_mcv_cli_mat.txt",
                     "p=5 branch=2 N=8 M=6\n"
                     "T+5 0\n"
                     "0 5\n");
    CHECK(run_cli({"charideal", "--matrix", diag.path}, &out) == 0);
    CHECK(out.find("mu = 1") != std::string::npos);
    CHECK(out.find("lambda = 1") != std::string::npos);
    CHECK(out.find("T") != std::string::npos);

    CHECK(run_cli({"charideal", "--matrix", "tmp_mcv_nofile.txt"}, &out,
                  &err) == 1);
}

TEST_CASE("cli: verify wires configs, flags and emit formats together") {
    std::string out, err;
    int rc = run_cli({"verify", "--suite", "interpolation", "--p", "5",
                      "--n-max", "1", "--N", "6", "--k-max", "6", "--emit",
                      "json"},
                     &out);
    CHECK(rc == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["pass"] == true);
    CHECK(j["config"]["p"] == 5);
    CHECK(j["config"]["n_max"] == 1);

    // config file supplies values, explicit flags beat it
    ScratchFile cfgf("tmp_mcv_vcfg.txt", "p = 7\nn_max = 1\nN = 6\nk_max = 8\n");
    rc = run_cli({"verify", "--suite", "compatibility", "--config", cfgf.path},
                 &out);
    CHECK(rc == 0);
    CHECK(out.find("p=7") != std::string::npos);
    rc = run_cli({"verify", "--suite", "compatibility", "--config", cfgf.path,
                  "--p", "5"},
                 &out);
    CHECK(rc == 0);
    CHECK(out.find("p=5") != std::string::npos);

    CHECK(run_cli({"verify", "--suite", "nonsense"}, &out, &err) == 2);
    CHECK(err.find("usage error") != std::string::npos);
    CHECK(run_cli({"verify", "--p", "4"}, &out, &err) == 2);
    CHECK(err.find("configuration error") != std::string::npos);
    CHECK(run_cli({"nonsense"}, &out, &err) == 2);
    CHECK(run_cli({}, &out, &err) == 2);  // a subcommand is required

    CHECK(run_cli({"--help"}, &out, &err) == 0);
    CHECK(out.find("verify") != std::string::npos);
    CHECK(out.find("lvalue") != std::string::npos);
}
