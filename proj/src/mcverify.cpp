#include "mcv/mcverify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mcv/numutil.hpp"

namespace mcv {

namespace {

using ordered_json = nlohmann::ordered_json;

DirichletChar parse_chi(const std::string& s) {
    if (s == "trivial") return DirichletChar::trivial_char();
    return DirichletChar::parse(s);
}

std::string set_str(const std::vector<long>& v) {
    std::string out = "{";
    for (size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out + "}";
}

// zero-padded decimal so lexicographic check names sort numerically
std::string pad2(long v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

std::string iso_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// the smallest admissible weight >= 2 congruent to the branch index
unsigned base_weight(long p, long branch) {
    return static_cast<unsigned>(branch < 2 ? branch + (p - 1) : branch);
}

IwasawaSeries truncate_series(const IwasawaSeries& s, long M) {
    if (M >= s.trunc()) return s;
    IwasawaSeries out(s.branch(), M, s.precision());
    for (long j = 0; j <= M; ++j) out.set_coeff(j, s.coeff(j));
    return out;
}

void sort_checks(Report& rep) {
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) {
                  return a.name < b.name;
              });
    rep.pass = true;
    for (const CheckRecord& c : rep.checks) rep.pass = rep.pass && c.pass;
}

/* key=value header lines for series and matrix files; provenance, when
   present, is free text running to the end of the line */
std::map<std::string, std::string> parse_header(const std::string& line,
                                                std::string* provenance) {
    std::string head = line;
    if (provenance) {
        const std::string key = "provenance=";
        size_t at = line.find(key);
        if (at == std::string::npos)
            throw error("series header lacks provenance field: " + line);
        *provenance = line.substr(at + key.size());
        head = line.substr(0, at);
    }
    std::map<std::string, std::string> kv;
    std::istringstream is(head);
    std::string tok;
    while (is >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw error("malformed header token '" + tok + "' in: " + line);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

long header_long(const std::map<std::string, std::string>& kv,
                 const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw error("header missing key '" + key + "'");
    try {
        return std::stol(it->second);
    } catch (const std::exception&) {
        throw error("header key '" + key + "' is not an integer: " +
                    it->second);
    }
}

/* inline polynomial in T, no spaces: terms like 25, 5T, T^2, -3T^4 */
IwasawaSeries parse_poly(const std::string& tok, const Branch& b, long M,
                         int N) {
    IwasawaSeries s(b, M, N);
    size_t i = 0;
    while (i < tok.size()) {
        int sign = 1;
        if (tok[i] == '+') {
            ++i;
        } else if (tok[i] == '-') {
            sign = -1;
            ++i;
        }
        size_t j = i;
        while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j])))
            ++j;
        std::string digits = tok.substr(i, j - i);
        long exp = 0;
        if (j < tok.size() && tok[j] == 'T') {
            exp = 1;
            ++j;
            if (j < tok.size() && tok[j] == '^') {
                ++j;
                size_t e0 = j;
                while (j < tok.size() &&
                       std::isdigit(static_cast<unsigned char>(tok[j])))
                    ++j;
                if (j == e0)
                    throw error("malformed exponent in polynomial term: " + tok);
                exp = std::stol(tok.substr(e0, j - e0));
            }
        } else if (digits.empty()) {
            throw error("malformed polynomial term in: " + tok);
        }
        if (exp > M)
            throw error("term T^" + std::to_string(exp) +
                        " exceeds truncation degree " + std::to_string(M));
        Int c = digits.empty() ? Int(1) : Int(digits.c_str());
        if (sign < 0) c = -c;
        s.set_coeff(exp, s.coeff(exp) + PadicInt(b.p, N, c));
        i = j;
    }
    return s;
}

}  // namespace

DirichletChar VerificationConfig::character() const { return parse_chi(chi); }

std::vector<long> VerificationConfig::effective_S() const {
    return effective_strip_set(p, character(), S.empty() ? std::vector<long>{p} : S);
}

long VerificationConfig::effective_c() const {
    return c != 0 ? c : default_regulator(p, character());
}

long VerificationConfig::truncation() const {
    long M = 1;
    for (int i = 0; i < n_max; ++i) M *= p;
    return std::min(M - 1, M_cap);
}

void VerificationConfig::validate() const {
    if (suite != "interpolation" && suite != "compatibility" &&
        suite != "irregular")
        throw error("unknown suite '" + suite +
                    "' (expected interpolation, compatibility or irregular)");
    if (p < 3 || !is_prime(p))
        throw error("p = " + std::to_string(p) + " is not an odd prime");
    if (n_max < 0 || n_max > 4)
        throw error("n_max = " + std::to_string(n_max) +
                    " outside the desk-scale range [0, 4]");
    if (N < 2) throw error("precision N must be at least 2");
    if (M_cap < 1) throw error("truncation cap must be positive");
    if (k_min < 2 || k_max > 40 || k_min > k_max)
        throw error("k-range [" + std::to_string(k_min) + ", " +
                    std::to_string(k_max) + "] outside [2, 40]");
    if (!S.empty() &&
        std::find(S.begin(), S.end(), p) == S.end())
        throw error("explicit S " + set_str(S) + " does not contain p = " +
                    std::to_string(p));
    if (c != 0 && (c < 2 || c % p == 0))
        throw error("regulator c = " + std::to_string(c) +
                    " must be >= 2 and prime to p");
    character();  // throws on a malformed chi string
}

void apply_config_file(VerificationConfig& cfg, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw error("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw error(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "suite") cfg.suite = val;
            else if (key == "p") cfg.p = std::stol(val);
            else if (key == "n_max") cfg.n_max = std::stoi(val);
            else if (key == "N") cfg.N = std::stoi(val);
            else if (key == "M_cap") cfg.M_cap = std::stol(val);
            else if (key == "chi") cfg.chi = val;
            else if (key == "k_min") cfg.k_min = static_cast<unsigned>(std::stoul(val));
            else if (key == "k_max") cfg.k_max = static_cast<unsigned>(std::stoul(val));
            else if (key == "c") cfg.c = std::stol(val);
            else if (key == "S") {
                cfg.S.clear();
                std::istringstream vs(val);
                std::string item;
                while (std::getline(vs, item, ','))
                    if (!item.empty()) cfg.S.push_back(std::stol(item));
            } else {
                throw error("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw error(path + ":" + std::to_string(lineno) +
                        ": bad value for " + key + ": " + val);
        }
    }
}

std::string Report::to_json() const {
    ordered_json j;
    j["suite"] = suite;
    ordered_json jc;
    jc["p"] = config.p;
    jc["n_max"] = config.n_max;
    jc["N"] = config.N;
    jc["M"] = config.truncation();
    jc["M_cap"] = config.M_cap;
    jc["chi"] = config.chi;
    jc["k_min"] = config.k_min;
    jc["k_max"] = config.k_max;
    jc["S"] = config.effective_S();
    jc["S_policy"] = config.S.empty() ? "default" : "explicit";
    jc["c"] = config.effective_c();
    jc["c_policy"] = config.c == 0 ? "default" : "explicit";
    j["config"] = jc;
    ordered_json arr = ordered_json::array();
    for (const CheckRecord& c : checks) {
        ordered_json rec;
        rec["name"] = c.name;
        rec["inputs"] = c.inputs;
        rec["lhs"] = c.lhs;
        rec["rhs"] = c.rhs;
        rec["precision"] = c.precision;
        rec["pass"] = c.pass;
        arr.push_back(rec);
    }
    j["checks"] = arr;
    j["pass"] = pass;
    j["version"] = kVersion;
    ordered_json env;
    env["gmp"] = gmp_version;
#ifdef MCV_HAVE_OPENMP
    env["openmp"] = true;
#else
    env["openmp"] = false;
#endif
    env["generated"] = iso_timestamp();
    j["environment"] = env;
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream os;
    size_t ok = 0;
    for (const CheckRecord& c : checks) ok += c.pass ? 1 : 0;
    os << "suite " << suite << ": " << (pass ? "PASS" : "FAIL") << " (" << ok
       << "/" << checks.size() << " checks)\n";
    os << "config: p=" << config.p << " n_max=" << config.n_max
       << " N=" << config.N << " M=" << config.truncation()
       << " chi=" << config.chi << " k=[" << config.k_min << ","
       << config.k_max << "] S=" << set_str(config.effective_S())
       << " c=" << config.effective_c() << "\n";
    for (const CheckRecord& c : checks) {
        os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << "\n";
        os << "       inputs: " << c.inputs << "\n";
        os << "       " << c.lhs << "  ==  " << c.rhs << "\n";
        os << "       certified: " << c.precision << "\n";
    }
    for (const std::string& n : notes) os << "note: " << n << "\n";
    return os.str();
}

void write_series(std::ostream& os, const IwasawaSeries& s,
                  const std::string& chi, const std::string& provenance) {
    os << "p=" << s.p() << " branch=" << s.branch().index
       << " N=" << s.precision() << " M=" << s.trunc()
       << " chi=" << (chi.empty() ? "trivial" : chi)
       << " provenance=" << provenance << "\n";
    for (long j = 0; j <= s.trunc(); ++j) os << s.coeff(j).residue() << "\n";
}

IwasawaSeries read_series(std::istream& is, std::string* chi,
                          std::string* provenance) {
    std::string line;
    if (!std::getline(is, line)) throw error("series stream is empty");
    std::string prov;
    auto kv = parse_header(line, &prov);
    if (provenance) *provenance = prov;
    auto ci = kv.find("chi");
    if (ci == kv.end()) throw error("series header lacks chi field");
    if (chi) *chi = ci->second;
    long p = header_long(kv, "p");
    long br = header_long(kv, "branch");
    int N = static_cast<int>(header_long(kv, "N"));
    long M = header_long(kv, "M");
    IwasawaSeries s(Branch(p, br), M, N);
    for (long j = 0; j <= M; ++j) {
        if (!std::getline(is, line))
            throw error("series file ends after " + std::to_string(j) +
                        " of " + std::to_string(M + 1) + " residues");
        try {
            s.set_coeff(j, PadicInt(p, N, Int(line.c_str())));
        } catch (const std::invalid_argument&) {
            throw error("bad residue line '" + line + "'");
        }
    }
    return s;
}

std::vector<std::vector<IwasawaSeries>> read_presentation(
    const std::string& path) {
    std::ifstream is(path);
    if (!is) throw error("cannot open presentation file " + path);
    std::string line;
    if (!std::getline(is, line))
        throw error("presentation file " + path + " is empty");
    auto kv = parse_header(line, nullptr);
    long p = header_long(kv, "p");
    Branch b(p, header_long(kv, "branch"));
    int N = static_cast<int>(header_long(kv, "N"));
    long M = header_long(kv, "M");

    std::vector<std::vector<IwasawaSeries>> rows;
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<IwasawaSeries> row;
        while (ls >> tok) {
            if (tok[0] == '@') {
                std::ifstream sf(dir / tok.substr(1));
                if (!sf)
                    throw error("cannot open referenced series file " +
                                tok.substr(1));
                IwasawaSeries s = read_series(sf);
                if (s.p() != p || s.branch().index != b.index)
                    throw BaseMismatch("referenced series " + tok.substr(1) +
                                       " lives on a different branch ring");
                row.push_back(s);
            } else {
                row.push_back(parse_poly(tok, b, M, N));
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw error("presentation file has no matrix rows");
    return rows;
}

/* ------------------------------- suites ------------------------------- */

Report suite_interpolation(const VerificationConfig& cfg) {
    cfg.validate();
    Report rep;
    rep.suite = "interpolation";
    rep.config = cfg;
    DirichletChar chi = cfg.character();
    if (chi.order() > 2)
        throw error(
            "interpolation suite needs a rational-valued character "
            "(order <= 2), got order " +
            std::to_string(chi.order()));
    const long p = cfg.p;
    const int parity = chi.is_odd() ? 1 : 0;
    const std::vector<long> S = cfg.effective_S();
    const long c = cfg.effective_c();
    const long M = cfg.truncation();

    // regularized pairs shared across branches, keyed by base weight
    std::map<unsigned, RegularizedPair> pairs;
    auto pair_at = [&](unsigned k0) -> const RegularizedPair& {
        auto it = pairs.find(k0);
        if (it == pairs.end())
            it = pairs
                     .emplace(k0, regularize(build_distribution(
                                                 p, cfg.n_max, chi, k0, S),
                                             c, cfg.N))
                     .first;
        return it->second;
    };

    std::vector<long> interpolating;
    for (long b = 0; b < p - 1; ++b) {
        if (b == 0 && chi.is_trivial()) continue;  // pole of zeta
        if (b % 2 == parity) interpolating.push_back(b);
    }
    if (interpolating.empty())
        rep.notes.push_back(
            "no branch of the matching parity below the pole exists at p = " +
            std::to_string(p) + "; the interpolation check set is empty");
    if (chi.is_trivial())
        rep.notes.push_back(
            "branch 0 carries the pole of zeta and is only represented as "
            "the regularized pair f/g (lambda_g = 1); it is exercised by the "
            "library tests, not enumerated here");

    for (long b : interpolating) {
        unsigned k0 = base_weight(p, b);
        const RegularizedPair& rp = pair_at(k0);
        auto pair = mellin(rp, Branch(p, b));
        IwasawaSeries f = truncate_series(pair.first, M);
        IwasawaSeries g = truncate_series(pair.second, M);

        for (unsigned k = std::max(2u, cfg.k_min); k <= cfg.k_max; ++k) {
            if ((static_cast<long>(k) - static_cast<long>(k0)) % (p - 1) != 0)
                continue;
            if (cfg.n_max == 0 && k != k0) continue;  // single-point regime
            PadicInt t = interpolation_point(p, k, k0, cfg.N);
            PadicInt num = evaluate(f, t);
            PadicInt den = evaluate(g, t);
            long digits = std::min<long>(num.precision(), den.precision());
            if (k != k0)
                digits = std::min<long>(
                    digits,
                    cfg.n_max + 1 +
                        vp(Int(static_cast<long>(k) - static_cast<long>(k0)),
                           p));
            Rat target = euler_strip(l_value(chi, k), S, k).rational_value();
            int d = static_cast<int>(digits);
            PadicInt lhs = num.with_precision(d) * PadicInt(p, d, target.get_den());
            PadicInt rhs = den.with_precision(d) * PadicInt(p, d, target.get_num());

            CheckRecord rec;
            rec.name = "interp:br" + pad2(b) + ":k" + pad2(k);
            rec.inputs = "p=" + std::to_string(p) + " chi=" + cfg.chi +
                         " branch=" + std::to_string(b) +
                         " k0=" + std::to_string(k0) +
                         " k=" + std::to_string(k) + " t=(1+p)^" +
                         std::to_string(static_cast<long>(k) - k0) +
                         "-1 S=" + set_str(S) + " c=" + std::to_string(c) +
                         " L_S(chi," + std::to_string(1 - static_cast<long>(k)) +
                         ")=" + rat_str(target);
            rec.lhs = "f(t)*den(L) = " + lhs.str();
            rec.rhs = "g(t)*num(L) = " + rhs.str();
            rec.precision =
                std::to_string(digits) + " p-adic digits (evaluation " +
                "certificates" +
                (k != k0 ? " and tower depth n_max+1+v_p(k-k0)" : "") + ")";
            rec.pass = (lhs == rhs) && digits >= 2;
            rep.checks.push_back(rec);
        }
    }

    // opposite-parity branches: the folded series must vanish literally
    unsigned k0p = parity == 0 ? 2u : 3u;
    for (long b = 0; b < p - 1; ++b) {
        if (b % 2 == parity) continue;
        auto pair = mellin(pair_at(k0p), Branch(p, b));
        CheckRecord rec;
        rec.name = "parity:br" + pad2(b);
        rec.inputs = "p=" + std::to_string(p) + " chi=" + cfg.chi +
                     " branch=" + std::to_string(b) + " folded from weight " +
                     std::to_string(k0p);
        rec.lhs = "f-series with all " + std::to_string(pair.first.trunc() + 1) +
                  " coefficients == 0 mod p^" +
                  std::to_string(pair.first.precision()) + ": " +
                  (pair.first.is_zero() ? "yes" : "no");
        rec.rhs = "0 (parity vanishing)";
        rec.precision = "exact at p-adic precision " +
                        std::to_string(pair.first.precision());
        rec.pass = pair.first.is_zero();
        rep.checks.push_back(rec);
    }

    sort_checks(rep);
    return rep;
}

Report suite_compatibility(const VerificationConfig& cfg) {
    cfg.validate();
    Report rep;
    rep.suite = "compatibility";
    rep.config = cfg;
    DirichletChar chi = cfg.character();
    const long p = cfg.p;
    const std::vector<long> S = cfg.effective_S();

    auto witness_records = [&](const ZetaDistribution& d,
                               const std::string& prefix, unsigned k) {
        for (int n = 1; n <= d.n_max; ++n) {
            CheckRecord rec;
            rec.name = prefix + ":k" + pad2(k) + ":n" + std::to_string(n);
            rec.inputs = "p=" + std::to_string(p) + " chi=" + cfg.chi +
                         " k=" + std::to_string(k) + " S=" + set_str(d.S) +
                         " layers " + std::to_string(n) + " -> " +
                         std::to_string(n - 1);
            if (d.layers[n].is_rational()) {
                RatElem down = project(*d.layers[n].rat);
                const RatElem& ref = *d.layers[n - 1].rat;
                rec.lhs = "projected sigma_1 coefficient = " +
                          rat_str(down.at(1));
                rec.rhs = "lower-layer sigma_1 coefficient = " +
                          rat_str(ref.at(1));
                rec.pass = (down == ref);
            } else {
                CycloGRElem down = project(*d.layers[n].cyc);
                const CycloGRElem& ref = *d.layers[n - 1].cyc;
                rec.lhs = "projected sigma_1 coefficient = " +
                          down.at(1).str();
                rec.rhs = "lower-layer sigma_1 coefficient = " +
                          ref.at(1).str();
                rec.pass = (down == ref);
            }
            rec.precision =
                "exact rational arithmetic; all phi(p^n) coefficients "
                "compared";
            rep.checks.push_back(rec);
        }
    };

    for (unsigned k = cfg.k_min; k <= cfg.k_max; ++k) {
        try {
            ZetaDistribution d = build_distribution(p, cfg.n_max, chi, k, S);
            witness_records(d, "proj", k);
        } catch (const error& e) {
            CheckRecord rec;
            rec.name = "proj:k" + pad2(k) + ":n0";
            rec.inputs = "p=" + std::to_string(p) + " chi=" + cfg.chi +
                         " k=" + std::to_string(k);
            rec.lhs = std::string("construction failed: ") + e.what();
            rec.rhs = "exact projection equality expected";
            rec.precision = "n/a";
            rec.pass = false;
            rep.checks.push_back(rec);
        }
    }

    // negative control: drop p from S.  the projections still hold (the
    // transition maps never needed the Euler factor at p); what breaks is
    // p-integrality of the regularized element at depth, where the missing
    // factor contributes p^(k-1-n) to the denominators
    if (cfg.n_max >= 2) {
        std::vector<long> S_minus;
        for (long q : S)
            if (q != p) S_minus.push_back(q);
        const unsigned k_ctl = 2;
        const int n_ctl = 2;
        try {
            ZetaDistribution raw =
                build_distribution_raw(p, n_ctl, chi, k_ctl, S_minus);
            witness_records(raw, "control:proj", k_ctl);
            regularize(raw, cfg.effective_c(), cfg.N);
            CheckRecord rec;
            rec.name = "control:integrality";
            rec.inputs = "p=" + std::to_string(p) + " S=" + set_str(S_minus) +
                         " (p omitted) k=2 n=2";
            rec.lhs = "regularization unexpectedly produced a p-integral "
                      "element";
            rec.rhs = "NotIntegral expected";
            rec.precision = "coefficientwise valuation check at N=" +
                            std::to_string(cfg.N);
            rec.pass = false;
            rep.checks.push_back(rec);
        } catch (const NotIntegral& e) {
            CheckRecord rec;
            rec.name = "control:integrality";
            rec.inputs = "p=" + std::to_string(p) + " S=" + set_str(S_minus) +
                         " (p omitted) k=2 n=2";
            rec.lhs = std::string("refused: ") + e.what();
            rec.rhs = "NotIntegral expected (v_p = (k-1) - n = -1 at depth 2)";
            rec.precision = "coefficientwise valuation check at N=" +
                            std::to_string(cfg.N);
            rec.pass = true;
            rep.checks.push_back(rec);
        }
    } else {
        rep.notes.push_back(
            "negative control skipped: it needs tower depth n >= 2 for the "
            "missing Euler factor to push v_p = (k-1) - n below zero");
    }

    sort_checks(rep);
    return rep;
}

Report suite_irregular(const VerificationConfig& cfg) {
    cfg.validate();
    if (cfg.p > 100)
        throw BoundExceeded("irregular suite is desk-bounded to p <= 100");
    Report rep;
    rep.suite = "irregular";
    rep.config = cfg;
    rep.config.chi = "trivial";
    rep.config.n_max = 1;
    const long p = cfg.p;
    const int N = cfg.N;

    rep.notes.push_back(
        "consequence check: the lambda-vs-class-number comparison witnesses "
        "the valuation identity ord_p(h^-) = sum lambda on the analytic "
        "side, one computable implication of the main conjecture; it is not "
        "a verification of the underlying module isomorphism");
    if (cfg.chi != "trivial")
        rep.notes.push_back("character forced to trivial for this suite");

    // (i) Kummer criterion, both directions
    std::vector<unsigned> idx = kummer_irregular_indices(p);
    Int hminus = minus_class_number(p);
    long e = vp(hminus, p);
    {
        std::string iset = "{";
        for (size_t i = 0; i < idx.size(); ++i)
            iset += (i ? "," : "") + std::to_string(idx[i]);
        iset += "}";
        CheckRecord rec;
        rec.name = "kummer";
        rec.inputs = "p=" + std::to_string(p) +
                     ", numerators of B_k for even k <= p-3, h^-(" +
                     std::to_string(p) + ") = " + hminus.get_str();
        rec.lhs = "irregular Bernoulli indices " + iset +
                  (idx.empty() ? " (regular)" : " (irregular)");
        rec.rhs = "ord_p(h^-) = " + std::to_string(e) +
                  (e == 0 ? " (regular)" : " (irregular)");
        rec.precision = "exact integer arithmetic";
        rec.pass = idx.empty() == (e == 0);
        rep.checks.push_back(rec);
    }

    // (ii) + (iii): one tower scan at depth 1, weight 2, trivial character
    long sum_lambda = 0;
    long mu_max = 0;
    std::vector<long> nonzero_branches;
    bool scan_ok = true;
    if (p >= 5) {
        RegularizedPair rp = regularize(
            build_distribution(p, 1, DirichletChar::trivial_char(), 2, {p}),
            cfg.effective_c(), N);
        for (long b = 2; b <= p - 3; b += 2) {
            BranchInvariants inv = invariants_from_pair(rp, b);
            sum_lambda += inv.lambda_f;
            mu_max = std::max({mu_max, inv.mu_f, inv.mu_g});
            if (inv.lambda_f != 0 || inv.mu_f != 0) {
                nonzero_branches.push_back(b);
                CheckRecord rec;
                rec.name = "branch:b" + pad2(b);
                rec.inputs = "p=" + std::to_string(p) + " branch=" +
                             std::to_string(b) + " k0=" +
                             std::to_string(base_weight(p, b)) +
                             " n_max=1 N=" + std::to_string(N);
                rec.lhs = "(mu_f, lambda_f) = (" + std::to_string(inv.mu_f) +
                          ", " + std::to_string(inv.lambda_f) + ")";
                rec.rhs = "(0, lambda) with lambda counted against ord_p(h^-)";
                rec.precision = "Weierstrass data certified at N' = N - mu";
                rec.pass = inv.mu_f == 0;
                rep.checks.push_back(rec);
            }
        }
        // the pole branch is only readable through the pair denominator
        BranchInvariants pole = invariants_from_pair(rp, 0);
        CheckRecord rec;
        rec.name = "pole";
        rec.inputs = "p=" + std::to_string(p) + " branch=0 (pole of zeta)";
        rec.lhs = "(mu_g, lambda_g) = (" + std::to_string(pole.mu_g) + ", " +
                  std::to_string(pole.lambda_g) + ")";
        rec.rhs = "(0, 1) -- the simple pole shows up as the single zero of "
                  "the regularizer factor g";
        rec.precision = "Weierstrass data of the g-series";
        rec.pass = pole.mu_g == 0 && pole.lambda_g == 1;
        scan_ok = rec.pass;
        rep.checks.push_back(rec);
    } else {
        rep.notes.push_back(
            "p = 3 has no even branch in [2, p-3]; the lambda sum is empty");
    }

    {
        std::string at = "{";
        for (size_t i = 0; i < nonzero_branches.size(); ++i)
            at += (i ? "," : "") + std::to_string(nonzero_branches[i]);
        at += "}";
        CheckRecord rec;
        rec.name = "lambda-vs-class";
        rec.inputs = "p=" + std::to_string(p) +
                     ", even branches 2..p-3 at n_max=1, k0 per branch";
        rec.lhs = "sum of lambda_f = " + std::to_string(sum_lambda) +
                  (nonzero_branches.empty() ? " (all branches trivial)"
                                            : " (nonzero at " + at + ")");
        rec.rhs = "ord_p(h^-) = " + std::to_string(e);
        rec.precision = "lambda certified by Weierstrass preparation, "
                        "lambda < M = p - 1; h^- exact";
        rec.pass = (sum_lambda == e) && scan_ok;
        rep.checks.push_back(rec);

        CheckRecord mu;
        mu.name = "mu-zero";
        mu.inputs = "p=" + std::to_string(p) +
                    ", all computed branches, f- and g-series";
        mu.lhs = "max mu observed = " + std::to_string(mu_max);
        mu.rhs = "0";
        mu.precision = "minimum coefficient valuation, genuine (not "
                       "at-least) valuations only";
        mu.pass = mu_max == 0;
        rep.checks.push_back(mu);
    }

    sort_checks(rep);
    return rep;
}

Report run_suite(const VerificationConfig& cfg) {
    if (cfg.suite == "interpolation") return suite_interpolation(cfg);
    if (cfg.suite == "compatibility") return suite_compatibility(cfg);
    if (cfg.suite == "irregular") return suite_irregular(cfg);
    throw error("unknown suite '" + cfg.suite + "'");
}

}  // namespace mcv
