#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcv/detline.hpp"
#include "mcv/lfunc.hpp"

namespace mcv {

inline constexpr const char* kVersion = "1.0.0";

/* one run of a verification suite: the tower parameters, the precision
   budget, and the range of classical weights to compare against.  a default
   S is the effective strip set {p plus the bad primes of chi}; an explicit
   S must contain p.  c = 0 selects the default regulator policy. */
struct VerificationConfig {
    std::string suite = "interpolation";
    long p = 5;
    int n_max = 2;
    int N = 8;
    long M_cap = 60;  // truncation policy: M = min(p^n_max - 1, M_cap)
    std::string chi = "trivial";
    unsigned k_min = 2;
    unsigned k_max = 20;
    std::vector<long> S;  // empty = default policy
    long c = 0;           // regularizer; 0 = default policy

    DirichletChar character() const;
    std::vector<long> effective_S() const;
    long effective_c() const;
    long truncation() const;       // min(p^n_max - 1, M_cap)
    void validate() const;         // throws error on any violated invariant
};

// overwrite the fields named in a key=value text file (# comments, blank
// lines allowed); unknown keys are an error, not a warning
void apply_config_file(VerificationConfig& cfg, const std::string& path);

/* a single verified identity: both sides are printed at the certified
   precision so the record can be re-derived without rerunning */
struct CheckRecord {
    std::string name;       // canonical sort key
    std::string inputs;
    std::string lhs;
    std::string rhs;
    std::string precision;  // what certifies the displayed digits
    bool pass = false;
};

struct Report {
    std::string suite;
    VerificationConfig config;
    std::vector<CheckRecord> checks;  // sorted by name
    std::vector<std::string> notes;
    bool pass = false;

    // stable key order and canonically sorted checks; the timestamp inside
    // "environment" is the only field that varies between identical runs
    std::string to_json() const;
    std::string to_text() const;
};

/* branch-by-branch comparison of the mellin series against euler-stripped
   classical L-values at every admissible weight in the k-range, plus the
   literal 0 = 0 parity checks on the opposite-parity branches */
Report suite_interpolation(const VerificationConfig& cfg);

/* exact projection identities between consecutive tower layers for every
   weight in the k-range, plus the negative control: dropping p from S must
   break regularized integrality at depth (expected NotIntegral) */
Report suite_compatibility(const VerificationConfig& cfg);

/* consequence checks at a single prime (config p only; the tower depth is
   pinned to n_max = 1 and the character to the trivial one): the Kummer
   criterion both ways, ord_p of the minus class number against the total
   lambda over even branches, and mu = 0 everywhere */
Report suite_irregular(const VerificationConfig& cfg);

Report run_suite(const VerificationConfig& cfg);  // dispatch on cfg.suite

/* series files: header "p=.. branch=.. N=.. M=.. chi=.. provenance=.."
   followed by M+1 residue lines.  presentation matrices: a header line
   "p=.. branch=.. N=.. M=.." then a square whitespace-separated grid whose
   entries are inline polynomials in T (no spaces, e.g. T^2+5T+25) or
   @path references to series files, resolved relative to the matrix file */
void write_series(std::ostream& os, const IwasawaSeries& s,
                  const std::string& chi, const std::string& provenance);
IwasawaSeries read_series(std::istream& is, std::string* chi = nullptr,
                          std::string* provenance = nullptr);
std::vector<std::vector<IwasawaSeries>> read_presentation(
    const std::string& path);

/* command-line front end; the stream overload exists so the exact output
   is testable.  exit status: 0 all checks pass, 1 verification failure,
   2 usage error */
int cli_dispatch(int argc, const char* const* argv);
int cli_dispatch(int argc, const char* const* argv, std::ostream& out,
                 std::ostream& err);

}  // namespace mcv
