#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcv/zeta_tower.hpp"

namespace mcv {

/* omega^i-isotypic branch of Z_p[Delta][[T]]; the Delta-action is semisimple
   (p does not divide p-1), so branches are honest scalar power-series rings */
struct Branch {
    long p;
    long index;  // 0 <= index < p-1
    Branch(long p_, long i_) : p(p_), index(i_) {
        if (i_ < 0 || i_ >= p_ - 1)
            throw error("branch index " + std::to_string(i_) +
                        " out of range for p = " + std::to_string(p_));
    }
};

/* element of Z_p[[T]] mod (p^N, T^(M+1)); arithmetic takes the min of the
   operands' truncations and p-adic precisions, never more */
class IwasawaSeries {
public:
    IwasawaSeries() = default;  // unusable placeholder; assign before use
    IwasawaSeries(const Branch& b, long M, int N);  // zero series

    const Branch& branch() const { return br_; }
    long p() const { return br_.p; }
    long trunc() const { return static_cast<long>(c_.size()) - 1; }  // M
    int precision() const { return N_; }

    const PadicInt& coeff(long s) const { return c_.at(s); }
    void set_coeff(long s, const PadicInt& v);

    bool is_zero() const;  // indistinguishable from 0 at working precision

    IwasawaSeries& operator+=(const IwasawaSeries& o);
    IwasawaSeries& operator-=(const IwasawaSeries& o);
    friend IwasawaSeries operator+(IwasawaSeries a, const IwasawaSeries& b) {
        return a += b;
    }
    friend IwasawaSeries operator-(IwasawaSeries a, const IwasawaSeries& b) {
        return a -= b;
    }
    friend IwasawaSeries operator*(const IwasawaSeries& a,
                                   const IwasawaSeries& b);
    friend bool operator==(const IwasawaSeries& a, const IwasawaSeries& b);

    std::string str() const;

private:
    Branch br_{3, 0};
    int N_ = 0;
    std::vector<PadicInt> c_;
};

// product truncated at an explicit degree (reconstruction checks need a
// target beyond min of the operands)
IwasawaSeries mul_trunc(const IwasawaSeries& a, const IwasawaSeries& b, long M);

/* Mellin transform: fold the Delta-direction with the omega-power weight of
   the branch, rewrite the Gamma-direction through gamma -> 1+T, assert the
   layers cohere.  the raw form takes measures (p-adic coefficient vectors per
   layer, n = 0..n_max) and folds at the branch index itself. */
IwasawaSeries mellin_measure(const std::vector<PadicElem>& layers,
                             const Branch& b);

/* weight-aware forms: a weight-k family interpolates at branch index = k +
   fold offset, so the public branch label shifts the internal fold by -k.
   the distribution overload embeds exact coefficients first and refuses
   p-denominators (that is what regularization is for). */
IwasawaSeries mellin(const ZetaDistribution& d, const Branch& b, int N);
std::pair<IwasawaSeries, IwasawaSeries> mellin(const RegularizedPair& rp,
                                               const Branch& b);

// Horner evaluation inside the maximal ideal; certified output precision
// min(N, (M+1) v(t))
PadicInt evaluate(const IwasawaSeries& s, const PadicInt& t);

// the interpolation point for weight k against a weight-k0 family:
// (1+p)^(k-k0) - 1
PadicInt interpolation_point(long p, long k, long k0, int N);

/* p^mu * distinguished * unit normal form, certified at the reduced
   precision N' = N - mu */
struct WeierstrassData {
    long mu = 0;
    long lambda = 0;
    std::vector<PadicInt> distinguished;  // monic, degree lambda
    IwasawaSeries unit;
};

WeierstrassData weierstrass(const IwasawaSeries& s);

/* class of a finitely presented torsion module in the divisor group:
   (mu, lambda, distinguished) with the unit discarded */
struct CharIdealClass {
    long mu = 0;
    long lambda = 0;
    std::vector<PadicInt> distinguished;
    int N = 0;
    std::string provenance;
};

bool operator==(const CharIdealClass& a, const CharIdealClass& b);

CharIdealClass char_ideal_from_presentation(
    const std::vector<std::vector<IwasawaSeries>>& A,
    const std::string& provenance = "");

/* the full analytic pipeline for one branch: distribution -> regularized
   pair -> mellin -> Weierstrass invariants of both series.  g is a unit
   series away from the pole branch (index 0 twisted by chi). */
struct BranchInvariants {
    Branch branch;
    long mu_f = 0, lambda_f = 0;
    long mu_g = 0, lambda_g = 0;
    IwasawaSeries f_series, g_series;
};

BranchInvariants invariants_of_branch(long p, long branch_index,
                                      const DirichletChar& chi, unsigned k0,
                                      int n_max, int N);

// same, from an already-built pair (scanning all branches of one tower only
// pays for the distribution once); the caller is responsible for branch
// parity — a parity-violating branch yields the zero series and weierstrass
// reports PrecisionInsufficient
BranchInvariants invariants_from_pair(const RegularizedPair& rp,
                                      long branch_index);

}  // namespace mcv
