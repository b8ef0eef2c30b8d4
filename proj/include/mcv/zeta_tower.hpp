#pragma once

#include <optional>

#include "mcv/dft_kernel.hpp"
#include "mcv/lfunc.hpp"

namespace mcv {

// sorted union of S, {p} and the primes of chi's conductor; the construction
// modulus strips the latter two automatically, so they are always in force
std::vector<long> effective_strip_set(long p, const DirichletChar& chi,
                                      std::vector<long> S);

// rho_{a,b} of G_n as a Dirichlet character mod p^(n+1) (the group is cyclic)
DirichletChar rho_as_dirichlet(const TowerLayer& L, long a, long b);

/* the weight-k equivariant L-element over G_n: the group-ring element whose
   rho-component is the S-stripped L(rho chi, 1-k) for every character rho.
   coefficients are rational when chi is (trivial or quadratic), cyclotomic
   otherwise. */
struct EquivariantLElem {
    const TowerLayer* layer = nullptr;
    DirichletChar chi;
    unsigned k = 2;
    std::vector<long> S;
    std::optional<RatElem> rat;
    std::optional<CycloGRElem> cyc;

    bool is_rational() const { return rat.has_value(); }
};

// production construction: stripped L-values per character orbit, inverse DFT
// through the rational trace kernel (chi rational-valued) or the naive
// cyclotomic DFT (general chi, desk-scale layers only)
EquivariantLElem equivariant_l(long p, int n, const DirichletChar& chi,
                               unsigned k, std::vector<long> S);

// reference construction: every component built separately as a cyclotomic
// value, composed by the naive inverse DFT; small layers only (BoundExceeded)
CycloGRElem equivariant_l_generic(long p, int n, const DirichletChar& chi,
                                  unsigned k, std::vector<long> S);

/* layers 0..n_max with project(x_n) = x_{n-1} verified exactly on build */
struct ZetaDistribution {
    long p = 3;
    int n_max = 0;
    DirichletChar chi;
    unsigned k = 2;
    std::vector<long> S;
    std::vector<EquivariantLElem> layers;
};

ZetaDistribution build_distribution(long p, int n_max, const DirichletChar& chi,
                                    unsigned k, std::vector<long> S);
// same construction without the p-in-S precondition; exists so the negative
// control can demonstrate what the precondition protects (the regularized
// integrality at deeper layers, not the projection identity)
ZetaDistribution build_distribution_raw(long p, int n_max,
                                        const DirichletChar& chi, unsigned k,
                                        std::vector<long> S);

// the weight-1 Stickelberger sum sum_t (t/m - 1/2) sigma_t^{-1}, kept solely
// as an independent oracle against the weight-k machinery
RatElem theta_classical(long p, int n);

// smallest primitive root mod p^2 that is coprime to chi's conductor
long default_regulator(long p, const DirichletChar& chi);

// fixed embedding Q(zeta_d) -> Q_p for d | p-1: zeta_d -> omega(g)^((p-1)/d);
// clears p-powers from coordinate denominators and insists the value itself
// is p-integral (NotIntegral otherwise); EmbeddingUnavailable when d does not
// divide p-1
PadicInt embed_cyclo_delta(const CycloElem& v, long p, int N, long g);

/* c-regularized pair per layer: g_n = 1 - c^k sigma_c and f_n = g_n x_n,
   with f_n p-integral coefficientwise — the content of the pseudo-measure
   property.  exact rational forms are kept alongside the p-adic images when
   the twist is rational-valued. */
struct RegularizedPair {
    long p = 3;
    unsigned k = 2;
    long c = 2;
    int N = 16;
    std::vector<PadicElem> f, g;
    std::vector<RatElem> f_exact, g_exact;  // empty on the cyclotomic path
};

RegularizedPair regularize(const ZetaDistribution& d, long c, int N = 16);

}  // namespace mcv
