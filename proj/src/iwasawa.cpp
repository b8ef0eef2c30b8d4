#include "mcv/iwasawa.hpp"

#include <algorithm>
#include <cassert>

#include "mcv/errors.hpp"

namespace mcv {

IwasawaSeries::IwasawaSeries(const Branch& b, long M, int N)
    : br_(b), N_(N), c_() {
    if (M < 0) throw error("series truncation degree must be >= 0");
    if (N < 1) throw error("series precision must be >= 1");
    c_.assign(static_cast<size_t>(M) + 1, PadicInt(b.p, N));
}

void IwasawaSeries::set_coeff(long s, const PadicInt& v) {
    if (s < 0 || s > trunc())
        throw error("coefficient index " + std::to_string(s) +
                    " outside truncation degree " + std::to_string(trunc()));
    if (v.p() != br_.p) throw BaseMismatch("coefficient has wrong residue base");
    if (v.precision() < N_)
        throw PrecisionInsufficient(
            "coefficient carries fewer digits than the series precision");
    c_[s] = v.with_precision(N_);
}

bool IwasawaSeries::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

namespace {

void require_same_branch(const IwasawaSeries& a, const IwasawaSeries& b) {
    if (a.p() != b.p() || a.branch().index != b.branch().index)
        throw error("series live on different branches");
}

}  // namespace

IwasawaSeries& IwasawaSeries::operator+=(const IwasawaSeries& o) {
    require_same_branch(*this, o);
    long M = std::min(trunc(), o.trunc());
    int N = std::min(N_, o.precision());
    IwasawaSeries out(br_, M, N);
    for (long s = 0; s <= M; ++s)
        out.c_[s] = (c_[s] + o.c_[s]).with_precision(N);
    *this = out;
    return *this;
}

IwasawaSeries& IwasawaSeries::operator-=(const IwasawaSeries& o) {
    require_same_branch(*this, o);
    long M = std::min(trunc(), o.trunc());
    int N = std::min(N_, o.precision());
    IwasawaSeries out(br_, M, N);
    for (long s = 0; s <= M; ++s)
        out.c_[s] = (c_[s] - o.c_[s]).with_precision(N);
    *this = out;
    return *this;
}

IwasawaSeries operator*(const IwasawaSeries& a, const IwasawaSeries& b) {
    return mul_trunc(a, b, std::min(a.trunc(), b.trunc()));
}

IwasawaSeries mul_trunc(const IwasawaSeries& a, const IwasawaSeries& b,
                        long M) {
    require_same_branch(a, b);
    int N = std::min(a.precision(), b.precision());
    Int pN = pow_int(Int(a.p()), static_cast<unsigned long>(N));
    std::vector<Int> acc(static_cast<size_t>(M) + 1, Int(0));
    for (long i = 0; i <= std::min(a.trunc(), M); ++i) {
        Int ai = a.coeff(i).residue() % pN;
        if (ai == 0) continue;
        long jmax = std::min(b.trunc(), M - i);
        for (long j = 0; j <= jmax; ++j)
            acc[i + j] += ai * b.coeff(j).residue();
    }
    IwasawaSeries out(a.branch(), M, N);
    for (long s = 0; s <= M; ++s)
        out.set_coeff(s, PadicInt(a.p(), N, acc[s] % pN));
    return out;
}

bool operator==(const IwasawaSeries& a, const IwasawaSeries& b) {
    if (a.p() != b.p() || a.branch().index != b.branch().index) return false;
    long M = std::min(a.trunc(), b.trunc());
    for (long s = 0; s <= M; ++s)
        if (!(a.coeff(s) == b.coeff(s))) return false;
    // a longer series only matches if its tail is invisible at its precision
    for (long s = M + 1; s <= a.trunc(); ++s)
        if (!a.coeff(s).is_zero()) return false;
    for (long s = M + 1; s <= b.trunc(); ++s)
        if (!b.coeff(s).is_zero()) return false;
    return true;
}

std::string IwasawaSeries::str() const {
    std::string out;
    bool any = false;
    for (long s = 0; s <= trunc(); ++s) {
        if (c_[s].is_zero()) continue;
        if (any) out += " + ";
        out += "(" + c_[s].str() + ")";
        if (s >= 1) out += "*T";
        if (s >= 2) out += "^" + std::to_string(s);
        any = true;
    }
    if (!any) out = "0";
    out += "  [mod (p^" + std::to_string(N_) + ", T^" +
           std::to_string(trunc() + 1) + "), branch omega^" +
           std::to_string(br_.index) + "]";
    return out;
}

namespace {

// shared worker: Delta-fold at omega-power `fold_a`, coherence check across
// layers, gamma -> 1+T rewrite of the top layer
IwasawaSeries mellin_core(const std::vector<PadicElem>& layers, const Branch& b,
                          long fold_a) {
    if (layers.empty()) throw error("mellin needs at least one tower layer");
    const long p = b.p;
    int N = layers[0].a.at(0).precision();
    for (size_t n = 0; n < layers.size(); ++n) {
        const TowerLayer& L = *layers[n].layer;
        if (L.p != p)
            throw BaseMismatch("tower layer prime differs from branch prime");
        if (L.n != static_cast<int>(n))
            throw error("mellin expects consecutive layers 0..n_max");
        for (const auto& v : layers[n].a) N = std::min(N, v.precision());
    }
    const Int pN = pow_int(Int(p), static_cast<unsigned long>(N));

    // Teichmueller weight of the Delta-coordinate: sigma_t contributes
    // omega(t)^fold_a through its delta-exponent
    const long g = layers[0].layer->g;
    PadicInt w = teichmuller(p, N, g);
    std::vector<Int> wres(static_cast<size_t>(p - 1));
    {
        PadicInt acc(p, N, Int(1));
        std::vector<Int> pw(static_cast<size_t>(p - 1));
        for (long i = 0; i < p - 1; ++i) {
            pw[i] = acc.residue();
            acc = acc * w;
        }
        for (long i = 0; i < p - 1; ++i)
            wres[i] = pw[(fold_a * i) % (p - 1)];
    }

    // gamma-coordinates per layer
    std::vector<std::vector<Int>> q(layers.size());
    for (size_t n = 0; n < layers.size(); ++n) {
        const TowerLayer& L = *layers[n].layer;
        q[n].assign(static_cast<size_t>(L.pn), Int(0));
        for (long u = 0; u < L.order(); ++u) {
            Int term = layers[n].a[u].residue() * wres[L.iexp[u]];
            Int& slot = q[n][L.jexp[u]];
            slot = (slot + term) % pN;
        }
    }

    // the inverse-limit constraint: folding the gamma-coordinates of layer n
    // along gamma^(p^(n-1)) must reproduce layer n-1
    for (size_t n = 1; n < layers.size(); ++n) {
        long pn1 = layers[n - 1].layer->pn;
        std::vector<Int> fold(static_cast<size_t>(pn1), Int(0));
        for (size_t j = 0; j < q[n].size(); ++j) {
            Int& slot = fold[j % pn1];
            slot = (slot + q[n][j]) % pN;
        }
        for (long j = 0; j < pn1; ++j)
            if (fold[j] != q[n - 1][j])
                throw CoherenceFailure(static_cast<int>(n),
                                       "gamma^" + std::to_string(j));
    }

    // rewrite sum q_j gamma^j with gamma = 1+T via Horner: run from the top
    // gamma-power down, multiplying by (1+T) (a shift-add) at each step
    const std::vector<Int>& top = q.back();
    const long M = static_cast<long>(top.size()) - 1;
    std::vector<Int> c(static_cast<size_t>(M) + 1, Int(0));
    c[0] = top[M];
    for (long j = M - 1; j >= 0; --j) {
        long deg = M - 1 - j;
        for (long s = deg + 1; s >= 1; --s) {
            c[s] += c[s - 1];
            if (c[s] >= pN) c[s] -= pN;
        }
        c[0] += top[j];
        if (c[0] >= pN) c[0] -= pN;
    }

    IwasawaSeries out(b, M, N);
    for (long s = 0; s <= M; ++s) out.set_coeff(s, PadicInt(p, N, c[s]));
    return out;
}

long fold_offset(const Branch& b, long weight) {
    long r = (b.index - weight) % (b.p - 1);
    return r < 0 ? r + (b.p - 1) : r;
}

}  // namespace

IwasawaSeries mellin_measure(const std::vector<PadicElem>& layers,
                             const Branch& b) {
    return mellin_core(layers, b, b.index);
}

IwasawaSeries mellin(const ZetaDistribution& d, const Branch& b, int N) {
    if (d.p != b.p) throw BaseMismatch("distribution prime differs from branch");
    std::vector<PadicElem> layers;
    layers.reserve(d.layers.size());
    for (const auto& x : d.layers) {
        const TowerLayer& L = *x.layer;
        PadicElem e(L, PadicInt(b.p, N));
        for (long u = 0; u < L.order(); ++u) {
            try {
                if (x.is_rational())
                    e.a[u] = PadicInt::from_rational(b.p, N, x.rat->a[u]);
                else
                    e.a[u] = embed_cyclo_delta(x.cyc->a[u], b.p, N, L.g);
            } catch (const NotPIntegral&) {
                throw EmbeddingUnavailable(
                    "distribution coefficient at sigma_" +
                    std::to_string(L.units[u]) + " of layer " +
                    std::to_string(L.n) +
                    " has p in its denominator; regularize first");
            } catch (const NotIntegral&) {
                throw EmbeddingUnavailable(
                    "distribution coefficient at sigma_" +
                    std::to_string(L.units[u]) + " of layer " +
                    std::to_string(L.n) +
                    " has p in its denominator; regularize first");
            }
        }
        layers.push_back(std::move(e));
    }
    return mellin_core(layers, b, fold_offset(b, static_cast<long>(d.k)));
}

std::pair<IwasawaSeries, IwasawaSeries> mellin(const RegularizedPair& rp,
                                               const Branch& b) {
    if (rp.p != b.p) throw BaseMismatch("pair prime differs from branch");
    long a = fold_offset(b, static_cast<long>(rp.k));
    return {mellin_core(rp.f, b, a), mellin_core(rp.g, b, a)};
}

PadicInt evaluate(const IwasawaSeries& s, const PadicInt& t) {
    if (t.p() != s.p())
        throw BaseMismatch("evaluation point has wrong residue base");
    Valuation v = t.valuation();
    if (!v.at_least && v.v < 1)
        throw NotInMaximalIdeal("evaluation point is a unit (valuation 0)");
    long M = s.trunc();
    PadicInt acc = s.coeff(M);
    for (long j = M - 1; j >= 0; --j) acc = acc * t + s.coeff(j);
    long cert = std::min<long>(s.precision(), (M + 1) * std::max<long>(v.v, 1));
    cert = std::min<long>(cert, acc.precision());
    return acc.with_precision(static_cast<int>(cert));
}

PadicInt interpolation_point(long p, long k, long k0, int N) {
    PadicInt base(p, N, Int(1 + p));
    long e = k - k0;
    if (e >= 0) return base.pow(static_cast<unsigned long>(e)) - PadicInt(p, N, Int(1));
    return base.unit_inverse().pow(static_cast<unsigned long>(-e)) -
           PadicInt(p, N, Int(1));
}

WeierstrassData weierstrass(const IwasawaSeries& s) {
    const long p = s.p();
    const long M = s.trunc();
    const int N = s.precision();

    long mu = -1, lambda = -1;
    for (long j = 0; j <= M; ++j) {
        Valuation v = s.coeff(j).valuation();
        if (v.at_least) continue;  // vanishes to working precision: no signal
        if (mu < 0 || v.v < mu) {
            mu = v.v;
            lambda = j;
        }
    }
    if (mu < 0)
        throw PrecisionInsufficient(
            "every coefficient vanishes to working precision; mu cannot be "
            "bounded");
    if (lambda >= M)
        throw PrecisionInsufficient(
            "minimal valuation is first attained at the truncation boundary; "
            "lambda cannot be separated from T^" + std::to_string(M));
    const int Nr = N - static_cast<int>(mu);
    assert(Nr >= 1);
    const Int pNr = pow_int(Int(p), static_cast<unsigned long>(Nr));
    const Int pmu = pow_int(Int(p), static_cast<unsigned long>(mu));

    // strip p^mu; all coefficients are divisible since mu is the minimum
    std::vector<Int> f(static_cast<size_t>(M) + 1);
    for (long j = 0; j <= M; ++j) {
        Int r = s.coeff(j).residue();
        assert(r % pmu == 0);
        f[j] = (r / pmu) % pNr;
    }

    WeierstrassData out;
    out.mu = mu;
    out.lambda = lambda;

    if (lambda == 0) {
        // already a unit series
        out.distinguished = {PadicInt(p, Nr, Int(1))};
        IwasawaSeries u(s.branch(), M, Nr);
        for (long j = 0; j <= M; ++j) u.set_coeff(j, PadicInt(p, Nr, f[j]));
        out.unit = u;
        return out;
    }

    // digit-by-digit factorization f = P*U: mod p the series is
    // T^lambda * (unit), and each correction solves
    // dP*u0 + T^lambda*dU = R in F_p[T] with deg dP < lambda
    const long Mu = M - lambda;  // degree bound for the unit factor
    std::vector<long> u0(static_cast<size_t>(Mu) + 1);
    for (long j = 0; j <= Mu; ++j)
        u0[j] = static_cast<long>(Int(f[lambda + j] % p).get_si());

    // power-series inverse of u0 mod (T^lambda, p)
    std::vector<long> inv0(static_cast<size_t>(lambda), 0);
    long c0inv = Int(inv_mod(Int(u0[0]), Int(p))).get_si();
    inv0[0] = c0inv;
    for (long i = 1; i < lambda; ++i) {
        long acc = 0;
        for (long r = 1; r <= std::min(i, Mu); ++r)
            acc = (acc + u0[r] * inv0[i - r]) % p;
        inv0[i] = ((-c0inv * acc) % p + p) % p;
    }

    std::vector<Int> P(static_cast<size_t>(lambda) + 1, Int(0));
    P[lambda] = 1;
    std::vector<Int> U(static_cast<size_t>(Mu) + 1);
    for (long j = 0; j <= Mu; ++j) U[j] = f[lambda + j];

    std::vector<Int> E(static_cast<size_t>(M) + 1);
    Int pi(1);  // p^i
    for (int i = 1; i < Nr; ++i) {
        pi *= p;
        // residual E = f - P*U mod p^Nr; by induction E = 0 mod p^i
        for (long j = 0; j <= M; ++j) E[j] = f[j];
        for (long a = 0; a <= lambda; ++a) {
            if (P[a] == 0) continue;
            for (long bb = 0; bb <= Mu; ++bb)
                E[a + bb] = (E[a + bb] - P[a] * U[bb]) % pNr;
        }
        std::vector<long> R(static_cast<size_t>(M) + 1);
        bool all_zero = true;
        for (long j = 0; j <= M; ++j) {
            Int ej = E[j] % pNr;
            if (ej < 0) ej += pNr;
            assert(ej % pi == 0);
            R[j] = static_cast<long>(Int((ej / pi) % p).get_si());
            if (R[j] != 0) all_zero = false;
        }
        if (all_zero) continue;
        std::vector<long> dP(static_cast<size_t>(lambda), 0);
        for (long j = 0; j < lambda; ++j) {
            long acc = 0;
            for (long r = 0; r <= j; ++r)
                acc = (acc + R[r] * inv0[j - r]) % p;
            // convolution of R with inv0 truncated at T^lambda
            dP[j] = acc;
        }
        std::vector<long> dU(static_cast<size_t>(Mu) + 1, 0);
        for (long j = 0; j <= M; ++j) {
            long acc = j <= M ? R[j] : 0;
            for (long a = std::max<long>(0, j - Mu);
                 a < std::min<long>(lambda, j + 1); ++a)
                acc = (acc - dP[a] * u0[j - a]) % p;
            acc = (acc % p + p) % p;
            if (j < lambda)
                assert(acc == 0);  // low part cancels by construction
            else
                dU[j - lambda] = acc;
        }
        for (long j = 0; j < lambda; ++j)
            P[j] = (P[j] + pi * dP[j]) % pNr;
        for (long j = 0; j <= Mu; ++j) U[j] = (U[j] + pi * dU[j]) % pNr;
    }

    out.distinguished.reserve(static_cast<size_t>(lambda) + 1);
    for (long j = 0; j <= lambda; ++j) {
        Int r = P[j] % pNr;
        if (r < 0) r += pNr;
        out.distinguished.emplace_back(p, Nr, r);
        if (j < lambda && out.distinguished.back().is_unit())
            throw error(
                "internal: distinguished factor left the maximal ideal");
    }
    IwasawaSeries u(s.branch(), Mu, Nr);
    for (long j = 0; j <= Mu; ++j) {
        Int r = U[j] % pNr;
        if (r < 0) r += pNr;
        u.set_coeff(j, PadicInt(p, Nr, r));
    }
    out.unit = u;
    return out;
}

bool operator==(const CharIdealClass& a, const CharIdealClass& b) {
    if (a.mu != b.mu || a.lambda != b.lambda) return false;
    if (a.distinguished.size() != b.distinguished.size()) return false;
    for (size_t j = 0; j < a.distinguished.size(); ++j)
        if (!(a.distinguished[j] == b.distinguished[j])) return false;
    return true;
}

CharIdealClass char_ideal_from_presentation(
    const std::vector<std::vector<IwasawaSeries>>& A,
    const std::string& provenance) {
    const size_t r = A.size();
    if (r == 0) throw error("presentation matrix is empty");
    if (r > 8)
        throw BoundExceeded("presentation matrices are supported up to 8x8");
    for (const auto& row : A)
        if (row.size() != r) throw error("presentation matrix is not square");

    const Branch& b = A[0][0].branch();
    long M = A[0][0].trunc();
    int N = A[0][0].precision();
    for (const auto& row : A)
        for (const auto& e : row) {
            require_same_branch(e, A[0][0]);
            M = std::min(M, e.trunc());
            N = std::min(N, e.precision());
        }

    // determinant without division (the truncated ring has zero divisors):
    // Laplace expansion memoized over column subsets
    std::vector<IwasawaSeries> D(size_t(1) << r);
    D[0] = IwasawaSeries(b, M, N);
    D[0].set_coeff(0, PadicInt(b.p, N, Int(1)));
    for (size_t mask = 1; mask < D.size(); ++mask) {
        int row = __builtin_popcountll(mask) - 1;
        IwasawaSeries acc(b, M, N);
        int pos = 0;
        for (size_t c = 0; c < r; ++c) {
            if (!(mask >> c & 1)) continue;
            IwasawaSeries term = A[row][c] * D[mask ^ (size_t(1) << c)];
            if (pos % 2 == 0)
                acc += term;
            else
                acc -= term;
            ++pos;
        }
        D[mask] = acc;
    }
    const IwasawaSeries& det = D[D.size() - 1];

    if (det.is_zero())
        throw NotTorsion(
            "determinant of the presentation vanishes to working precision; "
            "the module is not visibly torsion at this size");

    WeierstrassData wd = weierstrass(det);
    CharIdealClass out;
    out.mu = wd.mu;
    out.lambda = wd.lambda;
    out.distinguished = wd.distinguished;
    out.N = wd.unit.precision();
    out.provenance = provenance;
    return out;
}

BranchInvariants invariants_from_pair(const RegularizedPair& rp,
                                      long branch_index) {
    Branch b(rp.p, branch_index);
    auto [fs, gs] = mellin(rp, b);
    WeierstrassData wf = weierstrass(fs);
    WeierstrassData wg = weierstrass(gs);
    return BranchInvariants{b, wf.mu, wf.lambda, wg.mu, wg.lambda, fs, gs};
}

BranchInvariants invariants_of_branch(long p, long branch_index,
                                      const DirichletChar& chi, unsigned k0,
                                      int n_max, int N) {
    Branch b(p, branch_index);
    // the branch family interpolates twists omega^(branch-k)*chi at weight k;
    // those are critical only when chi(-1) matches the parity of the branch
    bool chi_odd = chi.value(Int(-1)) == CycloElem(Rat(-1));
    if (chi_odd != (branch_index % 2 == 1))
        throw error("branch omega^" + std::to_string(branch_index) +
                    " is not critical for this character parity");
    ZetaDistribution d = build_distribution(p, n_max, chi, k0, {p});
    RegularizedPair rp = regularize(d, default_regulator(p, chi), N);
    return invariants_from_pair(rp, branch_index);
}

}  // namespace mcv
