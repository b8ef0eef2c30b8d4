/* timing harness for the composition kernel: the OpenMP trace kernel against
   its serial twin, and the full trace pipeline against the naive cyclotomic
   reference on layers small enough for the reference to exist.  results are
   cross-checked exactly before any number is reported. */
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <vector>

#ifdef MCV_HAVE_OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "mcv/dft_kernel.hpp"
#include "mcv/zeta_tower.hpp"

using namespace mcv;

namespace {

double best_of(int reps, const std::function<void()>& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        best = std::min(best, ms);
    }
    return best;
}

/* deterministic Galois-equivariant value family: one redundant-basis vector
   per orbit, entries a fixed affine pattern in the orbit labels.  any choice
   is equivariant by construction, so the kernel's work is representative. */
std::vector<RedVec> synthetic_family(const TowerLayer& L) {
    const auto& orbits = char_orbits(L);
    std::vector<RedVec> vals;
    vals.reserve(orbits.size());
    for (const CharOrbit& o : orbits) {
        RedVec v;
        v.d = o.d;
        v.den = 1 + (o.a % 3);
        v.num.resize(o.d);
        for (long x = 0; x < o.d; ++x)
            v.num[x] = ((o.a + 1) * x + o.b) % 7 - 3;
        vals.push_back(std::move(v));
    }
    return vals;
}

}  // namespace

int main(int argc, char** argv) {
    long p = 5;
    int n_max = 3;
    int reps = 3;
    unsigned k = 2;
    CLI::App app{"composition-kernel timings, serial against OpenMP"};
    app.add_option("--p", p, "tower prime")->capture_default_str();
    app.add_option("--max-n", n_max, "deepest layer to time")
        ->capture_default_str();
    app.add_option("--reps", reps, "repetitions (best is reported)")
        ->capture_default_str();
    app.add_option("--k", k, "weight for the pipeline comparison")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

#ifdef MCV_HAVE_OPENMP
    std::cout << "openmp enabled, max threads = " << omp_get_max_threads()
              << "\n";
#else
    std::cout << "openmp not available: the parallel path degrades to the "
                 "serial loop\n";
#endif
    std::cout << std::fixed << std::setprecision(2);

    std::cout << "\ncompose kernel on synthetic equivariant families, p=" << p
              << "\n";
    for (int n = 0; n <= n_max; ++n) {
        const TowerLayer& L = TowerLayer::get(p, n);
        std::vector<RedVec> vals = synthetic_family(L);
        RatElem serial = compose_trace(L, vals, false);
        RatElem parallel = compose_trace(L, vals, true);
        if (!(serial == parallel)) {
            std::cout << "  n=" << n
                      << ": RESULTS DIFFER between serial and parallel\n";
            return 1;
        }
        double ts = best_of(reps, [&] { compose_trace(L, vals, false); });
        double tp = best_of(reps, [&] { compose_trace(L, vals, true); });
        std::cout << "  n=" << n << " order=" << std::setw(6) << L.order()
                  << " orbits=" << std::setw(4) << char_orbits(L).size()
                  << "  serial " << std::setw(9) << ts << " ms | parallel "
                  << std::setw(9) << tp << " ms | ratio "
                  << (tp > 0 ? ts / tp : 0.0) << "x  (identical results)\n";
    }

    std::cout << "\nfull pipeline against the naive cyclotomic reference "
                 "(layers of order <= 500), k="
              << k << "\n";
    for (int n = 0; n <= n_max; ++n) {
        const TowerLayer& L = TowerLayer::get(p, n);
        if (L.order() > 500) {
            std::cout << "  n=" << n << " order=" << L.order()
                      << ": beyond the reference bound, skipped\n";
            continue;
        }
        EquivariantLElem fast =
            equivariant_l(p, n, DirichletChar::trivial_char(), k, {p});
        CycloGRElem ref =
            equivariant_l_generic(p, n, DirichletChar::trivial_char(), k, {p});
        bool same = fast.is_rational();
        for (long u = 0; same && u < L.order(); ++u)
            same = CycloElem(fast.rat->a[u]) == ref.a[u];
        if (!same) {
            std::cout << "  n=" << n << ": PIPELINES DISAGREE\n";
            return 1;
        }
        double tt = best_of(reps, [&] {
            equivariant_l(p, n, DirichletChar::trivial_char(), k, {p});
        });
        double tg = best_of(reps, [&] {
            equivariant_l_generic(p, n, DirichletChar::trivial_char(), k, {p});
        });
        std::cout << "  n=" << n << " order=" << std::setw(4) << L.order()
                  << "  naive " << std::setw(9) << tg << " ms | trace "
                  << std::setw(9) << tt << " ms | ratio "
                  << (tt > 0 ? tg / tt : 0.0) << "x  (identical coefficients)\n";
    }
    return 0;
}
