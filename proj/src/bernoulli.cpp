#include "mcv/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace mcv {

namespace {
std::vector<Rat> cache;  // cache[k] = B_k
std::mutex cache_mtx;

void extend_unlocked(unsigned k) {
    if (cache.empty()) cache.push_back(Rat(1));
    // B_m = -1/(m+1) * sum_{j<m} C(m+1,j) B_j
    for (unsigned m = cache.size(); m <= k; ++m) {
        Rat s(0);
        for (unsigned j = 0; j < m; ++j) s += Rat(binom(m + 1, j)) * cache[j];
        Rat b = -s / Rat(static_cast<long>(m) + 1);
        b.canonicalize();
        cache.push_back(b);
    }
}
}  // namespace

const Rat& bernoulli(unsigned k) {
    std::lock_guard<std::mutex> lk(cache_mtx);
    extend_unlocked(k);
    return cache[k];
}

Rat bernoulli_poly_eval(unsigned k, const Rat& x) {
    // Horner in x: B_k(x) = ((...(B_0 x + C(k,1)B_1) x + ...) x + C(k,k)B_k)
    Rat acc(0);
    for (unsigned j = 0; j <= k; ++j) {
        acc *= x;
        acc += Rat(binom(k, j)) * bernoulli(j);
    }
    return acc;
}

}  // namespace mcv
