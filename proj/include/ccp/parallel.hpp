#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccp {

inline void set_thread_hint(int threads)
{
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

inline int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Visits k-subsets of {0..n−1} in lexicographic order; stops early when fn returns false.
// `first` pins the smallest element (used to split work across threads).
inline bool for_each_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn,
                                 long first = -1)
{
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    if (k == 0) return fn(idx);
    std::size_t lo = first >= 0 ? static_cast<std::size_t>(first) : 0;
    if (lo + k > n) return true;
    for (std::size_t i = 0; i < k; ++i) idx[i] = lo + i;
    for (;;) {
        if (!fn(idx)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        if (first >= 0 && i == 1) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace ccp
