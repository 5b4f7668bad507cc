#ifndef AUTOCONV_PARALLEL_HPP
#define AUTOCONV_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace autoconv {

inline int max_worker_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_worker_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Run f(i) for i in [0, n).  Iterations must be independent and write only
/// to their own slots; under that contract the result is identical for any
/// thread count.
template <class F>
inline void parallel_for_index(std::size_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        f(static_cast<std::size_t>(i));
    }
#else
    for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace autoconv

#endif
