#include "homind/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace homind {

namespace {
int g_threads = 0; // 0 = library default
}

void set_thread_count(int n) {
    g_threads = n < 1 ? 0 : n;
#ifdef _OPENMP
    if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int thread_count() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void serial_for(int count, const std::function<void(int)>& f) {
    for (int i = 0; i < count; ++i) f(i);
}

void parallel_for(int count, const std::function<void(int)>& f) {
#ifdef _OPENMP
    if (thread_count() > 1) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
#endif
    serial_for(count, f);
}

} // namespace homind
