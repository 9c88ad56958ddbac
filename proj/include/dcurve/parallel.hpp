#pragma once

#include <exception>
#include <utility>
#include <vector>

namespace dcurve {

enum class ExecMode { serial, parallel };

/// Runs body(i) for i in [0, n), optionally across OpenMP threads. Callers
/// write results into pre-sized index-addressed storage, so serial and
/// parallel runs produce bitwise identical output. The first exception by
/// index is rethrown once all iterations finish.
template <class F>
void parallel_for_index(int n, ExecMode mode, F&& body) {
    if (n <= 0) return;
#ifdef DCURVE_HAVE_OPENMP
    if (mode == ExecMode::parallel) {
        std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (int i = 0; i < n; ++i)
            if (errors[i]) std::rethrow_exception(errors[i]);
        return;
    }
#else
    (void)mode;
#endif
    for (int i = 0; i < n; ++i) body(i);
}

}  // namespace dcurve
