#pragma once

#include <cstddef>
#include <vector>

namespace tactoid::par {

// Global execution mode. Serial mode forces every kernel through its
// reference loop; parallel mode uses the OpenMP kernels. Reductions in
// parallel mode are blocked with a fixed block count so results do not
// depend on the thread count.
void set_serial(bool serial);
bool serial_mode();
int  max_threads();

inline constexpr std::ptrdiff_t kReduceBlocks = 256;

// Deterministic blocked sum: the range is split into kReduceBlocks chunks,
// each chunk is accumulated in index order, and the partials are combined
// in chunk order. Identical output for any thread count.
template <class BodyFn>
double block_sum(std::ptrdiff_t n, BodyFn&& term) {
    if (n <= 0) return 0.0;
    const std::ptrdiff_t nb = n < kReduceBlocks ? n : kReduceBlocks;
    std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
    if (serial_mode()) {
        for (std::ptrdiff_t b = 0; b < nb; ++b) {
            const std::ptrdiff_t lo = b * n / nb, hi = (b + 1) * n / nb;
            double s = 0.0;
            for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
            partial[static_cast<std::size_t>(b)] = s;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t b = 0; b < nb; ++b) {
            const std::ptrdiff_t lo = b * n / nb, hi = (b + 1) * n / nb;
            double s = 0.0;
            for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
            partial[static_cast<std::size_t>(b)] = s;
        }
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// Deterministic max over a range; max is order independent so a plain
// OpenMP reduction is safe.
template <class BodyFn>
double block_max(std::ptrdiff_t n, BodyFn&& term) {
    double best = -1e300;
    if (serial_mode()) {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double v = term(i);
            if (v > best) best = v;
        }
    } else {
#pragma omp parallel for schedule(static) reduction(max : best)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double v = term(i);
            if (v > best) best = v;
        }
    }
    return best;
}

template <class BodyFn>
void for_each(std::ptrdiff_t n, BodyFn&& body) {
    if (serial_mode()) {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace tactoid::par
