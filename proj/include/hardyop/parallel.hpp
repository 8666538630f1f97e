#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hardyop::par {

// All bulk reductions in this library run over a fixed chunk decomposition:
// each chunk is accumulated left-to-right, and the per-chunk partials are
// combined in chunk order. The result is therefore bitwise identical for any
// thread count (including the serial fallback), which is what makes seeded
// runs byte-reproducible.
inline constexpr std::size_t kChunk = 4096;

inline bool& parallel_flag() {
    static bool on = true;
    return on;
}

inline void set_parallel(bool on) { parallel_flag() = on; }
inline bool parallel_enabled() { return parallel_flag(); }

inline int worker_count() {
#ifdef _OPENMP
    return parallel_enabled() ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

/// Deterministic chunked reduction. `fold(acc, i)` folds element i into a
/// chunk-local accumulator; `combine(total, part)` merges partials in chunk
/// order.
template <class Acc, class Fold, class Combine>
Acc reduce(std::size_t n, Acc init, Fold&& fold, Combine&& combine) {
    if (n == 0) return init;
    const std::size_t nchunk = (n + kChunk - 1) / kChunk;
    std::vector<Acc> partial(nchunk, init);
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (long long c = 0; c < static_cast<long long>(nchunk); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        Acc acc = init;
        for (std::size_t i = lo; i < hi; ++i) fold(acc, i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    Acc total = init;
    for (std::size_t c = 0; c < nchunk; ++c) combine(total, partial[c]);
    return total;
}

template <class T, class Term>
T sum(std::size_t n, Term&& term) {
    return reduce(
        n, T{}, [&](T& acc, std::size_t i) { acc += term(i); },
        [](T& total, const T& part) { total += part; });
}

/// Plain left-to-right sum; kept as the serial reference the kernel tests
/// and the benchmark compare against.
template <class T, class Term>
T sum_serial(std::size_t n, Term&& term) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
}

/// Max of `value(i)`; ties resolve to the smallest index.
template <class Value>
std::pair<double, std::size_t> argmax(std::size_t n, Value&& value) {
    using Acc = std::pair<double, std::size_t>;
    const Acc none{-std::numeric_limits<double>::infinity(), n};
    return reduce(
        n, none,
        [&](Acc& acc, std::size_t i) {
            const double v = value(i);
            if (v > acc.first) acc = {v, i};
        },
        [](Acc& total, const Acc& part) {
            if (part.first > total.first) total = part;
        });
}

template <class Value>
double max(std::size_t n, Value&& value) {
    return argmax(n, std::forward<Value>(value)).first;
}

template <class Value>
std::pair<double, std::size_t> argmax_serial(std::size_t n, Value&& value) {
    std::pair<double, std::size_t> best{-std::numeric_limits<double>::infinity(), n};
    for (std::size_t i = 0; i < n; ++i) {
        const double v = value(i);
        if (v > best.first) best = {v, i};
    }
    return best;
}

}  // namespace hardyop::par
