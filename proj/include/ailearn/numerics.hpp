#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ailearn {

/// Scalar objective on an interval. `slope` is optional; when present the
/// refinement step bisects on its sign change instead of comparing values,
/// which resolves the argmax to machine precision.
struct ScalarObjective {
    std::function<double(double)> value;
    std::function<double(double)> slope;
};

struct MaximizeOptions {
    int scan_points = 64;
    double x_tol = 1e-8;
};

struct Maximum {
    double argmax = 0.0;
    double value = 0.0;
};

/// Global maximizer of `objective` on [lo, hi]. A coarse scan brackets the
/// best grid cell, then the two adjacent cells are refined. Ties go to the
/// smallest abscissa. Throws NumericalError on non-finite objective values.
Maximum maximize_bounded(const ScalarObjective& objective, double lo, double hi,
                         const MaximizeOptions& options = {});

/// Root of a monotone-sign function on [lo, hi] by bisection. Requires a sign
/// change between the endpoints (NumericalError otherwise).
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Adaptive quadrature of f over [lo, hi] to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-9);

/// Central difference of f at x with step h. If the stencil leaves [lo, hi]
/// the center is shifted inward so every evaluation stays in the domain.
double central_difference(const std::function<double(double)>& f, double x, double h,
                          double lo = -1e300, double hi = 1e300);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
/// thrown by any task is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ailearn
