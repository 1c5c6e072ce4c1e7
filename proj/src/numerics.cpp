#include "ailearn/numerics.hpp"

#include "ailearn/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>

namespace ailearn {

namespace {

double checked(const std::function<double(double)>& f, double x, const char* what) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": non-finite value " << y << " at x = " << x;
        throw NumericalError(msg.str());
    }
    return y;
}

// Bisection on a slope that is positive at lo and negative at hi.
double stationary_point(const std::function<double(double)>& slope, double lo, double hi) {
    auto negated_slope = [&](double x) { return -checked(slope, x, "objective slope"); };
    auto converged = [](double a, double b) {
        return b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
    };
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::bisect(negated_slope, lo, hi, converged, max_iter);
    return 0.5 * (a + b);
}

struct GslWorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

const bool gsl_handler_disabled = [] {
    gsl_set_error_handler_off();
    return true;
}();

}  // namespace

Maximum maximize_bounded(const ScalarObjective& objective, double lo, double hi,
                         const MaximizeOptions& options) {
    if (!(lo <= hi)) throw InputError("maximize_bounded: lo must not exceed hi");
    if (hi - lo <= 0.0) return {lo, checked(objective.value, lo, "objective")};

    const int n = std::max(options.scan_points, 3);
    std::vector<double> xs(n);
    std::vector<double> fs(n);
    std::size_t best = 0;
    for (int i = 0; i < n; ++i) {
        xs[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
        fs[i] = checked(objective.value, xs[i], "objective");
        if (fs[i] > fs[best]) best = i;
    }

    Maximum result{xs[best], fs[best]};
    auto consider_refined = [&](double x) {
        const double f = checked(objective.value, x, "objective");
        // A refined stationary point wins exact ties against the grid point.
        if (f >= result.value) result = {x, f};
    };

    const std::size_t left = best == 0 ? 0 : best - 1;
    const std::size_t right = std::min<std::size_t>(best + 1, n - 1);
    if (objective.slope) {
        for (auto [a, b] : {std::pair{left, best}, std::pair{best, right}}) {
            if (a == b) continue;
            const double sa = checked(objective.slope, xs[a], "objective slope");
            const double sb = checked(objective.slope, xs[b], "objective slope");
            if (sa > 0.0 && sb < 0.0) consider_refined(stationary_point(objective.slope, xs[a], xs[b]));
        }
    } else {
        auto negated = [&](double x) { return -checked(objective.value, x, "objective"); };
        std::uintmax_t max_iter = 500;
        const int bits = std::numeric_limits<double>::digits;
        const auto [x, neg_f] = boost::math::tools::brent_find_minima(negated, xs[left], xs[right], bits, max_iter);
        if (-neg_f > result.value) result = {x, -neg_f};
    }
    return result;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw InputError("bisect_root: empty bracket");
    const double f_lo = checked(f, lo, "bisection");
    const double f_hi = checked(f, hi, "bisection");
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "bisection bracket lost: f(" << lo << ") = " << f_lo << ", f(" << hi << ") = " << f_hi;
        throw NumericalError(msg.str());
    }
    auto converged = [tol](double a, double b) { return b - a <= tol; };
    auto g = [&](double x) { return checked(f, x, "bisection"); };
    std::uintmax_t max_iter = 400;
    const auto [a, b] = boost::math::tools::bisect(g, lo, hi, converged, max_iter);
    if (a == b) return a;
    // Secant step inside the final bracket.
    const double g_a = g(a);
    const double g_b = g(b);
    if ((g_a < 0.0) != (g_b < 0.0) && g_b != g_a) return std::clamp(a - g_a * (b - a) / (g_b - g_a), a, b);
    return 0.5 * (a + b);
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
    (void)gsl_handler_disabled;
    if (lo == hi) return 0.0;
    constexpr std::size_t limit = 1000;
    std::unique_ptr<gsl_integration_workspace, GslWorkspaceDeleter> workspace(
        gsl_integration_workspace_alloc(limit));

    struct Context {
        const std::function<double(double)>* f;
        bool finite = true;
    } ctx{&f};
    gsl_function gf;
    gf.function = [](double x, void* p) {
        auto* c = static_cast<Context*>(p);
        const double y = (*c->f)(x);
        if (!std::isfinite(y)) c->finite = false;
        return y;
    };
    gf.params = &ctx;

    double result = 0.0;
    double abserr = 0.0;
    const int status = gsl_integration_qags(&gf, lo, hi, abs_tol, 0.0, limit, workspace.get(), &result, &abserr);
    if (!ctx.finite) throw NumericalError("integrate: non-finite integrand");
    if (status != GSL_SUCCESS && abserr > abs_tol) {
        throw NumericalError(std::string("integrate: ") + gsl_strerror(status));
    }
    return result;
}

double central_difference(const std::function<double(double)>& f, double x, double h, double lo,
                          double hi) {
    if (!(h > 0.0)) throw InputError("central_difference: step must be positive");
    if (hi - lo < 2.0 * h) throw InputError("central_difference: domain narrower than stencil");
    const double center = std::clamp(x, lo + h, hi - h);
    return (f(center + h) - f(center - h)) / (2.0 * h);
}

}  // namespace ailearn
