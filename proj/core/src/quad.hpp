#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <utility>

#include "subsym/errors.hpp"

// Shared quadrature plumbing for the clock-time and jump-space integrals.
namespace subsym::detail {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

template <class R>
struct ValueWithError {
    R value{};
    double error = 0.0;
};

// Adaptive Gauss-Kronrod on [a, b]. Throws NumericalError when the achieved
// error estimate misses both the absolute and the relative target.
template <class F>
auto integrate_interval(F&& f, double a, double b, double abs_tol, double rel_tol,
                        const char* what) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0, l1 = 0.0;
    // drive the subdivision well past the acceptance threshold; the kernel
    // stops on its own estimate, which otherwise lands exactly on the target
    auto value = gauss_kronrod<double, 31>::integrate(std::forward<F>(f), a, b, 15,
                                                      std::max(rel_tol * 1e-2, 5e-16),
                                                      &err, &l1);
    const double magnitude = std::max(std::abs(value), 0.1 * l1);
    if (!(err <= std::max(abs_tol, rel_tol * std::max(magnitude, 1e-300))))
        throw NumericalError(std::string(what) + ": quadrature did not converge", err);
    using R = decltype(value);
    return ValueWithError<R>{value, err};
}

// Integral over (0, inf) in log coordinates. The transformed integrand
// h(u) = g(e^u) e^u must decay at both ends (true for every kernel here:
// double-exponential cutoff toward 0 and exponential-or-better tails).
// Bounds come from a coarse scan for the mass followed by expansion until the
// integrand falls 18 orders below its peak.
template <class G>
QuadResult integrate_positive_axis(G&& g, double abs_tol, double rel_tol,
                                   const char* what) {
    auto h = [&](double u) {
        const double y = std::exp(u);
        return g(y) * y;
    };

    double peak = 0.0, u_peak = 0.0;
    for (double u = -200.0; u <= 200.0; u += 2.0) {
        const double v = std::abs(h(u));
        if (v > peak) {
            peak = v;
            u_peak = u;
        }
    }
    if (peak == 0.0) return {0.0, 0.0};
    for (double u = u_peak - 2.0; u <= u_peak + 2.0; u += 0.125) {
        const double v = std::abs(h(u));
        if (v > peak) {
            peak = v;
            u_peak = u;
        }
    }

    const double cut = peak * 1e-18;
    double lo = u_peak, hi = u_peak;
    while (lo > -745.0 && std::abs(h(lo)) > cut) lo -= 1.0;
    while (hi < 745.0 && std::abs(h(hi)) > cut) hi += 1.0;

    auto r = integrate_interval(h, lo, hi, abs_tol, rel_tol, what);
    return {r.value, r.error};
}

}  // namespace subsym::detail
