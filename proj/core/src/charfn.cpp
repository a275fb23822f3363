#include "subsym/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <boost/math/special_functions/gamma.hpp>

#include "quad.hpp"

namespace subsym {

namespace {

constexpr Complex kI{0.0, 1.0};

// exp(w) - 1 - w, stable for small |w|.
Complex expm1m(Complex w) {
    if (std::abs(w) > 0.25) return std::exp(w) - 1.0 - w;
    Complex term = 0.5 * w * w;
    Complex sum = term;
    for (int k = 3; k <= 14; ++k) {
        term *= w / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

// exp(w) - 1, stable for small |w|.
Complex expm1c(Complex w) {
    if (std::abs(w) > 0.25) return std::exp(w) - 1.0;
    return w + expm1m(w);
}

}  // namespace

Complex bm_char_exponent(const BrownianDrift& bm, Complex z) {
    return kI * bm.mu * z - 0.5 * bm.sigma * bm.sigma * z * z;
}

Complex laplace_exponent(const SubordinatorSpec& s, Complex w) {
    return std::visit(
        [&](const auto& sub) -> Complex {
            using T = std::decay_t<decltype(sub)>;
            if constexpr (std::is_same_v<T, StableSubordinator>) {
                if (w.real() > 0.0)
                    throw NumericalError(
                        "laplace_exponent: stable clock needs Re w <= 0");
                if (w == Complex{}) return {};
                const double scale =
                    sub.a * boost::math::tgamma(1.0 - sub.alpha) / sub.alpha;
                return -scale * std::pow(-w, sub.alpha);
            } else {
                if (w.real() >= sub.lambda)
                    throw NumericalError(
                        "laplace_exponent: tempered clock needs Re w < lambda");
                const double scale = sub.c * boost::math::tgamma(-sub.alpha);
                return scale * (std::pow(sub.lambda - w, sub.alpha) -
                                std::pow(sub.lambda, sub.alpha));
            }
        },
        s);
}

double laplace_domain_bound(const SubordinatorSpec& s) {
    return std::visit(
        [](const auto& sub) -> double {
            using T = std::decay_t<decltype(sub)>;
            if constexpr (std::is_same_v<T, StableSubordinator>)
                return 0.0;
            else
                return sub.lambda;
        },
        s);
}

Complex tcbm_char_exponent(const TcbmModel& m, Complex z) {
    return kI * m.gamma * z + laplace_exponent(m.subordinator, bm_char_exponent(m.bm, z));
}

Complex named_char_exponent(const CgmyModel& m, Complex z) {
    if (!(z.imag() > -m.g && z.imag() < m.m))
        throw NumericalError("cgmy exponent: Im z outside (-G, M)");
    const double gam = boost::math::tgamma(-m.y);
    return m.c * gam *
           (std::pow(m.m - kI * z, m.y) - std::pow(m.m, m.y) +
            std::pow(m.g + kI * z, m.y) - std::pow(m.g, m.y));
}

Complex named_char_exponent(const MeixnerModel& m, Complex z) {
    if (!(std::abs(m.a * z.imag() - m.b) < M_PI))
        throw NumericalError("meixner exponent: Im z outside the analyticity strip");
    const Complex ch = std::cosh(0.5 * (m.a * z - kI * m.b));
    return 2.0 * m.d * (std::log(std::cos(0.5 * m.b)) - std::log(ch));
}

Complex named_char_exponent(const NamedModel& m, Complex z) {
    return std::visit([&](const auto& mm) { return named_char_exponent(mm, z); }, m);
}

Complex char_exponent(const AnyModel& m, Complex z) {
    return std::visit(
        [&](const auto& mm) -> Complex {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, TcbmModel>)
                return tcbm_char_exponent(mm, z);
            else
                return named_char_exponent(mm, z);
        },
        m);
}

double cumulant(const TcbmModel& m, double s) {
    if (s == 0.0) return 0.0;
    const double w = m.bm.mu * s + 0.5 * m.bm.sigma * m.bm.sigma * s * s;
    return m.gamma * s + laplace_exponent(m.subordinator, Complex(w, 0.0)).real();
}

namespace {

// Contribution of the jumps on one side of the origin:
//   int_0^inf (e^{wy} - 1 - wy 1_{y<=1}) nu(dir*y) dy   with  w = i z dir.
// Split: fourth-order moment expansion on (0, eps], compensated band [eps, 1]
// in log coordinates, plain band [1, Y], then tail corrections past Y
// (subtract the tail mass; add the integration-by-parts boundary term
// -e^{wY} nu(Y)/w once oscillation or decay makes it dominant).
Complex jump_side(const LevyDensity1D& nu, double dir, Complex z, const LkOptions& opt) {
    const Complex w = kI * z * dir;
    const double aw = std::abs(w);
    auto nu_side = [&nu, dir](double y) { return nu(dir * y); };

    const double atol = opt.abs_tol * 0.2;
    const double rtol = opt.rel_tol * 0.1;

    // The expansion cut shrinks with frequency so the fifth-order remainder
    // |w|^5 eps^3 m2 / 120 stays under the relative target.
    const double eps = std::min(opt.small_jump_cut, 8e-3 / std::max(aw, 1.0));

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    {
        const double le = std::log(eps);
        auto h2 = [&](double u) {
            const double y = std::exp(u);
            return y * y * nu_side(y) * y;
        };
        double top = 0.0, u_top = le;
        for (double u = le; u > le - 80.0; u -= 4.0) {
            const double v = std::abs(h2(u));
            if (v > top) {
                top = v;
                u_top = u;
            }
        }
        if (top > 0.0) {
            double lo = u_top;
            while (lo > -745.0 && std::abs(h2(lo)) > top * 1e-18) lo -= 4.0;
            const double matol = atol / std::max(aw * aw, 1.0);
            auto mom = [&](int k) {
                return detail::integrate_interval(
                           [&](double u) {
                               const double y = std::exp(u);
                               return std::pow(y, k) * nu_side(y) * y;
                           },
                           lo, le, matol, rtol, "levy_khintchine_exponent: small-jump moment")
                    .value;
            };
            m2 = mom(2);
            m3 = mom(3);
            m4 = mom(4);
        }
    }
    const Complex w2 = w * w;
    Complex total = w2 * (0.5 * m2) + w2 * w * (m3 / 6.0) + w2 * w2 * (m4 / 24.0);

    total += detail::integrate_interval(
                 [&](double u) {
                     const double y = std::exp(u);
                     return expm1m(w * y) * nu_side(y) * y;
                 },
                 std::log(eps), 0.0, atol, rtol, "levy_khintchine_exponent: compensated band")
                 .value;

    // Truncation control: crit(R) estimates the error left after the tail
    // corrections, using the local log-slope of nu as the decay rate.
    auto crit = [&](double R, bool* use_boundary) {
        const double nuR = nu_side(R);
        if (!(nuR > 0.0)) {
            *use_boundary = false;
            return 0.0;
        }
        const double nu2 = nu_side(1.25 * R);
        const double grow = std::exp(std::min(w.real() * R, 700.0));
        double rate = 50.0 / R;
        if (nu2 > 0.0)
            rate = std::max((std::log(nuR) - std::log(nu2)) / (0.25 * R), 0.5 / R);
        const double room = rate - w.real();
        const double plain = room > 0.0 ? 2.0 * nuR * grow / room : 1e300;
        if (aw * R >= 10.0) {
            const double osc = 3.0 * (rate + 1.0 / R) * nuR * grow / (aw * aw);
            if (osc < plain) {
                *use_boundary = true;
                return osc;
            }
        }
        *use_boundary = false;
        return plain;
    };

    double Y = std::max(opt.tail_start, 1.0);
    // octave segments let the quadrature accept far segments on absolute
    // smallness instead of resolving oscillation under a negligible density
    auto band = [&](double a, double b) {
        Complex acc{};
        double lo = a;
        while (lo < b) {
            const double hi = std::min(2.0 * lo, b);
            acc += detail::integrate_interval(
                       [&](double y) { return expm1c(w * y) * nu_side(y); }, lo, hi, atol,
                       rtol, "levy_khintchine_exponent: oscillatory band")
                       .value;
            lo = hi;
        }
        return acc;
    };
    total += band(1.0, Y);

    bool use_boundary = false;
    double c = crit(Y, &use_boundary);
    while (c > atol) {
        if (Y >= opt.max_radius)
            throw NumericalError("levy_khintchine_exponent: tail truncation failed", c);
        bool ub2 = false;
        const double c2 = crit(2.0 * Y, &ub2);
        if (c2 > c && c2 > 1e6)
            throw NumericalError("levy_khintchine_exponent: jump tail is not integrable here",
                                 c2);
        total += band(Y, 2.0 * Y);
        Y *= 2.0;
        c = c2;
        use_boundary = ub2;
    }

    {
        auto h = [&](double u) {
            const double y = std::exp(u);
            return nu_side(y) * y;
        };
        const double l0 = std::log(Y);
        const double top = h(l0);
        if (top > 0.0) {
            double hi = l0;
            while (hi < 700.0 && h(hi) > top * 1e-18) hi += 2.0;
            total -= detail::integrate_interval(h, l0, hi, atol, rtol,
                                                "levy_khintchine_exponent: tail mass")
                         .value;
        }
    }
    if (use_boundary) total -= std::exp(w * Y) * nu_side(Y) / w;

    return total;
}

}  // namespace

Complex levy_khintchine_exponent(const LevyTriplet1D& t, Complex z, const LkOptions& opt) {
    if (z == Complex{}) return {};
    Complex psi = kI * t.b * z - 0.5 * t.sigma2 * z * z;
    psi += jump_side(t.nu, 1.0, z, opt);
    psi += jump_side(t.nu, -1.0, z, opt);
    return psi;
}

double triplet_cumulant(const LevyTriplet1D& t, double s, const LkOptions& opt) {
    if (s == 0.0) return 0.0;
    return levy_khintchine_exponent(t, Complex(0.0, -s), opt).real();
}

std::vector<ConstraintViolation> violations(const LevyTriplet1D& t) {
    std::vector<ConstraintViolation> v;
    if (!std::isfinite(t.b)) v.push_back({"b", "must be finite"});
    if (!(t.sigma2 >= 0.0) || !std::isfinite(t.sigma2))
        v.push_back({"sigma2", "must be finite and nonnegative"});
    if (!t.nu.eval) {
        v.push_back({"nu", "must be set"});
        return v;
    }
    double sum = 0.0;
    for (double u = -40.0; u <= 20.0; u += 0.5) {
        const double y = std::exp(u);
        const double g = std::min(y * y, 1.0) * (t.nu(y) + t.nu(-y)) * y;
        if (!std::isfinite(g)) {
            v.push_back({"nu", "(y^2 ^ 1) nu(y) must evaluate finite"});
            return v;
        }
        sum += g * 0.5;
    }
    if (!std::isfinite(sum)) v.push_back({"nu", "(y^2 ^ 1) nu(y) must have finite integral"});
    return v;
}

}  // namespace subsym
