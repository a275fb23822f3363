#include "subsym/density.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "quad.hpp"

namespace subsym {

namespace {

// Clock-time integral behind nu and the even factor. `even` folds the
// exponential tilt out of the kernel: (x - mu s)^2 becomes x^2 + (mu s)^2.
double sato_integral(const TcbmModel& m, double x, const SatoOptions& opt, bool even,
                     double* err_out) {
    if (x == 0.0) throw ValidationError("x", "must be nonzero");
    const double s2 = m.bm.sigma * m.bm.sigma;
    const double mu = m.bm.mu;
    auto g = [&](double s) {
        double q;
        if (even) {
            q = -(x * x + mu * mu * s * s) / (2.0 * s2 * s);
        } else {
            const double d = x - mu * s;
            q = -d * d / (2.0 * s2 * s);
        }
        if (q < -745.0) return 0.0;
        return std::exp(q) / std::sqrt(2.0 * M_PI * s2 * s) *
               clock_jump_density(m.subordinator, s);
    };
    auto r = detail::integrate_positive_axis(g, opt.abs_tol, opt.rel_tol,
                                             "subordinated_levy_density");
    if (err_out) *err_out = r.error;
    return r.value;
}

}  // namespace

double subordinated_levy_density(const TcbmModel& m, double x, const SatoOptions& opt) {
    return sato_integral(m, x, opt, false, nullptr);
}

double even_factor(const TcbmModel& m, double x, const SatoOptions& opt) {
    return sato_integral(m, x, opt, true, nullptr);
}

double normalized_drift(const TcbmModel& m) { return m.bm.mu / (m.bm.sigma * m.bm.sigma); }

LevyDensity1D levy_density(const TcbmModel& m, const SatoOptions& opt) {
    return {[m, opt](double x) { return subordinated_levy_density(m, x, opt); }};
}

LevyDensity1D levy_density(const CgmyModel& m) {
    return {[m](double x) {
        if (x == 0.0) throw ValidationError("x", "must be nonzero");
        const double ax = std::abs(x);
        const double rate = x > 0.0 ? m.m : m.g;
        return m.c * std::exp(-rate * ax) * std::pow(ax, -1.0 - m.y);
    }};
}

LevyDensity1D levy_density(const MeixnerModel& m) {
    return {[m](double x) {
        if (x == 0.0) throw ValidationError("x", "must be nonzero");
        const double ax = std::abs(x);
        const double t = M_PI * ax / m.a;
        // x sinh(pi x / a) is even, so work with |x|; switch to the leading
        // exponential once sinh would overflow double range
        if (t > 30.0) return 2.0 * m.d / ax * std::exp(m.b * x / m.a - t);
        return m.d * std::exp(m.b * x / m.a) / (ax * std::sinh(t));
    }};
}

LevyDensity1D levy_density(const AnyModel& m, const SatoOptions& opt) {
    return std::visit(
        [&](const auto& mm) -> LevyDensity1D {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, TcbmModel>)
                return levy_density(mm, opt);
            else
                return levy_density(mm);
        },
        m);
}

std::string_view to_string(SymmetryCriterion c) {
    switch (c) {
        case SymmetryCriterion::density_grid: return "density_grid";
        case SymmetryCriterion::drift_half: return "drift_half";
        case SymmetryCriterion::cgmy_gm: return "cgmy_gm";
        case SymmetryCriterion::meixner_2ba: return "meixner_2ba";
    }
    return "unknown";
}

std::vector<double> default_symmetry_grid() {
    std::vector<double> g(20);
    for (int i = 0; i < 20; ++i) g[i] = 0.05 * std::pow(100.0, i / 19.0);
    return g;
}

SymmetryReport symmetry_residual(const LevyDensity1D& nu, std::span<const double> grid,
                                 double tolerance, double floor) {
    SymmetryReport rep;
    rep.criterion_used = SymmetryCriterion::density_grid;
    double worst = -1.0;
    for (double x : grid) {
        const double np = nu(x);
        const double nm = nu(-x);
        const double pair[2][2] = {{np, std::exp(-x) * nm}, {nm, std::exp(x) * np}};
        for (auto& p : pair) {
            const double r = std::abs(p[0] - p[1]);
            const double s = std::max({p[0], p[1], floor});
            if (r / s > worst) {
                worst = r / s;
                rep.sup_residual = r;
                rep.scale = s;
            }
        }
    }
    rep.symmetric = worst >= 0.0 && worst < tolerance;
    return rep;
}

SymmetryReport classify_symmetry(const AnyModel& m, const SatoOptions& opt) {
    const auto grid = default_symmetry_grid();
    return std::visit(
        [&](const auto& mm) -> SymmetryReport {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, TcbmModel>) {
                SymmetryReport rep = symmetry_residual(levy_density(mm, opt), grid);
                const double th = normalized_drift(mm);
                rep.criterion_used = SymmetryCriterion::drift_half;
                rep.symmetric = std::abs(th + 0.5) <= 1e-12;
                rep.drift = mm.bm.mu;
                rep.normalized_drift = th;
                return rep;
            } else if constexpr (std::is_same_v<T, CgmyModel>) {
                SymmetryReport rep = symmetry_residual(levy_density(mm), grid);
                rep.criterion_used = SymmetryCriterion::cgmy_gm;
                rep.symmetric =
                    std::abs(mm.g - mm.m + 1.0) <= 1e-12 * std::max({1.0, mm.g, mm.m});
                rep.drift = madan_yor_drift(mm);
                rep.normalized_drift = rep.drift;
                return rep;
            } else {
                SymmetryReport rep = symmetry_residual(levy_density(mm), grid);
                rep.criterion_used = SymmetryCriterion::meixner_2ba;
                rep.symmetric = std::abs(2.0 * mm.b + mm.a) <= 1e-12 * std::max(1.0, mm.a);
                rep.drift = madan_yor_drift(mm);
                rep.normalized_drift = rep.drift;
                return rep;
            }
        },
        m);
}

LevyTriplet1D levy_triplet(const TcbmModel& m, const SatoOptions& opt) {
    const double mu = m.bm.mu;
    const double sg = m.bm.sigma;
    double trunc_mean = 0.0;
    if (mu != 0.0) {
        // E[X_s 1_{|X_s|<=1}] for X_s ~ N(mu s, sigma^2 s) in closed form
        auto tm = [&](double s) {
            const double sd = sg * std::sqrt(s);
            const double a = (-1.0 - mu * s) / sd;
            const double b = (1.0 - mu * s) / sd;
            const double cdf = 0.5 * (std::erfc(-b / M_SQRT2) - std::erfc(-a / M_SQRT2));
            const double pdf =
                (std::exp(-0.5 * b * b) - std::exp(-0.5 * a * a)) / std::sqrt(2.0 * M_PI);
            return (mu * s * cdf - sd * pdf) * clock_jump_density(m.subordinator, s);
        };
        trunc_mean =
            detail::integrate_positive_axis(tm, opt.abs_tol, opt.rel_tol, "levy_triplet").value;
    }
    return {m.gamma + trunc_mean, 0.0, levy_density(m, opt)};
}

LevyTriplet1D dual_triplet(const LevyTriplet1D& t, double r, double delta,
                           const LkOptions& opt) {
    const LevyDensity1D inner = t.nu;
    LevyDensity1D nu_dual{[inner](double x) {
        const double n = inner(-x);
        if (!(n > 0.0)) return 0.0;
        return std::exp(-x) * n;
    }};
    const double jumps = triplet_cumulant({0.0, 0.0, nu_dual}, 1.0, opt);
    const double b = (delta - r) - 0.5 * t.sigma2 - jumps;
    return {b, t.sigma2, nu_dual};
}

CmReport complete_monotonicity_check(const TcbmModel& m, const CmOptions& opt) {
    if (opt.order < 1 || opt.order > 8)
        throw ValidationError("order", "must be between 1 and 8");
    if (!(opt.grid_step > 0.0) || opt.grid_step >= 0.5)
        throw ValidationError("grid_step", "must be in (0, 0.5)");
    CmReport rep;
    const double th = normalized_drift(m);

    // reflection identity nu(x) e^{-mu x} = nu(-x) e^{mu x} on the default grid
    {
        double worst = 0.0;
        for (double x : default_symmetry_grid()) {
            const double lhs = sato_integral(m, x, opt.quadrature, false, nullptr) *
                               std::exp(-th * x);
            const double rhs = sato_integral(m, -x, opt.quadrature, false, nullptr) *
                               std::exp(th * x);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300}));
        }
        rep.condition2_residual = worst;
        rep.condition2_ok = worst < 1e-10;
    }

    // alternating forward differences of g(u) = nu(sqrt u) e^{-mu sqrt u} on (0,1)
    const double h = opt.grid_step;
    const int n = static_cast<int>(std::floor(1.0 / h)) - 1;
    std::vector<double> g(n), ge(n);
    for (int j = 0; j < n; ++j) {
        const double u = (j + 1) * h;
        const double rt = std::sqrt(u);
        double err = 0.0;
        const double nu = sato_integral(m, rt, opt.quadrature, false, &err);
        const double tilt = std::exp(-th * rt);
        g[j] = nu * tilt;
        ge[j] = err * tilt;
    }

    double binom[9][9] = {};
    for (int k = 0; k <= 8; ++k) {
        binom[k][0] = binom[k][k] = 1.0;
        for (int i = 1; i < k; ++i) binom[k][i] = binom[k - 1][i - 1] + binom[k - 1][i];
    }
    double fact = 1.0;
    for (int k = 1; k <= opt.order && !rep.first_failure; ++k) {
        fact *= k;
        const double pow2k = std::ldexp(1.0, k);
        for (int j = 0; j + k < n; ++j) {
            double diff = 0.0, scale = 0.0, noise = 0.0;
            for (int i = 0; i <= k; ++i) {
                const double c = binom[k][i];
                diff += ((k - i) % 2 == 0 ? c : -c) * g[j + i];
                scale = std::max(scale, std::abs(g[j + i]));
                noise = std::max(noise, ge[j + i]);
            }
            const double tol = 1e-8 * fact * scale;
            if (pow2k * noise > tol)
                throw NumericalError(
                    "complete_monotonicity_check: quadrature noise exceeds the "
                    "difference tolerance at order " +
                        std::to_string(k),
                    pow2k * noise);
            const double alt = (k % 2 == 0) ? diff : -diff;
            if (alt < -tol) {
                rep.first_failure = std::make_pair(k, (j + 1) * h);
                break;
            }
        }
    }
    rep.passes = rep.condition2_ok && !rep.first_failure;
    return rep;
}

}  // namespace subsym
