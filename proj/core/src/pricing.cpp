#include "subsym/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <variant>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

namespace subsym {

namespace {

constexpr Complex kI{0.0, 1.0};

// One side of a jump density resampled onto a uniform log|x| grid with a cubic
// spline of log nu. Power-law extension below the grid, exponential extension
// above it; the extensions keep tail divergences visible to the integrator
// instead of silently cutting them off.
std::function<double(double)> tabulate_side(const LevyDensity1D& nu, double dir,
                                            double grow) {
    const double x_lo = 1e-8;
    double r = 1.0;
    double peak = 0.0;
    for (double x : {0.01, 0.1, 0.5, 1.0})
        peak = std::max(peak, nu(dir * x) * x * std::exp(std::min(grow * x, 700.0)));
    while (r < 2048.0) {
        const double w = nu(dir * r) * r * std::exp(std::min(grow * r, 700.0));
        peak = std::max(peak, w);
        if (w < 1e-18 * peak && nu(dir * r) * r < 1e-18) break;
        r *= 2.0;
    }

    const double u0 = std::log(x_lo);
    const double u1 = std::log(r);
    const int n = static_cast<int>(std::ceil((u1 - u0) / std::log(10.0) * 64.0)) + 1;
    const double du = (u1 - u0) / (n - 1);
    std::vector<double> logv(n);
    for (int i = 0; i < n; ++i)
        logv[i] = std::log(std::max(nu(dir * std::exp(u0 + i * du)), 1e-300));

    boost::math::interpolators::cardinal_cubic_b_spline<double> spline(
        logv.data(), logv.size(), u0, du);
    const double p_left = (logv[1] - logv[0]) / du;
    const double x_hi = std::exp(u1);
    const double x_prev = std::exp(u1 - du);
    const double rate_right = std::max((logv[n - 2] - logv[n - 1]) / (x_hi - x_prev), 0.0);
    const double v_left = logv[0], v_right = logv[n - 1];

    return [=](double ax) {
        const double u = std::log(ax);
        double lv;
        if (u < u0)
            lv = v_left + p_left * (u - u0);
        else if (u > u1)
            lv = v_right - rate_right * (ax - x_hi);
        else
            lv = spline(u);
        return lv < -700.0 ? 0.0 : std::exp(lv);
    };
}

LevyDensity1D tabulate_density(const LevyDensity1D& nu, double grow_pos, double grow_neg) {
    auto pos = tabulate_side(nu, 1.0, grow_pos);
    auto neg = tabulate_side(nu, -1.0, grow_neg);
    return {[pos, neg](double x) { return x > 0.0 ? pos(x) : neg(-x); }};
}

struct ExponentSource {
    std::function<Complex(Complex)> psi;
    std::function<double(double)> kappa;
};

// Damped transform: price = e^{-beta k}/pi int_0^V Re[e^{-ivk} zeta(v)] dv with
//   zeta(v) = exp(i u ln S0 + T psi(u) - r T) / ((beta + iv)(beta + 1 + iv)),
//   u = v - (beta+1) i.
// beta > 0 prices calls, beta < -1 puts. The Simpson grid doubles until the
// fourth-order error bound, amplified by e^{-beta k}, meets the target.
double transform_price(const ExponentSource& src, const MarketSpec& mkt, const OptionSpec& o,
                       const PricerOptions& opt) {
    if (auto v = violations(o); !v.empty()) throw ValidationError(v);
    if (auto v = violations(mkt); !v.empty()) throw ValidationError(v);
    if (!(opt.damping > 0.0)) throw ValidationError("damping", "must be positive");

    const double k = std::log(o.strike);
    const double ls0 = std::log(mkt.spot);
    const double T = o.maturity;

    double a = opt.damping;
    double q = 0.0;
    for (;;) {
        q = o.kind == OptionKind::call ? 1.0 + a : -a;
        try {
            src.kappa(q);
            break;
        } catch (const NumericalError&) {
            a *= 0.5;
            if (a < 1e-4)
                throw NumericalError(
                    "price_european: moment strip too narrow for the damped transform");
        }
    }
    const double beta = q - 1.0;

    double V = 16.0;
    while (std::exp(T * src.psi(Complex(V, -q)).real()) > opt.cf_cutoff) {
        V *= 2.0;
        if (V > 1e6)
            throw NumericalError("price_european: characteristic function does not decay");
    }

    std::size_t n = std::max<std::size_t>(opt.grid_points, 8);
    n += n & 1;
    const double keff = std::abs(k) + std::abs(ls0) + 2.0;
    const double amp = std::exp(-beta * k) / M_PI;
    const double target = 1e-7 * std::max(1.0, 0.01 * mkt.spot);
    double integral = 0.0;
    for (;;) {
        const double h = V / n;
        double acc = 0.0, mag = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double v = h * j;
            const Complex u(v, -q);
            const Complex zeta = std::exp(kI * u * ls0 + T * src.psi(u) - mkt.r * T) /
                                 (Complex(beta, v) * Complex(beta + 1.0, v));
            const double f = (std::exp(Complex(0.0, -v * k)) * zeta).real();
            const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            acc += w * f;
            mag += std::abs(zeta);
        }
        integral = acc * h / 3.0;
        const double hk = h * keff;
        const double err = hk * hk * hk * hk / 180.0 * (mag * h) * amp;
        if (err <= target) break;
        if (n >= (1u << 21)) {
            if (err > 1e3 * target)
                throw NumericalError("price_european: frequency grid exhausted", err);
            break;
        }
        n *= 2;
    }
    return amp * integral;
}

}  // namespace

std::vector<ConstraintViolation> violations(const OptionSpec& o) {
    std::vector<ConstraintViolation> v;
    if (!(o.strike > 0.0) || !std::isfinite(o.strike))
        v.push_back({"strike", "must be finite and positive"});
    if (!(o.maturity > 0.0) || !std::isfinite(o.maturity))
        v.push_back({"maturity", "must be finite and positive"});
    return v;
}

double martingale_gap(const TcbmModel& m, const MarketSpec& mkt) {
    return cumulant(m, 1.0) - (mkt.r - mkt.delta);
}

TcbmModel calibrate_drift(TcbmModel m, const MarketSpec& mkt) {
    m.gamma = 0.0;
    m.gamma = (mkt.r - mkt.delta) - cumulant(m, 1.0);
    return m;
}

double price_european(const TcbmModel& m, const MarketSpec& mkt, const OptionSpec& o,
                      const PricerOptions& opt) {
    ExponentSource src{[&m](Complex z) { return tcbm_char_exponent(m, z); },
                       [&m](double s) { return cumulant(m, s); }};
    return transform_price(src, mkt, o, opt);
}

double price_european(const LevyTriplet1D& t, const MarketSpec& mkt, const OptionSpec& o,
                      const PricerOptions& opt) {
    const double grow_pos = o.kind == OptionKind::call ? 1.0 + opt.damping : 0.0;
    const double grow_neg = o.kind == OptionKind::call ? 0.0 : opt.damping;
    const LevyTriplet1D tab{t.b, t.sigma2, tabulate_density(t.nu, grow_pos, grow_neg)};
    ExponentSource src{
        [&tab, &opt](Complex z) { return levy_khintchine_exponent(tab, z, opt.lk); },
        [&tab, &opt](double s) { return triplet_cumulant(tab, s, opt.lk); }};
    return transform_price(src, mkt, o, opt);
}

double price_european(const AnyModel& m, const MarketSpec& mkt, const OptionSpec& o,
                      const PricerOptions& opt) {
    return std::visit(
        [&](const auto& mm) -> double {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, TcbmModel>) {
                return price_european(mm, mkt, o, opt);
            } else {
                ExponentSource src{
                    [&mm](Complex z) { return named_char_exponent(mm, z); },
                    [&mm](double s) {
                        return named_char_exponent(mm, Complex(0.0, -s)).real();
                    }};
                return transform_price(src, mkt, o, opt);
            }
        },
        m);
}

DualityReport duality_check(const TcbmModel& m, const MarketSpec& mkt, double strike,
                            double maturity, const PricerOptions& opt) {
    const OptionSpec call_spec{strike, maturity, OptionKind::call};
    if (auto v = violations(call_spec); !v.empty()) throw ValidationError(v);
    if (auto v = violations(mkt); !v.empty()) throw ValidationError(v);

    const SymmetryReport sym = classify_symmetry(AnyModel{m});
    if (!sym.symmetric)
        throw ValidationError("mu",
                              "normalized drift mu/sigma^2 must be -1/2 for put-call duality");
    const double gap = martingale_gap(m, mkt);
    if (std::abs(gap) > 1e-8)
        throw ValidationError("gamma", "model is not calibrated: martingale gap " +
                                           std::to_string(gap));

    DualityReport rep;
    rep.call_price = price_european(m, mkt, call_spec, opt);

    const LevyTriplet1D dual = dual_triplet(levy_triplet(m), mkt.r, mkt.delta, opt.lk);
    const MarketSpec dual_mkt{mkt.delta, mkt.r, strike};
    const OptionSpec dual_spec{mkt.spot, maturity, OptionKind::put};
    rep.dual_put_price = price_european(dual, dual_mkt, dual_spec, opt);
    rep.residual = std::abs(rep.call_price - rep.dual_put_price);
    return rep;
}

}  // namespace subsym
