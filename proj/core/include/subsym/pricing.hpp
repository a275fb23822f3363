#pragma once

#include "subsym/charfn.hpp"
#include "subsym/density.hpp"
#include "subsym/models.hpp"

namespace subsym {

enum class OptionKind { call, put };

struct OptionSpec {
    double strike = 1.0;    // > 0
    double maturity = 1.0;  // > 0
    OptionKind kind = OptionKind::call;
};

std::vector<ConstraintViolation> violations(const OptionSpec& o);

// kappa(1) - (r - delta), the defect of E e^{-(r-delta)t + Y_t} = 1.
// Throws NumericalError when mu + sigma^2/2 lies outside the Laplace domain
// (the model has no exponential moment to calibrate).
double martingale_gap(const TcbmModel& m, const MarketSpec& mkt);

// gamma <- (r - delta) - l(mu + sigma^2/2); leaves mu, sigma, clock untouched,
// so symmetry classification is invariant under calibration.
TcbmModel calibrate_drift(TcbmModel m, const MarketSpec& mkt);

struct PricerOptions {
    // call damping; puts use the mirrored value -(1 + damping). Auto-shrunk
    // when the moment strip of the model is too narrow for the default.
    double damping = 0.75;
    std::size_t grid_points = 4096;  // Simpson panels on the frequency grid
    double cf_cutoff = 1e-12;        // truncate where |exp(T psi)| falls below this
    // exponent tolerances for triplet pricing; looser than the bare
    // Levy-Khintchine defaults because transform accuracy is capped by the
    // frequency grid target, and a resampled density cannot meet 1e-10.
    LkOptions lk{1e-7, 1e-6, 1e-3, 16.0, 1e6};
};

// Damped-transform European price under the calibrated exponent of the model.
double price_european(const TcbmModel& m, const MarketSpec& mkt, const OptionSpec& o,
                      const PricerOptions& opt = {});

// Same transform, but the exponent is the numerical Levy-Khintchine exponent of
// an explicit triplet (used to price on dual triplets).
double price_european(const LevyTriplet1D& t, const MarketSpec& mkt, const OptionSpec& o,
                      const PricerOptions& opt = {});

double price_european(const AnyModel& m, const MarketSpec& mkt, const OptionSpec& o,
                      const PricerOptions& opt = {});

struct DualityReport {
    double call_price = 0.0;      // call(spot, strike, r, delta), primal model
    double dual_put_price = 0.0;  // put(strike as spot, spot as strike, delta, r), dual triplet
    double residual = 0.0;        // |call - dual put|
};

// Prices the call in the primal market and the mirrored put on the dual
// triplet. Requires a calibrated symmetric model; ValidationError otherwise.
DualityReport duality_check(const TcbmModel& m, const MarketSpec& mkt, double strike,
                            double maturity, const PricerOptions& opt = {});

}  // namespace subsym
