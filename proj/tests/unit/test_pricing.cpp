#include <doctest.h>

#include <cmath>
#include <subsym/pricing.hpp>

#include "oracles.hpp"

using namespace subsym;
using oracle::rel_err;

namespace {

const MarketSpec kMkt{0.05, 0.02, 100.0};
const TcbmModel kRef{{-0.5, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5},
                     oracle::kRefGamma};

double parity_gap(const AnyModel& m, const MarketSpec& mkt, double strike, double T,
                  double forward_factor) {
    const double c = price_european(m, mkt, {strike, T, OptionKind::call});
    const double p = price_european(m, mkt, {strike, T, OptionKind::put});
    return (c - p) - std::exp(-mkt.r * T) * (mkt.spot * forward_factor - strike);
}

}  // namespace

TEST_CASE("martingale gap and calibration") {
    // mu = 0 leaves the exponential moment at l(1/2); gap value frozen from
    // Gamma(-1/2)(sqrt(3/2) - sqrt(2)) under r = delta
    const TcbmModel m0{{0.0, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5}, 0.0};
    CHECK(rel_err(martingale_gap(m0, {0.03, 0.03, 100.0}), oracle::kGapMuZero) < 1e-13);

    const TcbmModel un{{-0.5, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5}, 0.0};
    CHECK(martingale_gap(un, kMkt) == doctest::Approx(-0.03).epsilon(1e-12));
    const TcbmModel cal = calibrate_drift(un, kMkt);
    CHECK(cal.gamma == doctest::Approx(oracle::kRefGamma).epsilon(1e-15));
    CHECK(std::abs(martingale_gap(cal, kMkt)) < 1e-15);
    CHECK(cal.bm.mu == un.bm.mu);
    CHECK(std::abs(cumulant(cal, 1.0) - (kMkt.r - kMkt.delta)) < 1e-15);

    // stable clock with mu + sigma^2/2 > 0 has no exponential moment at 1
    const TcbmModel ns{{0.0, 1.0}, StableSubordinator{1.0, 0.5}, 0.0};
    CHECK_THROWS_AS(martingale_gap(ns, kMkt), NumericalError);
    CHECK_THROWS_AS(calibrate_drift(ns, kMkt), NumericalError);
}

TEST_CASE("transform prices hit the reference values") {
    CHECK(std::abs(price_european(kRef, kMkt, {110.0, 1.0, OptionKind::call}) -
                   oracle::kRefCall110) < 1e-6);
    CHECK(std::abs(price_european(kRef, kMkt, {110.0, 1.0, OptionKind::put}) -
                   oracle::kRefPut110) < 1e-6);
}

TEST_CASE("at the forward of a symmetric market, call equals put") {
    const MarketSpec flat{0.03, 0.03, 100.0};
    const TcbmModel m = calibrate_drift(kRef, flat);
    const double c = price_european(m, flat, {100.0, 1.0, OptionKind::call});
    const double p = price_european(m, flat, {100.0, 1.0, OptionKind::put});
    CHECK(std::abs(c - p) < 2e-6);
    CHECK(rel_err(c, oracle::kRefAtmForward) < 1e-9);
}

TEST_CASE("put-call parity away from the reference maturity") {
    // calibrated model: C - P = S0 e^{-delta T} - K e^{-r T} at every T
    for (double T : {0.4, 1.6})
        CHECK(std::abs(parity_gap(AnyModel{kRef}, kMkt, 123.4, T,
                                  std::exp((kMkt.r - kMkt.delta) * T))) < 2e-6);
}

TEST_CASE("generalized parity holds for uncalibrated named models") {
    // C - P = e^{-rT}(S0 e^{T kappa(1)} - K) with kappa(1) = Re psi(-i)
    const CgmyModel cgmy{1, 2, 3, 0.5};
    const double k1 = named_char_exponent(cgmy, Complex{0.0, -1.0}).real();
    CHECK(std::abs(parity_gap(AnyModel{cgmy}, kMkt, 95.0, 1.0, std::exp(k1))) < 2e-6);
    const MeixnerModel mx{2, -1, 0.8};
    const double k1m = named_char_exponent(mx, Complex{0.0, -1.0}).real();
    CHECK(std::abs(parity_gap(AnyModel{mx}, kMkt, 105.0, 0.5, std::exp(0.5 * k1m))) < 2e-6);
}

TEST_CASE("option and market parameters are validated") {
    CHECK(violations(OptionSpec{100.0, 1.0, OptionKind::call}).empty());
    CHECK(!violations(OptionSpec{-1.0, 1.0, OptionKind::call}).empty());
    CHECK(!violations(OptionSpec{100.0, 0.0, OptionKind::put}).empty());
    CHECK_THROWS_AS(price_european(kRef, MarketSpec{0.05, 0.02, -3.0},
                                   {110.0, 1.0, OptionKind::call}),
                    ValidationError);
    CHECK_THROWS_AS(price_european(kRef, kMkt, {0.0, 1.0, OptionKind::call}),
                    ValidationError);
}

TEST_CASE("symmetric stable models have an empty call strip") {
    // every damping q > 0 puts mu q + sigma^2 q^2/2 + q(q+1)/2 cross-terms on the
    // wrong side of the stable Laplace domain, so the damped transform must refuse
    const TcbmModel m{{-0.5, 1.0}, StableSubordinator{1.0, 0.5}, 0.0};
    CHECK_THROWS_AS(price_european(m, kMkt, {110.0, 1.0, OptionKind::call}),
                    NumericalError);
}

TEST_CASE("variant dispatch prices match the direct overload") {
    const double direct = price_european(kRef, kMkt, {110.0, 1.0, OptionKind::call});
    const double via_variant =
        price_european(AnyModel{kRef}, kMkt, {110.0, 1.0, OptionKind::call});
    CHECK(direct == via_variant);
}

TEST_CASE("duality requires a calibrated symmetric model") {
    const TcbmModel skew{{-0.25, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5}, 0.0};
    CHECK_THROWS_AS(duality_check(skew, kMkt, 110.0, 1.0), ValidationError);
    const TcbmModel uncal{{-0.5, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5}, 0.0};
    CHECK_THROWS_AS(duality_check(uncal, kMkt, 110.0, 1.0), ValidationError);
}

TEST_CASE("dual-market put reproduces the primal call") {
    const DualityReport rep = duality_check(kRef, kMkt, 110.0, 1.0);
    CHECK(rep.residual < 1e-4 * rep.call_price);
    CHECK(std::abs(rep.call_price - oracle::kRefCall110) < 1e-6);
    CHECK(rep.residual == std::abs(rep.call_price - rep.dual_put_price));
}
