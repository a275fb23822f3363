#pragma once

#include <variant>
#include <vector>

#include "subsym/errors.hpp"

namespace subsym {

// Brownian motion with drift, X_t = mu t + sigma W_t.
struct BrownianDrift {
    double mu = 0.0;
    double sigma = 1.0;  // > 0
};

// Increasing stable clock: jump density a x^{-1-alpha} on (0, inf), no drift.
struct StableSubordinator {
    double a = 1.0;      // > 0
    double alpha = 0.5;  // in (0, 1)
};

// Exponentially tempered stable clock: jump density c e^{-lambda x} x^{-1-alpha}.
struct TemperedStableSubordinator {
    double c = 1.0;       // > 0
    double lambda = 1.0;  // > 0
    double alpha = 0.5;   // in (0, 1)
};

using SubordinatorSpec = std::variant<StableSubordinator, TemperedStableSubordinator>;

// Log-price Y_t = gamma t + mu T_t + sigma W(T_t) over a random clock T.
// gamma is the only place martingale corrections live; symmetry never reads it.
struct TcbmModel {
    BrownianDrift bm;
    SubordinatorSpec subordinator = StableSubordinator{};
    double gamma = 0.0;
};

struct CgmyModel {
    double c = 1.0;  // > 0
    double g = 1.0;  // > 0
    double m = 1.0;  // > 0
    double y = 0.5;  // in (0, 1); the finite-variation branch this library supports
};

struct MeixnerModel {
    double a = 1.0;  // > 0
    double b = 0.0;  // |b| < pi
    double d = 1.0;  // > 0
};

using NamedModel = std::variant<CgmyModel, MeixnerModel>;
using AnyModel = std::variant<TcbmModel, CgmyModel, MeixnerModel>;

struct MarketSpec {
    double r = 0.0;      // riskless rate, >= 0
    double delta = 0.0;  // dividend yield, >= 0
    double spot = 1.0;   // > 0
};

std::vector<ConstraintViolation> violations(const BrownianDrift& bm);
std::vector<ConstraintViolation> violations(const StableSubordinator& s);
std::vector<ConstraintViolation> violations(const TemperedStableSubordinator& s);
std::vector<ConstraintViolation> violations(const SubordinatorSpec& s);
std::vector<ConstraintViolation> violations(const TcbmModel& m);
std::vector<ConstraintViolation> violations(const CgmyModel& m);
std::vector<ConstraintViolation> violations(const MeixnerModel& m);
std::vector<ConstraintViolation> violations(const NamedModel& m);
std::vector<ConstraintViolation> violations(const AnyModel& m);
std::vector<ConstraintViolation> violations(const MarketSpec& m);

// Returns the value unchanged when every invariant holds; throws ValidationError
// carrying the full violation list otherwise. Idempotent by construction.
template <class T>
T validate(T value) {
    auto v = violations(value);
    if (!v.empty()) throw ValidationError(std::move(v));
    return value;
}

// Clock jump density rho(x) at x > 0.
double clock_jump_density(const SubordinatorSpec& s, double x);

// Drift of the time-changed Brownian representation implied by a named model:
// (g - m)/2 for cgmy, b/a for meixner. Equals -1/2 exactly on symmetric models.
double madan_yor_drift(const CgmyModel& m);
double madan_yor_drift(const MeixnerModel& m);
double madan_yor_drift(const NamedModel& m);

}  // namespace subsym
