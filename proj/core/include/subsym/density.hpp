#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "subsym/charfn.hpp"
#include "subsym/models.hpp"

namespace subsym {

struct SatoOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
};

// Jump density of the subordinated process,
//   nu(x) = int_0^inf (2 pi s sigma^2)^{-1/2} exp(-(x - mu s)^2 / (2 s sigma^2)) rho(s) ds,
// evaluated by adaptive quadrature in log clock time.
double subordinated_levy_density(const TcbmModel& m, double x, const SatoOptions& opt = {});

// Even factor f with nu(x) = exp(normalized_drift(m) * x) f(x), f(x) = f(-x).
double even_factor(const TcbmModel& m, double x, const SatoOptions& opt = {});

// Exponential tilt of the two-sided jump density: mu / sigma^2. This is the
// drift of the unit-volatility representation of the same process and the
// quantity the -1/2 symmetry criterion applies to.
double normalized_drift(const TcbmModel& m);

LevyDensity1D levy_density(const TcbmModel& m, const SatoOptions& opt = {});
LevyDensity1D levy_density(const CgmyModel& m);   // closed form
LevyDensity1D levy_density(const MeixnerModel& m);  // closed form
LevyDensity1D levy_density(const AnyModel& m, const SatoOptions& opt = {});

enum class SymmetryCriterion { density_grid, drift_half, cgmy_gm, meixner_2ba };
std::string_view to_string(SymmetryCriterion c);

struct SymmetryReport {
    bool symmetric = false;
    // worst grid point of |nu(x) - e^{-x} nu(-x)|, checked in both directions
    double sup_residual = 0.0;
    // max(nu(x), e^{-x} nu(-x), floor) at that point; symmetric for the
    // density_grid criterion means sup_residual / scale < tolerance
    double scale = 0.0;
    SymmetryCriterion criterion_used = SymmetryCriterion::density_grid;
    std::optional<double> drift;             // tcbm only: mu as stored
    std::optional<double> normalized_drift;  // tcbm only: mu / sigma^2
};

// 20 log-spaced points in [0.05, 5].
std::vector<double> default_symmetry_grid();

// Evaluates the grid residual of nu(dx) = e^{-x} nu(-dx). Point evaluations are
// independent, so the result does not depend on grid order.
SymmetryReport symmetry_residual(const LevyDensity1D& nu, std::span<const double> grid,
                                 double tolerance = 1e-6, double floor = 1e-300);

// tcbm: exact drift test on normalized_drift == -1/2 plus a density-grid
// confirmation; named models: exact parameter criterion (g-m = -1, 2b+a = 0)
// plus a closed-form density confirmation.
SymmetryReport classify_symmetry(const AnyModel& m, const SatoOptions& opt = {});

// Characteristic triplet of the subordinated model: no Gaussian part, nu from
// the clock-time integral, b = gamma + int_0^inf E[X_s 1_{|X_s|<=1}] rho(s) ds.
LevyTriplet1D levy_triplet(const TcbmModel& m, const SatoOptions& opt = {});

// Dual-market triplet: nu~(x) = e^{-x} nu(-x), same Gaussian part, drift chosen
// so the dual discounted process is a martingale under swapped rates.
LevyTriplet1D dual_triplet(const LevyTriplet1D& t, double r, double delta,
                           const LkOptions& opt = {});

struct CmOptions {
    int order = 6;            // highest forward-difference order checked, <= 8
    double grid_step = 1e-3;  // step of the u-grid in (0, 1)
    SatoOptions quadrature;
};

struct CmReport {
    bool passes = false;
    // condition 3 failure: (difference order k, leftmost grid point of the window)
    std::optional<std::pair<int, double>> first_failure;
    bool condition2_ok = false;
    double condition2_residual = 0.0;  // sup relative residual of nu(x)e^{-mu x} = nu(-x)e^{mu x}
};

// Checks the two testable representability conditions: the reflection identity
// nu(x) e^{-mu x} = nu(-x) e^{mu x} and complete monotonicity of
// g(u) = nu(sqrt(u)) e^{-mu sqrt(u)} on (0,1) via alternating forward
// differences, (-1)^k D^k g >= -tol_k with tol_k = 1e-8 k! scale.
// Throws NumericalError when difference order k would amplify quadrature noise
// above tol_k (conditioning failure).
CmReport complete_monotonicity_check(const TcbmModel& m, const CmOptions& opt = {});

}  // namespace subsym
