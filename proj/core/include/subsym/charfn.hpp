#pragma once

#include <complex>
#include <functional>

#include "subsym/models.hpp"

namespace subsym {

using Complex = std::complex<double>;

// psi(z) = i mu z - sigma^2 z^2 / 2, entire in z.
Complex bm_char_exponent(const BrownianDrift& bm, Complex z);

// Per-unit-time Laplace exponent l with E exp(w T_t) = exp(t l(w)).
// Stable clocks require Re w <= 0, tempered clocks Re w < lambda; outside the
// domain a NumericalError is thrown. Principal branch throughout.
Complex laplace_exponent(const SubordinatorSpec& s, Complex w);

// Supremum of admissible real arguments: 0 for stable (attained), lambda for
// tempered (not attained).
double laplace_domain_bound(const SubordinatorSpec& s);

// Exponent of Y_t = gamma t + mu T_t + sigma W(T_t):
//   psi_Y(z) = i gamma z + l(psi_bm(z)),  E exp(i z Y_t) = exp(t psi_Y(z)).
Complex tcbm_char_exponent(const TcbmModel& m, Complex z);

// Closed-form exponents of the named families (same exp(t psi) convention).
Complex named_char_exponent(const CgmyModel& m, Complex z);
Complex named_char_exponent(const MeixnerModel& m, Complex z);
Complex named_char_exponent(const NamedModel& m, Complex z);

Complex char_exponent(const AnyModel& m, Complex z);

// kappa(s) = log E exp(s Y_1) = gamma s + l(mu s + sigma^2 s^2 / 2), real s.
double cumulant(const TcbmModel& m, double s);

// Two-sided jump density evaluated away from the origin.
struct LevyDensity1D {
    std::function<double(double)> eval;
    double operator()(double x) const { return eval(x); }
};

// Characteristic triplet (b, sigma2, nu) with truncation function y 1_{|y|<=1}.
struct LevyTriplet1D {
    double b = 0.0;
    double sigma2 = 0.0;
    LevyDensity1D nu;
};

struct LkOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double small_jump_cut = 1e-3;  // |y| below this uses the y^2-moment expansion
    double tail_start = 16.0;      // initial truncation radius for the jump tails
    double max_radius = 1e6;       // truncation search gives up past this radius
};

// Numerical Levy-Khintchine exponent
//   psi(z) = i b z - sigma2 z^2/2 + int (e^{izy} - 1 - i z y 1_{|y|<=1}) nu(y) dy.
// Supports complex z whenever the tilted tails e^{-Im(z) y} nu(y) stay
// integrable; throws NumericalError when truncation or quadrature fails.
Complex levy_khintchine_exponent(const LevyTriplet1D& t, Complex z, const LkOptions& opt = {});

// log E exp(s X_1) = b s + sigma2 s^2/2 + int (e^{sy} - 1 - s y 1_{|y|<=1}) nu(y) dy.
double triplet_cumulant(const LevyTriplet1D& t, double s, const LkOptions& opt = {});

// Numeric spot check that (y^2 ^ 1) nu(y) has finite integral.
std::vector<ConstraintViolation> violations(const LevyTriplet1D& t);

}  // namespace subsym
