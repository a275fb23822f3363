#include "subsym/models.hpp"

#include <cmath>
#include <sstream>

namespace subsym {

std::string describe(const std::vector<ConstraintViolation>& violations) {
    std::ostringstream os;
    os << "invalid parameters:";
    for (const auto& v : violations) os << " [" << v.field << ": " << v.constraint << "]";
    return os.str();
}

namespace {

void require_finite(std::vector<ConstraintViolation>& out, double x, const char* field) {
    if (!std::isfinite(x)) out.push_back({field, "must be finite"});
}

void require_positive(std::vector<ConstraintViolation>& out, double x, const char* field) {
    if (!(std::isfinite(x) && x > 0.0)) out.push_back({field, "must be positive"});
}

void require_unit_interval(std::vector<ConstraintViolation>& out, double x, const char* field) {
    if (!(std::isfinite(x) && x > 0.0 && x < 1.0)) out.push_back({field, "must lie in (0, 1)"});
}

// int (x ^ 1) rho(x) dx sampled on a fixed log grid; the clock families satisfy
// this identically, so the check only guards against degenerate evaluations.
void require_integrable_clock(std::vector<ConstraintViolation>& out,
                              const SubordinatorSpec& s) {
    double acc = 0.0;
    for (int i = -120; i <= 40; ++i) {
        const double x = std::exp(0.25 * i);
        const double w = std::min(x, 1.0) * clock_jump_density(s, x) * x;  // log-measure weight
        if (!std::isfinite(w)) {
            out.push_back({"subordinator", "jump density evaluates non-finite"});
            return;
        }
        acc += w;
    }
    if (!std::isfinite(acc))
        out.push_back({"subordinator", "(x ^ 1)-moment of the jump density diverges"});
}

}  // namespace

std::vector<ConstraintViolation> violations(const BrownianDrift& bm) {
    std::vector<ConstraintViolation> out;
    require_finite(out, bm.mu, "mu");
    require_positive(out, bm.sigma, "sigma");
    return out;
}

std::vector<ConstraintViolation> violations(const StableSubordinator& s) {
    std::vector<ConstraintViolation> out;
    require_positive(out, s.a, "a");
    require_unit_interval(out, s.alpha, "alpha");
    if (out.empty()) require_integrable_clock(out, SubordinatorSpec{s});
    return out;
}

std::vector<ConstraintViolation> violations(const TemperedStableSubordinator& s) {
    std::vector<ConstraintViolation> out;
    require_positive(out, s.c, "c");
    require_positive(out, s.lambda, "lambda");
    require_unit_interval(out, s.alpha, "alpha");
    if (out.empty()) require_integrable_clock(out, SubordinatorSpec{s});
    return out;
}

std::vector<ConstraintViolation> violations(const SubordinatorSpec& s) {
    return std::visit([](const auto& v) { return violations(v); }, s);
}

std::vector<ConstraintViolation> violations(const TcbmModel& m) {
    auto out = violations(m.bm);
    auto sub = violations(m.subordinator);
    out.insert(out.end(), sub.begin(), sub.end());
    require_finite(out, m.gamma, "gamma");
    return out;
}

std::vector<ConstraintViolation> violations(const CgmyModel& m) {
    std::vector<ConstraintViolation> out;
    require_positive(out, m.c, "c");
    require_positive(out, m.g, "g");
    require_positive(out, m.m, "m");
    require_unit_interval(out, m.y, "y");
    return out;
}

std::vector<ConstraintViolation> violations(const MeixnerModel& m) {
    std::vector<ConstraintViolation> out;
    require_positive(out, m.a, "a");
    if (!(std::isfinite(m.b) && std::abs(m.b) < 3.14159265358979323846))
        out.push_back({"b", "must satisfy |b| < pi"});
    require_positive(out, m.d, "d");
    return out;
}

std::vector<ConstraintViolation> violations(const NamedModel& m) {
    return std::visit([](const auto& v) { return violations(v); }, m);
}

std::vector<ConstraintViolation> violations(const AnyModel& m) {
    return std::visit([](const auto& v) { return violations(v); }, m);
}

std::vector<ConstraintViolation> violations(const MarketSpec& m) {
    std::vector<ConstraintViolation> out;
    if (!(std::isfinite(m.r) && m.r >= 0.0)) out.push_back({"r", "must be >= 0"});
    if (!(std::isfinite(m.delta) && m.delta >= 0.0)) out.push_back({"delta", "must be >= 0"});
    require_positive(out, m.spot, "spot");
    return out;
}

double clock_jump_density(const SubordinatorSpec& s, double x) {
    if (std::holds_alternative<StableSubordinator>(s)) {
        const auto& v = std::get<StableSubordinator>(s);
        return v.a * std::pow(x, -1.0 - v.alpha);
    }
    const auto& v = std::get<TemperedStableSubordinator>(s);
    return v.c * std::exp(-v.lambda * x) * std::pow(x, -1.0 - v.alpha);
}

double madan_yor_drift(const CgmyModel& m) { return 0.5 * (m.g - m.m); }

double madan_yor_drift(const MeixnerModel& m) { return m.b / m.a; }

double madan_yor_drift(const NamedModel& m) {
    return std::visit([](const auto& v) { return madan_yor_drift(v); }, m);
}

}  // namespace subsym
