#include "subsym/mc.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace subsym {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Unit positive-stable draw: E e^{-u S} = e^{-u^alpha}.
double kanter_stable(double alpha, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    while (u <= 1e-15 || u >= 1.0 - 1e-15) u = unif(rng);
    std::exponential_distribution<double> expo(1.0);
    const double e = expo(rng);
    const double th = M_PI * u;
    const double la = std::log(std::sin((1.0 - alpha) * th)) +
                      alpha / (1.0 - alpha) * std::log(std::sin(alpha * th)) -
                      1.0 / (1.0 - alpha) * std::log(std::sin(th));
    return std::exp((1.0 - alpha) / alpha * (la - std::log(e)));
}

struct Neumaier {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};

}  // namespace

std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t x = seed;
    std::uint64_t h = splitmix64(x);
    x ^= path_index + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h = splitmix64(x);
    return std::mt19937_64(h);
}

double sample_subordinator_increment(const SubordinatorSpec& s, double dt,
                                     std::mt19937_64& rng) {
    if (!(dt > 0.0)) throw ValidationError("dt", "must be positive");
    return std::visit(
        [&](const auto& sub) -> double {
            using T = std::decay_t<decltype(sub)>;
            const double alpha = sub.alpha;
            if constexpr (std::is_same_v<T, StableSubordinator>) {
                const double c_exp = sub.a * boost::math::tgamma(1.0 - alpha) / alpha;
                return std::pow(dt * c_exp, 1.0 / alpha) * kanter_stable(alpha, rng);
            } else {
                const double c_exp = sub.c * boost::math::tgamma(1.0 - alpha) / alpha;
                const double scale = std::pow(dt * c_exp, 1.0 / alpha);
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                for (int trial = 0; trial < 100000; ++trial) {
                    const double prop = scale * kanter_stable(alpha, rng);
                    if (unif(rng) <= std::exp(-sub.lambda * prop)) return prop;
                }
                throw NumericalError(
                    "sample_subordinator_increment: tempering rejection cap reached");
            }
        },
        s);
}

void visit_paths(const TcbmModel& m, double horizon, int steps, int paths,
                 std::uint64_t seed,
                 const std::function<void(int, const PathSample&)>& visit) {
    std::vector<ConstraintViolation> v = violations(m);
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        v.push_back({"horizon", "must be finite and positive"});
    if (steps < 1) v.push_back({"steps", "must be at least 1"});
    if (paths < 1) v.push_back({"paths", "must be at least 1"});
    if (!v.empty()) throw ValidationError(std::move(v));

    const double dt = horizon / steps;
    PathSample p;
    p.times.resize(steps + 1);
    for (int i = 0; i <= steps; ++i) p.times[i] = horizon * i / steps;
    p.clock.resize(steps + 1);
    p.y.resize(steps + 1);
    for (int pi = 0; pi < paths; ++pi) {
        auto rng = path_stream(seed, static_cast<std::uint64_t>(pi));
        std::normal_distribution<double> normal(0.0, 1.0);
        p.clock[0] = 0.0;
        p.y[0] = 0.0;
        for (int i = 1; i <= steps; ++i) {
            const double dT = sample_subordinator_increment(m.subordinator, dt, rng);
            p.clock[i] = p.clock[i - 1] + dT;
            p.y[i] = p.y[i - 1] + m.gamma * dt + m.bm.mu * dT +
                     m.bm.sigma * std::sqrt(dT) * normal(rng);
        }
        visit(pi, p);
    }
}

std::vector<PathSample> simulate_paths(const TcbmModel& m, double horizon, int steps,
                                       int paths, std::uint64_t seed) {
    std::vector<PathSample> out;
    out.reserve(paths);
    visit_paths(m, horizon, steps, paths, seed,
                [&out](int, const PathSample& p) { out.push_back(p); });
    return out;
}

EmpiricalCf empirical_cf(std::span<const PathSample> paths, double z, double t) {
    if (paths.empty()) throw ValidationError("paths", "must be nonempty");
    const auto& times = paths[0].times;
    std::size_t idx = times.size();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
            idx = i;
            break;
        }
    }
    if (idx == times.size())
        throw ValidationError("t", "must be one of the simulated grid times");

    Neumaier sc, ss, sc2, ss2;
    for (const auto& p : paths) {
        const double y = p.y[idx];
        const double c = std::cos(z * y);
        const double s = std::sin(z * y);
        sc.add(c);
        ss.add(s);
        sc2.add(c * c);
        ss2.add(s * s);
    }
    const double n = static_cast<double>(paths.size());
    EmpiricalCf out;
    out.samples = paths.size();
    const double mc = sc.get() / n;
    const double ms = ss.get() / n;
    out.estimate = {mc, ms};
    if (paths.size() > 1) {
        const double vc = std::max(0.0, (sc2.get() - n * mc * mc) / (n - 1.0));
        const double vs = std::max(0.0, (ss2.get() - n * ms * ms) / (n - 1.0));
        out.stderr_re = std::sqrt(vc / n);
        out.stderr_im = std::sqrt(vs / n);
    }
    return out;
}

}  // namespace subsym
