#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <subsym/mc.hpp>

#include "oracles.hpp"

using namespace subsym;

namespace {

// mean and standard error of f over draws from one subordinator stream
template <class F>
std::pair<double, double> mc_mean(const SubordinatorSpec& s, double dt, int n,
                                  std::uint64_t seed, F f) {
    auto rng = path_stream(seed, 0);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = f(sample_subordinator_increment(s, dt, rng));
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("path streams are reproducible and decorrelated by index") {
    auto a = path_stream(42, 7);
    auto b = path_stream(42, 7);
    for (int i = 0; i < 5; ++i) CHECK(a() == b());
    auto c = path_stream(42, 8);
    auto d = path_stream(43, 7);
    int same_c = 0, same_d = 0;
    auto e = path_stream(42, 7);
    for (int i = 0; i < 16; ++i) {
        const auto x = e();
        same_c += x == c();
        same_d += x == d();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("stable increments have the frozen one-sided median") {
    // a Gamma(1-alpha)/alpha = sqrt(2) at alpha = 1/2 makes unit-time increments
    // exactly the one-sided 1/2-stable law with unit scale
    const SubordinatorSpec s = StableSubordinator{1.0 / std::sqrt(2.0 * M_PI), 0.5};
    auto rng = path_stream(7, 0);
    std::vector<double> draws(20001);
    for (auto& d : draws) {
        d = sample_subordinator_increment(s, 1.0, rng);
        CHECK(d > 0.0);
    }
    std::nth_element(draws.begin(), draws.begin() + 10000, draws.end());
    CHECK(std::abs(draws[10000] - oracle::kLevyMedian) < 0.15);
}

TEST_CASE("empirical Laplace transform matches the exponent, stable clock") {
    const SubordinatorSpec s = StableSubordinator{0.9, 0.3};
    const double dt = 0.5;
    for (double u : {0.5, 2.0}) {
        const auto [mean, se] =
            mc_mean(s, dt, 40000, 11, [&](double x) { return std::exp(-u * x); });
        const double want = std::exp(dt * laplace_exponent(s, -u).real());
        CHECK(std::abs(mean - want) < 4.0 * se);
        CHECK(se < 5e-3);
    }
}

TEST_CASE("empirical Laplace transform matches the exponent, tempered clock") {
    const SubordinatorSpec s = TemperedStableSubordinator{1.0, 2.0, 0.5};
    const double dt = 0.5;
    for (double u : {0.7, 1.5}) {
        const auto [mean, se] =
            mc_mean(s, dt, 40000, 13, [&](double x) { return std::exp(-u * x); });
        const double want = std::exp(dt * laplace_exponent(s, -u).real());
        CHECK(std::abs(mean - want) < 4.0 * se);
    }
}

TEST_CASE("path skeletons have the promised shape") {
    const TcbmModel m{{-0.5, 1.0}, TemperedStableSubordinator{1.0, 2.0, 0.5}, 0.03};
    const auto paths = simulate_paths(m, 2.0, 4, 3, 99);
    REQUIRE(paths.size() == 3);
    for (const auto& p : paths) {
        REQUIRE(p.times.size() == 5);
        REQUIRE(p.clock.size() == 5);
        REQUIRE(p.y.size() == 5);
        CHECK(p.times[0] == 0.0);
        CHECK(p.times[4] == 2.0);
        CHECK(p.times[2] == 1.0);
        CHECK(p.clock[0] == 0.0);
        CHECK(p.y[0] == 0.0);
        for (int i = 1; i < 5; ++i) CHECK(p.clock[i] > p.clock[i - 1]);
    }
}

TEST_CASE("simulation is deterministic in the seed and streamed identically") {
    const TcbmModel m{{-0.5, 1.0}, StableSubordinator{1.0, 0.5}, 0.0};
    const auto a = simulate_paths(m, 1.0, 3, 4, 5);
    const auto b = simulate_paths(m, 1.0, 3, 4, 5);
    const auto c = simulate_paths(m, 1.0, 3, 4, 6);
    REQUIRE(a.size() == b.size());
    bool all_equal_cross_seed = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].y == b[i].y);
        CHECK(a[i].clock == b[i].clock);
        all_equal_cross_seed = all_equal_cross_seed && a[i].y == c[i].y;
    }
    CHECK(!all_equal_cross_seed);

    std::vector<PathSample> streamed;
    int next_index = 0;
    visit_paths(m, 1.0, 3, 4, 5, [&](int idx, const PathSample& p) {
        CHECK(idx == next_index++);
        streamed.push_back(p);
    });
    REQUIRE(streamed.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(streamed[i].y == a[i].y);
}

TEST_CASE("empirical characteristic function on a handmade sample") {
    PathSample p1{{0.0, 1.0}, {0.0, 0.4}, {0.0, 0.3}};
    PathSample p2{{0.0, 1.0}, {0.0, 0.9}, {0.0, -1.1}};
    const std::vector<PathSample> paths{p1, p2};
    const double z = 1.7;
    const EmpiricalCf e = empirical_cf(paths, z, 1.0);
    CHECK(e.samples == 2);
    const Complex want = 0.5 * (std::exp(Complex(0, z * 0.3)) + std::exp(Complex(0, z * -1.1)));
    CHECK(std::abs(e.estimate - want) < 1e-15);
    // componentwise SE of a two-point sample: |x1 - x2| / 2
    CHECK(e.stderr_re ==
          doctest::Approx(std::abs(std::cos(z * 0.3) - std::cos(z * -1.1)) / 2.0));
    CHECK(e.stderr_im ==
          doctest::Approx(std::abs(std::sin(z * 0.3) - std::sin(z * -1.1)) / 2.0));
    CHECK_THROWS_AS(empirical_cf(paths, z, 0.37), ValidationError);
}

TEST_CASE("simulated characteristic function tracks the exact exponent") {
    const TcbmModel m{{0.1, 1.0}, TemperedStableSubordinator{1.0, 3.0, 0.5}, -0.2};
    const auto paths = simulate_paths(m, 1.0, 2, 5000, 2024);
    const Complex want = std::exp(tcbm_char_exponent(m, 1.0));
    const EmpiricalCf e = empirical_cf(paths, 1.0, 1.0);
    CHECK(e.samples == 5000);
    CHECK(std::abs(e.estimate.real() - want.real()) < 5.0 * e.stderr_re);
    CHECK(std::abs(e.estimate.imag() - want.imag()) < 5.0 * e.stderr_im);
}
