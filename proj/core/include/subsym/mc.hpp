#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "subsym/charfn.hpp"
#include "subsym/models.hpp"

namespace subsym {

struct PathSample {
    std::vector<double> times;  // 0 = t_0 < ... < t_n, uniform grid
    std::vector<double> clock;  // T_{t_i}, nondecreasing from 0
    std::vector<double> y;      // Y_{t_i}, y[0] = 0
};

// Stream for one path: a generator seeded by a splitmix64 hash of (seed, path
// index). Paths are reproducible independently of scheduling or worker count.
std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t path_index);

// One exact clock increment over dt.
// Stable: Kanter's representation S = (A(pi U)/E)^{(1-alpha)/alpha} with
//   A(t) = sin((1-alpha) t) sin(alpha t)^{alpha/(1-alpha)} / sin(t)^{1/(1-alpha)},
// scaled by (dt a Gamma(1-alpha)/alpha)^{1/alpha} so E e^{-u inc} = e^{dt l(-u)}.
// Tempered: stable proposal with scale c, accepted with probability e^{-lambda s}
// (exact exponential tilting); throws NumericalError if the rejection cap hits.
double sample_subordinator_increment(const SubordinatorSpec& s, double dt,
                                     std::mt19937_64& rng);

// Exact-in-law skeleton on a uniform grid: clock increments as above, then
// Y increment = gamma dt + mu dT + sigma sqrt(dT) N(0,1).
std::vector<PathSample> simulate_paths(const TcbmModel& m, double horizon, int steps,
                                       int paths, std::uint64_t seed);

// Same sampling contract, one path at a time (keeps memory flat for large runs).
void visit_paths(const TcbmModel& m, double horizon, int steps, int paths,
                 std::uint64_t seed,
                 const std::function<void(int, const PathSample&)>& visit);

struct EmpiricalCf {
    Complex estimate;      // sample mean of e^{i z Y_t}
    double stderr_re = 0;  // componentwise standard errors of that mean
    double stderr_im = 0;
    std::size_t samples = 0;
};

// t must be a grid time of the supplied paths. Accumulation is compensated and
// runs in fixed path order, so results are bit-stable across runs.
EmpiricalCf empirical_cf(std::span<const PathSample> paths, double z, double t);

}  // namespace subsym
