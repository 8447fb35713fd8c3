#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bellvol/geometry.hpp"
#include "bellvol/inequalities.hpp"
#include "bellvol/models.hpp"

namespace bellvol {

/// Result of a Monte Carlo volume-of-violation run. v = violations/samples
/// is the relative volume (probability of violation under random unbiased
/// settings); std_error is the plain binomial estimate sqrt(v(1-v)/N).
struct VolumeEstimate {
  std::uint64_t violations = 0;
  std::uint64_t samples = 0;
  double v = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  std::string scenario;
  std::string model;
};

/// Counts violating configurations over `samples` draws. Sample i uses
/// stream indices [i*k, (i+1)*k) for k free directions, so the result is
/// bit-identical for fixed (seed, samples) at any thread count.
/// threads = 0 means use all available cores.
VolumeEstimate estimate_volume(const CorrelationModel& model,
                               const Scenario& scenario, std::uint64_t samples,
                               std::uint64_t seed, unsigned threads = 0);

struct SweepPoint {
  double lambda = 0.0;
  VolumeEstimate estimate;
};

/// One estimate per lambda. With common_random_numbers the identical
/// config sequence (same seed, same indices) is reused for every lambda,
/// so the curve is smooth in lambda and crossings are well-defined.
std::vector<SweepPoint> sweep_lambda(const std::vector<double>& lambdas,
                                     const Scenario& scenario,
                                     std::uint64_t samples, std::uint64_t seed,
                                     bool common_random_numbers,
                                     unsigned threads = 0);

struct CrossoverResult {
  double lambda_star = 0.0;
  double bracket_width = 0.0;
  std::uint64_t samples_per_eval = 0;
  std::string reference;
};

/// Bisection on d(lambda) = v_family(lambda) - v_reference, with the same
/// config sequence (CRN) reused for every evaluation including the
/// reference; d is then a deterministic function of lambda and bisection
/// is reproducible. Requires a sign change across the bracket.
CrossoverResult find_crossover(
    const std::function<CorrelationModel(double)>& family_parameterizer,
    const CorrelationModel& reference, const Scenario& scenario,
    double lambda_lo, double lambda_hi, std::uint64_t samples,
    std::uint64_t seed, double tol, unsigned threads = 0);

struct MaxViolationResult {
  double value = 0.0;
  std::vector<Direction> config;  // a first, then the free directions
  int iterations = 0;
};

/// Derivative-free search for the largest functional value: random
/// restarts, each hill-climbing by perturbing one free direction at a time
/// inside a spherical cap whose radius shrinks geometrically from pi/2
/// to 1e-4 on non-improving sweeps.
MaxViolationResult search_max_violation(const CorrelationModel& model,
                                        const Scenario& scenario, int restarts,
                                        int iterations, std::uint64_t seed);

}  // namespace bellvol
