#include "bellvol/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace bellvol {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double functional_value(const CorrelationModel& model,
                        const Scenario& scenario, RandomStream& stream) {
  if (scenario.name == ScenarioName::Chsh) {
    return chsh_value(model, sample_chsh_config(stream));
  }
  return i3322_value(model, sample_i3322_config(stream));
}

std::uint64_t count_violations(const CorrelationModel& model,
                               const Scenario& scenario, std::uint64_t first,
                               std::uint64_t last, std::uint64_t seed) {
  const auto k = static_cast<std::uint64_t>(scenario.free_directions);
  std::uint64_t count = 0;
  for (std::uint64_t i = first; i < last; ++i) {
    RandomStream stream{seed, i * k};
    if (violates(scenario, functional_value(model, scenario, stream))) {
      ++count;
    }
  }
  return count;
}

}  // namespace

VolumeEstimate estimate_volume(const CorrelationModel& model,
                               const Scenario& scenario, std::uint64_t samples,
                               std::uint64_t seed, unsigned threads) {
  if (samples == 0) {
    throw std::invalid_argument("estimate_volume: samples must be >= 1");
  }
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, samples));

  std::uint64_t total = 0;
  if (threads == 1) {
    total = count_violations(model, scenario, 0, samples, seed);
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = samples / threads;
    const std::uint64_t rem = samples % threads;
    std::uint64_t begin = 0;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t end = begin + chunk + (t < rem ? 1 : 0);
      pool.emplace_back([&, t, begin, end] {
        partial[t] = count_violations(model, scenario, begin, end, seed);
      });
      begin = end;
    }
    for (auto& th : pool) th.join();
    for (const auto c : partial) total += c;
  }

  VolumeEstimate est;
  est.violations = total;
  est.samples = samples;
  est.v = static_cast<double>(total) / static_cast<double>(samples);
  est.std_error =
      std::sqrt(est.v * (1.0 - est.v) / static_cast<double>(samples));
  est.seed = seed;
  est.scenario = scenario.label();
  est.model = model.label();
  return est;
}

std::vector<SweepPoint> sweep_lambda(const std::vector<double>& lambdas,
                                     const Scenario& scenario,
                                     std::uint64_t samples, std::uint64_t seed,
                                     bool common_random_numbers,
                                     unsigned threads) {
  std::vector<SweepPoint> points;
  points.reserve(lambdas.size());
  std::uint64_t point_seed = seed;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    if (!common_random_numbers) {
      // independent draws per grid point: decorrelate the seeds
      point_seed = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
    }
    points.push_back({lambda, estimate_volume(lambda_box_model(lambda),
                                              scenario, samples, point_seed,
                                              threads)});
  }
  return points;
}

CrossoverResult find_crossover(
    const std::function<CorrelationModel(double)>& family_parameterizer,
    const CorrelationModel& reference, const Scenario& scenario,
    double lambda_lo, double lambda_hi, std::uint64_t samples,
    std::uint64_t seed, double tol, unsigned threads) {
  if (tol <= 0.0) {
    throw std::invalid_argument("find_crossover: tol must be positive");
  }
  if (!(lambda_lo < lambda_hi)) {
    throw std::invalid_argument("find_crossover: empty bracket");
  }

  const double v_ref =
      estimate_volume(reference, scenario, samples, seed, threads).v;
  const auto diff = [&](double lambda) {
    return estimate_volume(family_parameterizer(lambda), scenario, samples,
                           seed, threads)
               .v -
           v_ref;
  };

  double lo = lambda_lo;
  double hi = lambda_hi;
  double d_lo = diff(lo);
  double d_hi = diff(hi);
  if (d_lo == 0.0) hi = lo;
  if (d_hi == 0.0) lo = hi;
  if (lo < hi && d_lo * d_hi > 0.0) {
    throw std::runtime_error(
        "find_crossover: no sign change of v_family - v_reference across the "
        "bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double d_mid = diff(mid);
    if (d_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((d_mid < 0.0) == (d_lo < 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }

  CrossoverResult result;
  result.lambda_star = 0.5 * (lo + hi);
  result.bracket_width = hi - lo;
  result.samples_per_eval = samples;
  result.reference = reference.label();
  return result;
}

namespace {

// Uniform direction in the spherical cap of angular radius `radius`
// around `center`.
Direction perturb_in_cap(const Direction& center, double radius,
                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double cos_t = 1.0 - unit(rng) * (1.0 - std::cos(radius));
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const double phi = kTwoPi * unit(rng);

  // orthonormal frame around center
  Direction e1;
  if (std::abs(center.z) < 0.9) {
    e1 = Direction{-center.y, center.x, 0.0};
  } else {
    e1 = Direction{0.0, -center.z, center.y};
  }
  const double n1 = norm(e1);
  e1 = Direction{e1.x / n1, e1.y / n1, e1.z / n1};
  const Direction e2{center.y * e1.z - center.z * e1.y,
                     center.z * e1.x - center.x * e1.z,
                     center.x * e1.y - center.y * e1.x};

  Direction d{
      center.x * cos_t + sin_t * (e1.x * std::cos(phi) + e2.x * std::sin(phi)),
      center.y * cos_t + sin_t * (e1.y * std::cos(phi) + e2.y * std::sin(phi)),
      center.z * cos_t + sin_t * (e1.z * std::cos(phi) + e2.z * std::sin(phi))};
  const double n = norm(d);
  return Direction{d.x / n, d.y / n, d.z / n};
}

double eval_free(const CorrelationModel& model, const Scenario& scenario,
                 const std::vector<Direction>& free_dirs) {
  static const Direction z{0.0, 0.0, 1.0};
  if (scenario.name == ScenarioName::Chsh) {
    return chsh_value(model,
                      ChshConfig{z, free_dirs[0], free_dirs[1], free_dirs[2]});
  }
  return i3322_value(model, I3322Config{z, free_dirs[0], free_dirs[1],
                                        free_dirs[2], free_dirs[3],
                                        free_dirs[4]});
}

Direction random_direction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = 2.0 * unit(rng) - 1.0;
  const double phi = kTwoPi * unit(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  return Direction{s * std::cos(phi), s * std::sin(phi), u};
}

}  // namespace

MaxViolationResult search_max_violation(const CorrelationModel& model,
                                        const Scenario& scenario, int restarts,
                                        int iterations, std::uint64_t seed) {
  if (restarts < 1 || iterations < 1) {
    throw std::invalid_argument(
        "search_max_violation: restarts and iterations must be >= 1");
  }
  constexpr double kRadiusStart = kPi / 2.0;
  constexpr double kRadiusStop = 1e-4;
  constexpr double kRadiusShrink = 0.95;
  const auto n_free = static_cast<std::size_t>(scenario.free_directions);

  MaxViolationResult best;
  best.value = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (r + 1));
    std::vector<Direction> dirs(n_free);
    for (auto& d : dirs) d = random_direction(rng);
    double current = eval_free(model, scenario, dirs);

    double radius = kRadiusStart;
    int sweeps = 0;
    for (int it = 0; it < iterations && radius >= kRadiusStop; ++it) {
      bool improved = false;
      for (std::size_t j = 0; j < n_free; ++j) {
        const Direction saved = dirs[j];
        dirs[j] = perturb_in_cap(saved, radius, rng);
        const double trial = eval_free(model, scenario, dirs);
        if (trial > current) {
          current = trial;
          improved = true;
        } else {
          dirs[j] = saved;
        }
      }
      if (!improved) radius *= kRadiusShrink;
      ++sweeps;
    }

    if (current > best.value) {
      best.value = current;
      best.config.clear();
      best.config.push_back(Direction{0.0, 0.0, 1.0});
      best.config.insert(best.config.end(), dirs.begin(), dirs.end());
      best.iterations = sweeps;
    }
  }
  return best;
}

}  // namespace bellvol
