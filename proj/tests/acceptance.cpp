// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Runs at desk scale on a single core.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "bellvol/estimation.hpp"
#include "bellvol/geometry.hpp"
#include "bellvol/inequalities.hpp"
#include "bellvol/models.hpp"

using namespace bellvol;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// fold an angle difference into [0, pi]
double fold(double x) {
  x = std::fmod(x, kTwoPi);
  if (x < 0) x += kTwoPi;
  return x > kPi ? kTwoPi - x : x;
}

// Coplanar CHSH violating fraction by dense midpoint-rule quadrature over
// the three free polar angles. Independent of the sampling pipeline.
double coplanar_grid_fraction(const CorrelationModel& model, int n) {
  const double h = kTwoPi / n;
  // a sits at polar angle 0; precompute E over index differences
  std::vector<double> e_diff(n);
  std::vector<double> e_from_a(n);
  for (int m = 0; m < n; ++m) {
    e_diff[m] = model.eval(fold(m * h));
    e_from_a[m] = model.eval(fold((m + 0.5) * h));
  }
  std::uint64_t count = 0;
  for (int i = 0; i < n; ++i) {        // alpha_b
    for (int j = 0; j < n; ++j) {      // alpha_a'
      const double e_apb = e_diff[(j - i + n) % n];
      const double partial = e_from_a[i] + e_apb;
      for (int k = 0; k < n; ++k) {    // alpha_b'
        const double s =
            partial + e_from_a[k] - e_diff[(j - k + n) % n];
        if (std::abs(s) > 2.0) ++count;
      }
    }
  }
  return static_cast<double>(count) /
         (static_cast<double>(n) * n * n);
}

// Coplanar CHSH violating fraction by Monte Carlo with the library's
// stream, one sample = three polar angles.
double coplanar_mc_fraction(const CorrelationModel& model, std::uint64_t n,
                            std::uint64_t seed, double* std_error) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double ab = kTwoPi * stream_uniform(seed, 3 * i);
    const double aaP = kTwoPi * stream_uniform(seed, 3 * i + 1);
    const double abP = kTwoPi * stream_uniform(seed, 3 * i + 2);
    const ChshConfig cfg = coplanar_chsh_config(0.0, ab, aaP, abP);
    if (violates(Scenario::chsh(), chsh_value(model, cfg))) ++count;
  }
  const double v = static_cast<double>(count) / n;
  *std_error = std::sqrt(v * (1 - v) / n);
  return v;
}

// Branch-form oracles for criterion 10.
double pr_branches(double t) {
  if (t < kPi / 6) return 1.0;
  if (t < kPi / 4) return -24.0 / kPi * t + 5.0;
  if (t < kPi / 3) return -1.0;
  if (t < 2 * kPi / 3) return 6.0 / kPi * t - 3.0;
  if (t < 3 * kPi / 4) return 1.0;
  if (t < 5 * kPi / 6) return -24.0 / kPi * t + 19.0;
  return -1.0;
}

double lambda_branches(double t, double l) {
  if (t < kPi / 18) return 1.0;
  if (t < kPi / 6) return -18.0 / kPi * t + 2.0;
  if (t < l) return -1.0;
  if (t < l + kPi / 18) return 18.0 / kPi * (t - l) - 1.0;
  if (t < 17 * kPi / 18 - l) return 0.0;
  if (t < kPi - l) return 18.0 / kPi * (t + l) - 17.0;
  if (t < 5 * kPi / 6) return 1.0;
  if (t < 17 * kPi / 18) return -18.0 / kPi * t + 16.0;
  return -1.0;
}

}  // namespace

int main() {
  const auto chsh = Scenario::chsh();
  const auto i3322 = Scenario::i3322();
  const auto singlet = singlet_model();
  const auto pr = pr_box_model();
  const auto family = [](double l) { return lambda_box_model(l); };

  // 1. singlet CHSH volume vs (pi-3)/2
  {
    const auto est = estimate_volume(singlet, chsh, 1000000, 1);
    const double target = (kPi - 3.0) / 2.0;
    const bool ok = std::abs(est.v - target) <= 3.0 * est.std_error;
    report(1, ok,
           "singlet CHSH volume v=" + fmt(est.v) + " vs (pi-3)/2=" +
               fmt(target) + " (3*stderr=" + fmt(3 * est.std_error) + ")");
  }

  // 2. PR-box CHSH volume
  {
    const auto est = estimate_volume(pr, chsh, 1000000, 1);
    const double tol = 3.0 * est.std_error + 0.001;
    const bool ok = std::abs(est.v - 0.180717) <= tol;
    report(2, ok, "pr-box CHSH volume v=" + fmt(est.v) +
                      " vs 0.180717 (tol=" + fmt(tol) + ")");
  }

  // 3. 3322 volumes
  VolumeEstimate pr3322;
  {
    const auto est_s = estimate_volume(singlet, i3322, 10000000, 1);
    const double tol_s = 3.0 * est_s.std_error + 2e-4;
    const bool ok_s = std::abs(est_s.v - 2.17e-3) <= tol_s;
    pr3322 = estimate_volume(pr, i3322, 1000000, 1);
    const double tol_p = 3.0 * pr3322.std_error + 1e-3;
    const bool ok_p = std::abs(pr3322.v - 2.69e-2) <= tol_p;
    report(3, ok_s && ok_p,
           "3322 volumes: singlet v=" + fmt(est_s.v) + " vs 2.17e-3 (tol=" +
               fmt(tol_s) + "), pr v=" + fmt(pr3322.v) +
               " vs 2.69e-2 (tol=" + fmt(tol_p) + ")");
  }

  // 4. crossovers, CRN bisection
  {
    const double tol = 0.01;
    const auto c1 = find_crossover(family, singlet, chsh, kLambdaMin,
                                   kLambdaMax, 1000000, 1, tol);
    const auto c2 = find_crossover(family, pr, chsh, kLambdaMin, kLambdaMax,
                                   1000000, 1, tol);
    const auto c3 = find_crossover(family, singlet, i3322, kLambdaMin,
                                   kLambdaMax, 10000000, 1, tol);
    const auto c4 = find_crossover(family, pr, i3322, kLambdaMin, kLambdaMax,
                                   1000000, 1, tol);
    const bool ok = std::abs(c1.lambda_star - 0.934) <= 0.02 &&
                    std::abs(c2.lambda_star - 1.225) <= 0.02 &&
                    std::abs(c3.lambda_star - 0.788) <= 0.02 &&
                    std::abs(c4.lambda_star - 1.154) <= 0.02;
    report(4, ok,
           "crossovers: chsh/singlet=" + fmt(c1.lambda_star) +
               " (0.934), chsh/pr=" + fmt(c2.lambda_star) +
               " (1.225), 3322/singlet=" + fmt(c3.lambda_star) +
               " (0.788), 3322/pr=" + fmt(c4.lambda_star) + " (1.154)");
  }

  // 5. maxima
  {
    bool saturates = true;
    const auto cfg = coplanar_chsh_config(kPi / 18, kPi / 9, kPi / 6, 0.0);
    for (int i = 0; i < 20; ++i) {
      const double l = kLambdaMin + (kLambdaMax - kLambdaMin) * i / 19.0;
      if (std::abs(chsh_value(lambda_box_model(l), cfg) - 4.0) > 1e-12) {
        saturates = false;
      }
    }
    const auto s_max = search_max_violation(singlet, chsh, 50, 2000, 1);
    const bool ok_s = std::abs(s_max.value - 2.0 * std::sqrt(2.0)) <= 1e-3;
    const auto l_max =
        search_max_violation(lambda_box_model(kLambdaMax), i3322, 200, 5000, 1);
    const bool ok_l = std::abs(l_max.value - 8.0) <= 0.05;
    report(5, saturates && ok_s && ok_l,
           "maxima: lambda-box S=4 at pi/18 config (" +
               std::string(saturates ? "all 20" : "violated") +
               "), singlet chsh max=" + fmt(s_max.value) +
               " (2.828427), lambda-box 3322 max=" + fmt(l_max.value) +
               " (8.0)");
  }

  // 6. ordering at the right edge
  {
    const auto edge_chsh =
        estimate_volume(lambda_box_model(kLambdaMax), chsh, 1000000, 1);
    const auto edge_3322 =
        estimate_volume(lambda_box_model(kLambdaMax), i3322, 1000000, 1);
    const double ratio = edge_3322.v / pr3322.v;
    const bool ok = edge_chsh.v > 0.180717 && edge_3322.v > pr3322.v &&
                    ratio >= 1.7 && ratio <= 2.3;
    report(6, ok,
           "right edge: chsh v=" + fmt(edge_chsh.v) + " > 0.180717, 3322 v=" +
               fmt(edge_3322.v) + " / v_pr=" + fmt(pr3322.v) + " ratio=" +
               fmt(ratio) + " in [1.7, 2.3]");
  }

  // 7. nonsignaling property suite
  {
    std::vector<CorrelationModel> models{singlet, pr};
    for (int j = 0; j < 8; ++j) {
      models.push_back(
          lambda_box_model(kLambdaMin + (kLambdaMax - kLambdaMin) * j / 7.0));
    }
    bool ok = true;
    for (const auto& m : models) {
      for (std::uint64_t i = 0; i < 1000; ++i) {
        const double t = kPi * stream_uniform(71, i);
        const auto jp = joint_outcome_probabilities(m, t);
        if (jp.pp + jp.pm != 0.5 || jp.mm + jp.mp != 0.5 ||
            jp.pp + jp.mp != 0.5 || jp.mm + jp.pm != 0.5 ||
            std::abs(jp.pp + jp.mm + jp.pm + jp.mp - 1.0) > 1e-15) {
          ok = false;
        }
      }
    }
    report(7, ok,
           "nonsignaling: marginals exactly 1/2 and unit total for 10 models "
           "x 1000 random angles");
  }

  // 8. coplanar grid oracle vs coplanar MC
  {
    bool ok = true;
    std::string detail = "coplanar oracle:";
    for (const auto* m : {&singlet, &pr}) {
      const double grid = coplanar_grid_fraction(*m, 400);
      double se_mc = 0.0;
      const double mc = coplanar_mc_fraction(*m, 1000000, 13, &se_mc);
      const double se_grid = 1.0 / 400.0;  // conservative quadrature error
      const double tol = 3.0 * std::sqrt(se_mc * se_mc + se_grid * se_grid);
      if (std::abs(grid - mc) > tol) ok = false;
      detail += " " + (*m).label() + " grid=" + fmt(grid) + " mc=" + fmt(mc) +
                " (tol=" + fmt(tol) + ")";
    }
    report(8, ok, detail);
  }

  // 9. determinism across thread counts
  {
    const auto t1 = estimate_volume(pr, chsh, 200000, 17, 1);
    const auto t2 = estimate_volume(pr, chsh, 200000, 17, 5);
    const auto t3 = estimate_volume(singlet, i3322, 100000, 17, 1);
    const auto t4 = estimate_volume(singlet, i3322, 100000, 17, 6);
    const bool ok =
        t1.violations == t2.violations && t3.violations == t4.violations;
    report(9, ok,
           "determinism: identical violation counts at 1/5 threads (chsh) and "
           "1/6 threads (3322)");
  }

  // 10. exact node form vs the branch formulas
  {
    bool ok = true;
    for (int i = 0; i <= 10000; ++i) {
      const double t = kPi * i / 10000.0;
      if (std::abs(pr.eval(t) - pr_branches(t)) > 1e-12) ok = false;
    }
    for (const double l : {kLambdaMin, 0.7, 0.934, 1.1, kLambdaMax}) {
      const auto m = lambda_box_model(l);
      for (int i = 0; i <= 10000; ++i) {
        const double t = kPi * i / 10000.0;
        if (std::abs(m.eval(t) - lambda_branches(t, l)) > 1e-12) ok = false;
      }
    }
    report(10, ok,
           "node form matches branch formulas at 10^4 grid points to 1e-12");
  }

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
