#pragma once

#include <string>

#include "bellvol/geometry.hpp"
#include "bellvol/models.hpp"

namespace bellvol {

enum class ScenarioName { Chsh, I3322 };

/// Descriptor of a Bell test. CHSH: 3 free directions, local bound 2,
/// two-sided violation, symmetric algebraic maximum 4. I3322: 5 free
/// directions, local bound 4, one-sided, symmetric algebraic maximum 8.
struct Scenario {
  ScenarioName name;
  int free_directions;
  double local_bound;
  bool two_sided;
  double algebraic_max_symmetric;

  static Scenario chsh() { return {ScenarioName::Chsh, 3, 2.0, true, 4.0}; }
  static Scenario i3322() { return {ScenarioName::I3322, 5, 4.0, false, 8.0}; }

  const char* label() const {
    return name == ScenarioName::Chsh ? "chsh" : "3322";
  }
};

/// S = E(theta_ab) + E(theta_ab') + E(theta_a'b) - E(theta_a'b').
double chsh_value(const CorrelationModel& model, const ChshConfig& config);

/// I = -M(a) - M(a') + M(b) + M(b')
///     + E(a,b) + E(a,b') + E(a,b'') + E(a',b) + E(a',b') - E(a',b'')
///     + E(a'',b) - E(a'',b').
/// The E(a'',b'') term does not appear. M is the single-party marginal.
double i3322_value(const CorrelationModel& model, const I3322Config& config);

/// Strict violation predicate: |value| > bound (two-sided) or
/// value > bound (one-sided). The boundary has measure zero.
bool violates(const Scenario& scenario, double value);

}  // namespace bellvol
