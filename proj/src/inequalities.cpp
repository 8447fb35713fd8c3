#include "bellvol/inequalities.hpp"

#include <cmath>

namespace bellvol {

double chsh_value(const CorrelationModel& model, const ChshConfig& c) {
  return model.eval(angle_between(c.a, c.b)) +
         model.eval(angle_between(c.a, c.bP)) +
         model.eval(angle_between(c.aP, c.b)) -
         model.eval(angle_between(c.aP, c.bP));
}

double i3322_value(const CorrelationModel& model, const I3322Config& c) {
  const double marginals =
      -single_party_marginal(model, c.a) - single_party_marginal(model, c.aP) +
      single_party_marginal(model, c.b) + single_party_marginal(model, c.bP);
  return marginals + model.eval(angle_between(c.a, c.b)) +
         model.eval(angle_between(c.a, c.bP)) +
         model.eval(angle_between(c.a, c.bPP)) +
         model.eval(angle_between(c.aP, c.b)) +
         model.eval(angle_between(c.aP, c.bP)) -
         model.eval(angle_between(c.aP, c.bPP)) +
         model.eval(angle_between(c.aPP, c.b)) -
         model.eval(angle_between(c.aPP, c.bP));
}

bool violates(const Scenario& scenario, double value) {
  const double v = scenario.two_sided ? std::abs(value) : value;
  return v > scenario.local_bound;
}

}  // namespace bellvol
