#pragma once

#include <string>
#include <vector>

#include "bellvol/geometry.hpp"

namespace bellvol {

/// Breakpoint of a piecewise-linear correlation function.
struct PiecewiseNode {
  double theta = 0.0;  // radians, in [0, pi]
  double value = 0.0;  // in [-1, 1]
};

/// Correlation function E(theta) on [0, pi]: either the analytic singlet
/// E(theta) = -cos(theta), or linear interpolation through an ordered node
/// list. Immutable after construction; safe to share across workers.
class CorrelationModel {
 public:
  static CorrelationModel singlet();
  static CorrelationModel piecewise(std::string label,
                                    std::vector<PiecewiseNode> nodes);

  /// E(theta). Throws std::domain_error if theta is outside [0, pi].
  double eval(double theta) const;

  bool is_singlet() const { return singlet_; }
  const std::vector<PiecewiseNode>& nodes() const { return nodes_; }
  const std::string& label() const { return label_; }

 private:
  CorrelationModel() = default;
  bool singlet_ = false;
  std::vector<PiecewiseNode> nodes_;
  std::string label_;
};

CorrelationModel singlet_model();

/// The original Popescu-Rohrlich box correlation, in exact node form.
CorrelationModel pr_box_model();

/// One-parameter box family, lambda in [pi/6, 4pi/9]. Degenerate
/// zero-length segments at the endpoints are legal. Throws
/// std::invalid_argument for lambda outside the interval.
CorrelationModel lambda_box_model(double lambda);

constexpr double kLambdaMin = 0.52359877559829887308;  // pi/6
constexpr double kLambdaMax = 1.39626340159546366154;  // 4pi/9

/// Structural checks on a piecewise model: node ordering, domain coverage
/// of [0, pi], |value| <= 1, and that zero-length segments do not hide a
/// jump. Empty report = valid. Singlet models are always valid.
std::vector<std::string> validate_model(const CorrelationModel& model);

/// Parse a model document: {"label": <text>, "nodes": [[theta, value], ...]}.
/// Throws std::runtime_error on malformed input, std::invalid_argument with
/// the itemized report when validation fails.
CorrelationModel load_model(const std::string& document);

/// Serialize a piecewise model to the document form accepted by load_model.
std::string save_model(const CorrelationModel& model);

struct JointProbabilities {
  double pp, mm, pm, mp;
};

/// Outcome table for a single pair angle: p(+,+) = p(-,-) = (1+E)/4 and
/// p(+,-) = p(-,+) = (1-E)/4, so the table recombines to E and each party's
/// marginal is exactly 1/2 regardless of theta (the nonsignaling premise).
JointProbabilities joint_outcome_probabilities(const CorrelationModel& model,
                                               double theta);

/// Single-party correlation term. Zero for every model here (all are
/// spherically symmetric with unbiased outcomes); kept explicit so the
/// 3322 functional carries its marginal terms in full.
double single_party_marginal(const CorrelationModel& model,
                             const Direction& direction);

}  // namespace bellvol
