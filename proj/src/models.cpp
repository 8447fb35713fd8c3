#include "bellvol/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace bellvol {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kThetaTol = 1e-12;
}  // namespace

CorrelationModel CorrelationModel::singlet() {
  CorrelationModel m;
  m.singlet_ = true;
  m.label_ = "singlet";
  return m;
}

CorrelationModel CorrelationModel::piecewise(std::string label,
                                             std::vector<PiecewiseNode> nodes) {
  CorrelationModel m;
  m.label_ = std::move(label);
  m.nodes_ = std::move(nodes);
  return m;
}

double CorrelationModel::eval(double theta) const {
  if (theta < 0.0 || theta > kPi) {
    throw std::domain_error("eval_correlation: theta outside [0, pi]");
  }
  if (singlet_) return -std::cos(theta);

  auto it = std::upper_bound(
      nodes_.begin(), nodes_.end(), theta,
      [](double t, const PiecewiseNode& n) { return t < n.theta; });
  if (it == nodes_.begin()) return it->value;
  if (it == nodes_.end()) return nodes_.back().value;
  const PiecewiseNode& lo = *(it - 1);
  const PiecewiseNode& hi = *it;
  const double dt = hi.theta - lo.theta;
  if (dt <= 0.0) return lo.value;  // degenerate segment
  const double w = (theta - lo.theta) / dt;
  return lo.value + w * (hi.value - lo.value);
}

CorrelationModel singlet_model() { return CorrelationModel::singlet(); }

CorrelationModel pr_box_model() {
  return CorrelationModel::piecewise(
      "pr_box", {{0.0, 1.0},
                 {kPi / 6.0, 1.0},
                 {kPi / 4.0, -1.0},
                 {kPi / 3.0, -1.0},
                 {2.0 * kPi / 3.0, 1.0},
                 {3.0 * kPi / 4.0, 1.0},
                 {5.0 * kPi / 6.0, -1.0},
                 {kPi, -1.0}});
}

CorrelationModel lambda_box_model(double lambda) {
  if (!(lambda >= kLambdaMin - kThetaTol && lambda <= kLambdaMax + kThetaTol)) {
    throw std::invalid_argument(
        "lambda_box_model: lambda must lie in [pi/6, 4pi/9]");
  }
  lambda = std::clamp(lambda, kLambdaMin, kLambdaMax);
  std::ostringstream label;
  label << "lambda_box(" << lambda << ")";
  return CorrelationModel::piecewise(
      label.str(), {{0.0, 1.0},
                    {kPi / 18.0, 1.0},
                    {kPi / 6.0, -1.0},
                    {lambda, -1.0},
                    {lambda + kPi / 18.0, 0.0},
                    {17.0 * kPi / 18.0 - lambda, 0.0},
                    {kPi - lambda, 1.0},
                    {5.0 * kPi / 6.0, 1.0},
                    {17.0 * kPi / 18.0, -1.0},
                    {kPi, -1.0}});
}

std::vector<std::string> validate_model(const CorrelationModel& model) {
  std::vector<std::string> report;
  if (model.is_singlet()) return report;
  const auto& nodes = model.nodes();

  if (nodes.size() < 2) {
    report.push_back("model needs at least two nodes");
    return report;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].theta < -kThetaTol || nodes[i].theta > kPi + kThetaTol) {
      std::ostringstream os;
      os << "node " << i << ": theta " << nodes[i].theta
         << " outside [0, pi]";
      report.push_back(os.str());
    }
    if (std::abs(nodes[i].value) > 1.0) {
      std::ostringstream os;
      os << "node " << i << ": value " << nodes[i].value
         << " outside [-1, 1]";
      report.push_back(os.str());
    }
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].theta < nodes[i - 1].theta) {
      std::ostringstream os;
      os << "node " << i << ": theta decreases (nodes must be sorted)";
      report.push_back(os.str());
    } else if (nodes[i].theta == nodes[i - 1].theta &&
               nodes[i].value != nodes[i - 1].value) {
      std::ostringstream os;
      os << "node " << i
         << ": zero-length segment with unequal values (discontinuity)";
      report.push_back(os.str());
    }
  }
  if (std::abs(nodes.front().theta) > kThetaTol) {
    report.push_back("domain not covered: first node theta must be 0");
  }
  if (std::abs(nodes.back().theta - kPi) > kThetaTol) {
    report.push_back("domain not covered: last node theta must be pi");
  }
  return report;
}

CorrelationModel load_model(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("model parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("label") || !doc.contains("nodes") ||
      !doc["label"].is_string() || !doc["nodes"].is_array()) {
    throw std::runtime_error(
        "model parse error: expected {\"label\": <text>, \"nodes\": [[theta, "
        "value], ...]}");
  }
  std::vector<PiecewiseNode> nodes;
  for (const auto& entry : doc["nodes"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw std::runtime_error(
          "model parse error: each node must be a [theta, value] pair");
    }
    nodes.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  auto model = CorrelationModel::piecewise(doc["label"].get<std::string>(),
                                           std::move(nodes));
  const auto report = validate_model(model);
  if (!report.empty()) {
    std::string msg = "model validation failed:";
    for (const auto& item : report) msg += "\n  " + item;
    throw std::invalid_argument(msg);
  }
  return model;
}

std::string save_model(const CorrelationModel& model) {
  nlohmann::json doc;
  doc["label"] = model.label();
  auto nodes = nlohmann::json::array();
  for (const auto& n : model.nodes()) {
    nodes.push_back(nlohmann::json::array({n.theta, n.value}));
  }
  doc["nodes"] = nodes;
  return doc.dump(2);
}

JointProbabilities joint_outcome_probabilities(const CorrelationModel& model,
                                               double theta) {
  const double e = model.eval(theta);
  const double same = 0.25 * (1.0 + e);
  const double diff = 0.25 * (1.0 - e);
  return JointProbabilities{same, same, diff, diff};
}

double single_party_marginal(const CorrelationModel&, const Direction&) {
  // Every model here is spherically symmetric with unbiased outcomes.
  return 0.0;
}

}  // namespace bellvol
