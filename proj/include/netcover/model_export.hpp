#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netcover/coverage.hpp"
#include "netcover/network.hpp"
#include "netcover/placement.hpp"

namespace netcover {

enum class VarKind { Continuous, Binary };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0.0;
  double ub = 0.0;
};

struct LinTerm {
  int var = -1;
  double coef = 0.0;
};

enum class RowSense { LE, GE, EQ };

struct LinearRow {
  std::string name;
  std::vector<LinTerm> terms;
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
};

struct AffineExpr {
  std::vector<LinTerm> terms;
  double constant = 0.0;
};

// ||parts||_2 <= bound, every entry affine in the variables.
struct SocRow {
  std::string name;
  std::vector<AffineExpr> parts;
  AffineExpr bound;
};

struct ConicModel {
  std::string name;
  bool maximize = true;
  std::vector<LinTerm> objective;
  double objective_constant = 0.0;
  std::vector<Variable> vars;
  std::vector<LinearRow> lin;
  std::vector<SocRow> soc;
  std::vector<std::pair<std::string, std::string>> meta;  // sorted by key

  int var_index(const std::string& name) const;
  std::string meta_value(const std::string& key) const;
};

// Single-device maximal coverage model: binaries select the touched edges,
// cone (or polyhedral) rows pin the entry/exit parameters to the ball.
ConicModel build_single(const Network& net, const Ball& ball,
                        const std::string& instance = "instance");

// Multi-device model: per-device copies of the single-device rows plus a
// sorting/selection layer that counts overlapped length exactly once. The
// binary-times-continuous products are linearised exactly.
ConicModel build_multi(const Network& net, std::span<const Ball> balls,
                       Problem problem, std::optional<double> gamma,
                       std::span<const double> device_costs = {},
                       const std::string& instance = "instance");

std::string serialize(const ConicModel& model);
ConicModel parse_model(const std::string& text);

struct Assignment {
  std::map<std::string, double> values;
};

// Mechanical translation of device positions into model variables; useful
// as a warm start and for checking the formulation against the evaluator.
Assignment assignment_from_placement(const ConicModel& model, const Network& net,
                                     std::span<const Device> devices);

struct VerifyResult {
  bool feasible = true;
  std::vector<std::string> violations;       // row/bound names with amounts
  double model_objective = 0.0;
  CoverageReport geometric;
  double linearization_slack = 0.0;          // model objective minus true coverage
  std::vector<std::string> w_flags;  // covered subsegments no single device covers
};

VerifyResult verify_solution(const ConicModel& model, const Network& net,
                             const Assignment& assignment, double tol = 1e-6);

// Big-M used in the coverage rows: node-set diameter plus 2R.
double coverage_big_m(const Network& net, double radius);

std::string serialize_assignment(const Assignment& a);
Assignment parse_assignment(const std::string& text);

}  // namespace netcover
