#pragma once

#include <optional>

#include <Eigen/Dense>

#include "oolr/domain.hpp"

namespace oolr {

/// Environment realized in one slot: demand, unit prices on both markets,
/// per-resource contribution weights, and (optionally) the fulfillment
/// ratios the operator applied to each market's request.
struct TraceSlot {
  double demand = 0.0;
  Eigen::VectorXd price_adv;
  Eigen::VectorXd price_spot;
  Eigen::VectorXd theta;
  std::optional<Eigen::VectorXd> alpha;
  std::optional<Eigen::VectorXd> beta;

  Eigen::Index m() const { return theta.size(); }
};

struct LossConfig {
  /// Utility-versus-cost weight, >= 1. Larger values favor utility.
  double V = 2.0;
};

/// Per-slot loss: -V * a * log((x + y)' theta + 1) + p'x + q'y.
/// When fulfillment ratios are present the delivered amounts alpha.*x and
/// beta.*y replace the requests in both the utility and the payment term.
/// Accepts nonnegative points outside the feasible box (offline solvers
/// probe such points before projecting).
double loss_value(const TraceSlot& slot, const Decision& z,
                  const LossConfig& cfg);

/// Exact gradient of loss_value, stacked [d/dx; d/dy].
GradVector loss_gradient(const TraceSlot& slot, const Decision& z,
                         const LossConfig& cfg);

}  // namespace oolr
