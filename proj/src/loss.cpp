#include "oolr/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oolr {

namespace {

void check_dims(const TraceSlot& slot, const Decision& z) {
  const Eigen::Index m = slot.m();
  if (slot.price_adv.size() != m || slot.price_spot.size() != m) {
    throw std::invalid_argument("dimension: slot price vectors do not match theta");
  }
  if (z.x.size() != m || z.y.size() != m) {
    throw std::invalid_argument("dimension: decision has " + std::to_string(z.m()) +
                                " resources, slot has " + std::to_string(m));
  }
  if (slot.alpha && slot.alpha->size() != m) {
    throw std::invalid_argument("dimension: alpha ratios do not match theta");
  }
  if (slot.beta && slot.beta->size() != m) {
    throw std::invalid_argument("dimension: beta ratios do not match theta");
  }
}

}  // namespace

double loss_value(const TraceSlot& slot, const Decision& z,
                  const LossConfig& cfg) {
  check_dims(slot, z);
  const Eigen::VectorXd xd = slot.alpha ? (slot.alpha->array() * z.x.array()).matrix() : z.x;
  const Eigen::VectorXd yd = slot.beta ? (slot.beta->array() * z.y.array()).matrix() : z.y;
  const double arg = (xd + yd).dot(slot.theta) + 1.0;
  if (arg <= 0.0) {
    throw std::runtime_error("domain: log argument " + std::to_string(arg) +
                             " is not positive");
  }
  return -cfg.V * slot.demand * std::log(arg) + slot.price_adv.dot(xd) +
         slot.price_spot.dot(yd);
}

GradVector loss_gradient(const TraceSlot& slot, const Decision& z,
                         const LossConfig& cfg) {
  check_dims(slot, z);
  const Eigen::Index m = slot.m();
  const Eigen::VectorXd xd = slot.alpha ? (slot.alpha->array() * z.x.array()).matrix() : z.x;
  const Eigen::VectorXd yd = slot.beta ? (slot.beta->array() * z.y.array()).matrix() : z.y;
  const double arg = (xd + yd).dot(slot.theta) + 1.0;
  if (arg <= 0.0) {
    throw std::runtime_error("domain: log argument " + std::to_string(arg) +
                             " is not positive");
  }
  const double util = -cfg.V * slot.demand / arg;
  GradVector g(2 * m);
  if (slot.alpha) {
    g.head(m) = slot.alpha->array() * (util * slot.theta + slot.price_adv).array();
  } else {
    g.head(m) = util * slot.theta + slot.price_adv;
  }
  if (slot.beta) {
    g.tail(m) = slot.beta->array() * (util * slot.theta + slot.price_spot).array();
  } else {
    g.tail(m) = util * slot.theta + slot.price_spot;
  }
  return g;
}

}  // namespace oolr
