#include "oolr/domain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oolr {

FeasibleBox make_box(const Eigen::VectorXd& bounds) {
  if (bounds.size() == 0) {
    throw std::invalid_argument("feasible box needs at least one resource");
  }
  if ((bounds.array() <= 0.0).any()) {
    throw std::invalid_argument("feasible box bounds must be strictly positive");
  }
  return FeasibleBox{bounds};
}

FeasibleBox uniform_box(Eigen::Index m, double bound) {
  return make_box(Eigen::VectorXd::Constant(m, bound));
}

Eigen::VectorXd Decision::stacked() const {
  Eigen::VectorXd z(x.size() + y.size());
  z << x, y;
  return z;
}

Decision Decision::from_stacked(const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() % 2 != 0) {
    throw std::invalid_argument("dimension: stacked decision must have even length, got " +
                                std::to_string(z.size()));
  }
  const Eigen::Index m = z.size() / 2;
  return Decision{z.head(m), z.tail(m)};
}

double diameter(const FeasibleBox& box) {
  return box.bounds.norm();
}

double decision_space_diameter(const FeasibleBox& box) {
  return std::sqrt(2.0) * diameter(box);
}

bool contains(const FeasibleBox& box, const Decision& z, double tol) {
  if (z.x.size() != box.m() || z.y.size() != box.m()) return false;
  return (z.x.array() >= -tol).all() && (z.y.array() >= -tol).all() &&
         (z.x.array() <= box.bounds.array() + tol).all() &&
         (z.y.array() <= box.bounds.array() + tol).all();
}

Decision project(const Eigen::Ref<const Eigen::VectorXd>& point,
                 const FeasibleBox& box) {
  const Eigen::Index m = box.m();
  if (point.size() != 2 * m) {
    throw std::invalid_argument("dimension: point has length " +
                                std::to_string(point.size()) + ", expected " +
                                std::to_string(2 * m));
  }
  Decision z;
  z.x = point.head(m).cwiseMax(0.0).cwiseMin(box.bounds);
  z.y = point.tail(m).cwiseMax(0.0).cwiseMin(box.bounds);
  return z;
}

}  // namespace oolr
