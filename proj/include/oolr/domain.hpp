#pragma once

#include <Eigen/Dense>

namespace oolr {

/// Stacked gradient layout: the first m entries are d/dx, the last m are d/dy.
using GradVector = Eigen::VectorXd;

/// Axis-aligned feasible box: reservation for resource i lives in [0, bounds(i)].
/// The decision space is the product of two such boxes (one per market).
struct FeasibleBox {
  Eigen::VectorXd bounds;

  Eigen::Index m() const { return bounds.size(); }
};

/// Validates bounds (all strictly positive, non-empty) and builds the box.
FeasibleBox make_box(const Eigen::VectorXd& bounds);

/// Box with all m bounds equal.
FeasibleBox uniform_box(Eigen::Index m, double bound);

/// A reservation pair: in-advance vector x and spot vector y, both of length m.
struct Decision {
  Eigen::VectorXd x;
  Eigen::VectorXd y;

  Eigen::Index m() const { return x.size(); }

  /// Concatenated [x; y] vector of length 2m.
  Eigen::VectorXd stacked() const;

  static Decision from_stacked(const Eigen::Ref<const Eigen::VectorXd>& z);
};

/// Diagonal length of one box, sqrt(sum_i bounds(i)^2). The diameter of the
/// full decision space (two stacked boxes) is sqrt(2) times this value.
double diameter(const FeasibleBox& box);

/// sqrt(2) * diameter(box): the diameter of the space the decisions z live in.
double decision_space_diameter(const FeasibleBox& box);

/// True when 0 <= x_i <= bounds(i) and 0 <= y_i <= bounds(i) for all i.
bool contains(const FeasibleBox& box, const Decision& z, double tol = 0.0);

/// Euclidean projection of a stacked 2m point onto the decision space.
/// The set is an axis-aligned box, so the coordinate-wise clamp is exact.
Decision project(const Eigen::Ref<const Eigen::VectorXd>& point,
                 const FeasibleBox& box);

}  // namespace oolr
