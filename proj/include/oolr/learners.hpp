#pragma once

#include <Eigen/Dense>

#include "oolr/domain.hpp"

namespace oolr {

/// Gradient forecast for the upcoming slot, consumed by the optimistic
/// decision step and later by the error accounting of the update step.
struct Prediction {
  GradVector grad_hat;
};

/// State of the optimistic learner with adaptive proximal regularizers.
/// The regularizer added after slot t is (sigma_t/2)*||z - z_t||^2 with
/// sigma_t = sigma*(sqrt(h_{1:t}) - sqrt(h_{1:t-1})) and
/// h_t = ||grad_t - predicted grad_t||^2, so sigma_sum == sigma*sqrt(h_sum)
/// holds as an exact telescoping identity.
struct OolrState {
  double sigma = 1.0;
  Eigen::VectorXd grad_sum;             // sum of observed gradients
  Eigen::VectorXd weighted_center_sum;  // sum of sigma_t * z_t
  double sigma_sum = 0.0;
  double h_sum = 0.0;
  Decision last_decision;
  int t = 1;
};

OolrState oolr_init(const FeasibleBox& box, double sigma, const Decision& z1);

/// Minimizer over the box of r_{1:t}(z) + (grad_sum + grad_hat)' z.
/// The regularizer sum has spherical curvature sigma_sum, so projecting the
/// unconstrained minimizer gives the exact constrained argmin. With
/// sigma_sum == 0 the objective is linear and each coordinate saturates at
/// the box edge opposite to the sign of its linear coefficient (the last
/// decision breaks exact-zero ties).
Decision oolr_decide(const OolrState& state, const Prediction& pred,
                     const FeasibleBox& box);

OolrState oolr_update(OolrState state, const GradVector& grad_true,
                      const Prediction& pred_used, const Decision& z_played);

/// Baseline regularized leader with the fixed quadratic regularizer
/// ||z||^2/(2*eta) and the self-confident schedule
/// eta_t = eta_scale / sqrt(sum of squared gradient norms).
struct FtrlState {
  double eta_scale = 1.0;
  Eigen::VectorXd grad_sum;
  double grad_sq_sum = 0.0;
  int t = 1;
  Decision last_decision;
};

/// Guards the division in the step-size schedule when no gradient has
/// been seen yet.
inline constexpr double kFtrlGradFloor = 1e-12;

FtrlState ftrl_init(const FeasibleBox& box, double eta_scale, const Decision& z1);

Decision ftrl_decide(const FtrlState& state, const FeasibleBox& box);

FtrlState ftrl_update(FtrlState state, const GradVector& grad_true);

}  // namespace oolr
