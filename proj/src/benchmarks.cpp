#include "oolr/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace oolr {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;

/// Summed loss over a slot set, precomputed into dense per-slot matrices so
/// each evaluation is two matrix-vector products and one log pass. With
/// fulfillment ratios the delivered-amount weights fold into the rows.
struct Objective {
  Eigen::MatrixXd theta_x;  // T x m, row t: theta_t (.* alpha_t)
  Eigen::MatrixXd theta_y;  // T x m, row t: theta_t (.* beta_t)
  Eigen::VectorXd va;       // V * a_t
  Eigen::VectorXd pay_x;    // sum_t p_t (.* alpha_t)
  Eigen::VectorXd pay_y;    // sum_t q_t (.* beta_t)
  mutable Eigen::VectorXd args;  // scratch: utility log arguments
  mutable Eigen::VectorXd util;  // scratch: -V a_t / args_t

  Objective(const std::vector<TraceSlot>& slots, const LossConfig& cfg) {
    const Eigen::Index T = static_cast<Eigen::Index>(slots.size());
    const Eigen::Index m = slots.front().m();
    theta_x.resize(T, m);
    theta_y.resize(T, m);
    va.resize(T);
    pay_x = Eigen::VectorXd::Zero(m);
    pay_y = Eigen::VectorXd::Zero(m);
    for (Eigen::Index t = 0; t < T; ++t) {
      const TraceSlot& s = slots[t];
      if (s.m() != m || s.price_adv.size() != m || s.price_spot.size() != m) {
        throw std::invalid_argument("dimension: slot " + std::to_string(t) +
                                    " does not match the first slot");
      }
      va(t) = cfg.V * s.demand;
      if (s.alpha) {
        theta_x.row(t) = (s.alpha->array() * s.theta.array()).transpose();
        pay_x += (s.alpha->array() * s.price_adv.array()).matrix();
      } else {
        theta_x.row(t) = s.theta.transpose();
        pay_x += s.price_adv;
      }
      if (s.beta) {
        theta_y.row(t) = (s.beta->array() * s.theta.array()).transpose();
        pay_y += (s.beta->array() * s.price_spot.array()).matrix();
      } else {
        theta_y.row(t) = s.theta.transpose();
        pay_y += s.price_spot;
      }
    }
    args.resize(T);
    util.resize(T);
  }

  double value(const Decision& z) const {
    args.noalias() = theta_x * z.x;
    args.noalias() += theta_y * z.y;
    args.array() += 1.0;
    return -va.dot(args.array().log().matrix()) + pay_x.dot(z.x) + pay_y.dot(z.y);
  }

  Eigen::VectorXd gradient(const Decision& z) const {
    args.noalias() = theta_x * z.x;
    args.noalias() += theta_y * z.y;
    args.array() += 1.0;
    util = -(va.array() / args.array()).matrix();
    const Eigen::Index m = pay_x.size();
    Eigen::VectorXd g(2 * m);
    g.head(m).noalias() = theta_x.transpose() * util;
    g.head(m) += pay_x;
    g.tail(m).noalias() = theta_y.transpose() * util;
    g.tail(m) += pay_y;
    return g;
  }
};

SolveResult projected_gradient_descent(const Objective& obj,
                                       const FeasibleBox& box,
                                       const SolveOptions& opts) {
  Decision z{0.5 * box.bounds, 0.5 * box.bounds};  // box center
  double fz = obj.value(z);

  Eigen::VectorXd prev_z, prev_g;
  SolveResult res;
  for (int it = 0; it < opts.max_iters; ++it) {
    const Eigen::VectorXd g = obj.gradient(z);
    const Eigen::VectorXd zv = z.stacked();

    // Stationarity of the projected step, not of the raw gradient.
    const double pg_norm = (zv - project(zv - g, box).stacked()).norm();
    if (pg_norm < opts.tol) {
      res.z = z;
      res.objective = fz;
      res.converged = true;
      res.iters = it;
      return res;
    }

    // Spectral (Barzilai-Borwein) trial step; the Armijo backtracking below
    // still protects every accepted move.
    double step = 1.0;
    if (it > 0) {
      const Eigen::VectorXd dz = zv - prev_z;
      const double denom = dz.dot(g - prev_g);
      if (denom > 0.0) {
        step = std::min(std::max(dz.squaredNorm() / denom, 1e-8), 1e8);
      }
    }
    prev_z = zv;
    prev_g = g;

    bool sufficient = false;
    Decision z_new = z;
    double f_new = fz;
    // Rounding slack keeps the line search alive once per-step decreases
    // drop below the precision of the objective itself.
    const double slack = 1e-14 * (std::abs(fz) + 1.0);
    for (int k = 0; k < kMaxHalvings; ++k) {
      z_new = project(zv - step * g, box);
      f_new = obj.value(z_new);
      if (f_new <= fz + kArmijo * g.dot(z_new.stacked() - zv) + slack) {
        sufficient = true;
        break;
      }
      step *= 0.5;
    }
    if (!sufficient && f_new >= fz) {
      // Stalled: no step produced any decrease.
      res.z = z;
      res.objective = fz;
      res.converged = false;
      res.iters = it;
      return res;
    }
    z = z_new;
    fz = f_new;
  }
  res.z = z;
  res.objective = fz;
  res.converged = false;
  res.iters = opts.max_iters;
  return res;
}

}  // namespace

SolveResult solve_static_benchmark(const std::vector<TraceSlot>& slots,
                                   const LossConfig& cfg, const FeasibleBox& box,
                                   const SolveOptions& opts) {
  if (slots.empty()) {
    throw std::invalid_argument("static benchmark needs at least one slot");
  }
  const Objective obj(slots, cfg);
  return projected_gradient_descent(obj, box, opts);
}

SolveResult solve_dynamic_benchmark(const TraceSlot& slot, const LossConfig& cfg,
                                    const FeasibleBox& box,
                                    const SolveOptions& opts) {
  const std::vector<TraceSlot> one{slot};
  const Objective obj(one, cfg);
  return projected_gradient_descent(obj, box, opts);
}

RegretSeries compute_regret(const Eigen::VectorXd& alg_losses,
                            const Eigen::VectorXd& benchmark_losses,
                            const Eigen::VectorXd& h_series, double D) {
  const Eigen::Index T = alg_losses.size();
  if (benchmark_losses.size() != T || h_series.size() != T) {
    throw std::invalid_argument("dimension: regret series lengths differ");
  }
  RegretSeries r;
  r.cumulative.resize(T);
  r.average.resize(T);
  r.bound.resize(T);
  double cum = 0.0;
  double h_cum = 0.0;
  for (Eigen::Index t = 0; t < T; ++t) {
    cum += alg_losses(t) - benchmark_losses(t);
    h_cum += h_series(t);
    r.cumulative(t) = cum;
    r.average(t) = cum / static_cast<double>(t + 1);
    r.bound(t) = 2.0 * std::sqrt(2.0) * D * std::sqrt(h_cum);
  }
  return r;
}

}  // namespace oolr
