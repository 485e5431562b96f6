#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "oolr/loss.hpp"

namespace oolr {

/// Discrete mean-reverting (AR(1) / Ornstein-Uhlenbeck) process parameters:
/// v_{t+1} = v_t + kappa*(mu - v_t) + std*eps_t, clamped at zero.
struct OuParams {
  double kappa = 0.1;
  double mu = 0.5;
  double std = 0.05;
  double init = 0.5;
};

/// Per-resource contribution weights: offset + sine seasonality + an
/// independent zero-mean OU disturbance, clamped at zero. Vectors of length
/// one broadcast to all resources.
struct ThetaParams {
  Eigen::VectorXd offset = Eigen::VectorXd::Constant(1, 0.5);
  Eigen::VectorXd amplitude = Eigen::VectorXd::Constant(1, 0.3);
  Eigen::VectorXd period = Eigen::VectorXd::Constant(1, 144.0);
  Eigen::VectorXd phase = Eigen::VectorXd::Constant(1, 0.0);
  double kappa = 0.1;
  double std = 0.05;
};

/// Two seasonal components (defaults: daily and weekly at 10-minute slots)
/// plus Gaussian noise, max-normalized into [0, 1].
struct SyntheticDemandParams {
  double offset = 0.5;
  double amp_daily = 0.25;
  double amp_weekly = 0.15;
  double period_daily = 144.0;
  double period_weekly = 1008.0;
  double phase_daily = 0.0;
  double phase_weekly = 0.0;
  double std = 0.05;
};

struct CsvDemandParams {
  std::string path;
  std::string column;
  bool normalize = true;
};

/// Fulfillment-ratio floors; each slot draws ratios uniformly from
/// [alpha_min, 1] and [beta_min, 1] per resource.
struct SlaParams {
  double alpha_min = 1.0;
  double beta_min = 1.0;
};

struct TraceConfig {
  int T = 1008;
  int m = 3;
  std::uint64_t seed = 1;
  OuParams price_adv{0.1, 0.5, 0.05, 0.5};
  OuParams price_spot{0.1, 0.8, 0.08, 0.8};
  ThetaParams theta;
  std::variant<SyntheticDemandParams, CsvDemandParams> demand =
      SyntheticDemandParams{};
  std::optional<SlaParams> sla;
};

/// Deterministic generation from config and seed. Independent seeded
/// sub-streams drive each series family, so e.g. changing the SLA floors
/// leaves prices, contributions and demand untouched.
std::vector<TraceSlot> generate(const TraceConfig& cfg);

/// Reads one numeric column (by header name, or 0-based index when the
/// name is an integer) from a CSV file. normalize divides by the maximum.
std::vector<double> ingest_demand_csv(const std::string& path,
                                      const std::string& column,
                                      bool normalize);

/// Trace CSV: header t,a,p_1..p_m,q_1..q_m,theta_1..theta_m and, when
/// fulfillment ratios are present, alpha_1..alpha_m,beta_1..beta_m.
/// Values carry 17 significant digits; the write is atomic.
void write_trace_csv(const std::string& path,
                     const std::vector<TraceSlot>& slots);

std::vector<TraceSlot> read_trace_csv(const std::string& path);

/// Serialize a double with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace oolr
