#include "oolr/traces.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oolr {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Hand-rolled draws keep traces byte-identical across standard libraries.
double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double normal01(std::mt19937_64& g) {
  const double u1 = (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(g() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

Eigen::VectorXd broadcast(const Eigen::VectorXd& v, int m, const char* what) {
  if (v.size() == m) return v;
  if (v.size() == 1) return Eigen::VectorXd::Constant(m, v(0));
  throw std::invalid_argument(std::string(what) + " needs 1 or m values, got " +
                              std::to_string(v.size()));
}

std::vector<double> synthetic_demand(const SyntheticDemandParams& p, int T,
                                     std::mt19937_64& rng) {
  std::vector<double> a(T);
  double max_val = 0.0;
  for (int t = 0; t < T; ++t) {
    const double tt = static_cast<double>(t);
    double v = p.offset +
               p.amp_daily * std::sin(kTwoPi * tt / p.period_daily + p.phase_daily) +
               p.amp_weekly * std::sin(kTwoPi * tt / p.period_weekly + p.phase_weekly) +
               p.std * normal01(rng);
    v = std::max(v, 0.0);
    a[t] = v;
    max_val = std::max(max_val, v);
  }
  if (max_val > 0.0) {
    for (double& v : a) v /= max_val;
  }
  return a;
}

}  // namespace

std::vector<TraceSlot> generate(const TraceConfig& cfg) {
  if (cfg.T < 1 || cfg.m < 1) {
    throw std::invalid_argument("trace needs T >= 1 and m >= 1");
  }
  const int T = cfg.T;
  const int m = cfg.m;

  auto rng_p = substream(cfg.seed, 0);
  auto rng_q = substream(cfg.seed, 1);
  auto rng_theta = substream(cfg.seed, 2);
  auto rng_a = substream(cfg.seed, 3);
  auto rng_alpha = substream(cfg.seed, 4);
  auto rng_beta = substream(cfg.seed, 5);

  std::vector<double> demand;
  if (const auto* syn = std::get_if<SyntheticDemandParams>(&cfg.demand)) {
    demand = synthetic_demand(*syn, T, rng_a);
  } else {
    const auto& csv = std::get<CsvDemandParams>(cfg.demand);
    demand = ingest_demand_csv(csv.path, csv.column, csv.normalize);
    if (static_cast<int>(demand.size()) < T) {
      throw std::runtime_error("trace-source: demand column has " +
                               std::to_string(demand.size()) + " rows, need " +
                               std::to_string(T));
    }
    demand.resize(T);
  }

  const Eigen::VectorXd th_offset = broadcast(cfg.theta.offset, m, "theta offset");
  const Eigen::VectorXd th_amp = broadcast(cfg.theta.amplitude, m, "theta amplitude");
  const Eigen::VectorXd th_period = broadcast(cfg.theta.period, m, "theta period");
  const Eigen::VectorXd th_phase = broadcast(cfg.theta.phase, m, "theta phase");

  Eigen::VectorXd p = Eigen::VectorXd::Constant(m, cfg.price_adv.init);
  Eigen::VectorXd q = Eigen::VectorXd::Constant(m, cfg.price_spot.init);
  Eigen::VectorXd theta_noise = Eigen::VectorXd::Zero(m);

  std::vector<TraceSlot> slots;
  slots.reserve(T);
  for (int t = 0; t < T; ++t) {
    TraceSlot slot;
    slot.demand = demand[t];
    slot.price_adv = p.cwiseMax(0.0);
    slot.price_spot = q.cwiseMax(0.0);
    slot.theta.resize(m);
    for (int i = 0; i < m; ++i) {
      slot.theta(i) = std::max(
          0.0, th_offset(i) +
                   th_amp(i) * std::sin(kTwoPi * t / th_period(i) + th_phase(i)) +
                   theta_noise(i));
    }
    if (cfg.sla) {
      Eigen::VectorXd alpha(m), beta(m);
      for (int i = 0; i < m; ++i) {
        alpha(i) = cfg.sla->alpha_min + (1.0 - cfg.sla->alpha_min) * uniform01(rng_alpha);
      }
      for (int i = 0; i < m; ++i) {
        beta(i) = cfg.sla->beta_min + (1.0 - cfg.sla->beta_min) * uniform01(rng_beta);
      }
      slot.alpha = alpha;
      slot.beta = beta;
    }
    slots.push_back(std::move(slot));

    // Advance the mean-reverting chains for the next slot.
    for (int i = 0; i < m; ++i) {
      p(i) += cfg.price_adv.kappa * (cfg.price_adv.mu - p(i)) +
              cfg.price_adv.std * normal01(rng_p);
      q(i) += cfg.price_spot.kappa * (cfg.price_spot.mu - q(i)) +
              cfg.price_spot.std * normal01(rng_q);
      theta_noise(i) += cfg.theta.kappa * (0.0 - theta_noise(i)) +
                        cfg.theta.std * normal01(rng_theta);
    }
    p = p.cwiseMax(0.0);
    q = q.cwiseMax(0.0);
  }
  return slots;
}

std::vector<double> ingest_demand_csv(const std::string& path,
                                      const std::string& column,
                                      bool normalize) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("trace-source: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace-source: " + path + " is empty");
  }

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.push_back("");
    return out;
  };

  const auto header = split(line);
  int col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) {
      col = static_cast<int>(i);
      break;
    }
  }
  if (col < 0) {
    try {
      std::size_t pos = 0;
      const int idx = std::stoi(column, &pos);
      if (pos == column.size() && idx >= 0 &&
          idx < static_cast<int>(header.size())) {
        col = idx;
      }
    } catch (const std::exception&) {
    }
  }
  if (col < 0) {
    throw std::runtime_error("trace-source: column '" + column + "' not found in " +
                             path);
  }

  std::vector<double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (static_cast<int>(cells.size()) <= col) {
      throw std::runtime_error("trace-source: line " + std::to_string(line_no) +
                               " has too few columns");
    }
    try {
      std::size_t pos = 0;
      const double v = std::stod(cells[col], &pos);
      if (pos != cells[col].size()) throw std::invalid_argument(cells[col]);
      values.push_back(v);
    } catch (const std::exception&) {
      throw std::runtime_error("trace-source: non-numeric cell at line " +
                               std::to_string(line_no) + " in " + path);
    }
  }
  if (values.empty()) {
    throw std::runtime_error("trace-source: column '" + column + "' in " + path +
                             " is empty");
  }
  if (normalize) {
    double max_val = 0.0;
    for (double v : values) max_val = std::max(max_val, v);
    if (max_val > 0.0) {
      for (double& v : values) v /= max_val;
    }
  }
  return values;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceSlot>& slots) {
  if (slots.empty()) {
    throw std::invalid_argument("cannot write an empty trace");
  }
  const Eigen::Index m = slots.front().m();
  const bool sla = slots.front().alpha.has_value();

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp);
    }
    out << "t,a";
    for (Eigen::Index i = 1; i <= m; ++i) out << ",p_" << i;
    for (Eigen::Index i = 1; i <= m; ++i) out << ",q_" << i;
    for (Eigen::Index i = 1; i <= m; ++i) out << ",theta_" << i;
    if (sla) {
      for (Eigen::Index i = 1; i <= m; ++i) out << ",alpha_" << i;
      for (Eigen::Index i = 1; i <= m; ++i) out << ",beta_" << i;
    }
    out << "\n";
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const auto& s = slots[t];
      out << (t + 1) << ',' << format_double(s.demand);
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(s.price_adv(i));
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(s.price_spot(i));
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(s.theta(i));
      if (sla) {
        for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double((*s.alpha)(i));
        for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double((*s.beta)(i));
      }
      out << "\n";
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move " + tmp + " to " + path);
  }
}

std::vector<TraceSlot> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("trace-source: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trace-source: " + path + " is empty");
  }
  // Header shape: t,a then m columns each for p, q, theta (+ alpha, beta).
  std::size_t n_cols = 1;
  for (char c : line) {
    if (c == ',') ++n_cols;
  }
  bool sla = line.find(",alpha_1") != std::string::npos;
  const std::size_t groups = sla ? 5 : 3;
  if (n_cols < 2 + groups || (n_cols - 2) % groups != 0) {
    throw std::runtime_error("trace-source: unrecognized trace header in " + path);
  }
  const Eigen::Index m = static_cast<Eigen::Index>((n_cols - 2) / groups);

  std::vector<TraceSlot> slots;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("trace-source: non-numeric cell at line " +
                                 std::to_string(line_no) + " in " + path);
      }
    }
    if (row.size() != n_cols) {
      throw std::runtime_error("trace-source: line " + std::to_string(line_no) +
                               " has " + std::to_string(row.size()) +
                               " columns, expected " + std::to_string(n_cols));
    }
    TraceSlot s;
    s.demand = row[1];
    auto grab = [&](std::size_t start) {
      Eigen::VectorXd v(m);
      for (Eigen::Index i = 0; i < m; ++i) v(i) = row[start + i];
      return v;
    };
    s.price_adv = grab(2);
    s.price_spot = grab(2 + m);
    s.theta = grab(2 + 2 * m);
    if (sla) {
      s.alpha = grab(2 + 3 * m);
      s.beta = grab(2 + 4 * m);
    }
    slots.push_back(std::move(s));
  }
  if (slots.empty()) {
    throw std::runtime_error("trace-source: " + path + " has no data rows");
  }
  return slots;
}

}  // namespace oolr
