#include "oolr/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oolr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

KeyValues KeyValues::parse_text(const std::string& text, const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: " + origin + " line " +
                               std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config: " + origin + " line " +
                               std::to_string(line_no) + ": empty key");
    }
    kv.entries_[key] = value;
  }
  return kv;
}

bool KeyValues::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

std::string KeyValues::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' has non-numeric value '" +
                             it->second + "'");
  }
}

int KeyValues::get_int(const std::string& key, int fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  return static_cast<int>(v);
}

std::uint64_t KeyValues::get_uint64(const std::string& key,
                                    std::uint64_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' has non-integer value '" +
                             it->second + "'");
  }
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw std::runtime_error("config: key '" + key + "' has non-boolean value '" +
                           it->second + "'");
}

Eigen::VectorXd KeyValues::get_vector(const std::string& key,
                                      const Eigen::VectorXd& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const auto parts = split_list(it->second, ',');
  if (parts.empty()) {
    throw std::runtime_error("config: key '" + key + "' has an empty list");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v(static_cast<Eigen::Index>(i)) = std::stod(parts[i]);
    } catch (const std::exception&) {
      throw std::runtime_error("config: key '" + key + "' has non-numeric item '" +
                               parts[i] + "'");
    }
  }
  return v;
}

void KeyValues::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

ComboSpec parse_combo(const std::string& token) {
  ComboSpec combo;
  if (token == "ftrl") {
    combo.id = "ftrl";
    combo.learner = LearnerKind::Ftrl;
    combo.predictor = PredictorKind::Zero;
    return combo;
  }
  if (token.rfind("oolr", 0) != 0) {
    throw std::runtime_error("config: unknown combination '" + token + "'");
  }
  combo.learner = LearnerKind::Oolr;
  const auto colon = token.find(':');
  const std::string kind = colon == std::string::npos ? "zero" : token.substr(colon + 1);
  if (kind == "zero") {
    combo.id = "oolr-zero";
    combo.predictor = PredictorKind::Zero;
  } else if (kind == "arma") {
    combo.id = "oolr-arma";
    combo.predictor = PredictorKind::ArmaOgd;
  } else if (kind.rfind("zeta=", 0) == 0) {
    combo.predictor = PredictorKind::Synthetic;
    const std::string num = kind.substr(5);
    try {
      combo.zeta = std::stod(num);
    } catch (const std::exception&) {
      throw std::runtime_error("config: bad zeta in combination '" + token + "'");
    }
    if (combo.zeta < 0.0) {
      throw std::runtime_error("config: zeta must be >= 0 in '" + token + "'");
    }
    combo.id = "oolr-zeta" + num;
  } else {
    throw std::runtime_error("config: unknown combination '" + token + "'");
  }
  return combo;
}

ResolvedConfig resolve_config(const KeyValues& kv,
                              std::optional<std::uint64_t> seed_override,
                              const std::string& scenario_fallback) {
  ResolvedConfig rc;
  rc.scenario = kv.get_string("scenario.name", scenario_fallback);

  TraceConfig& tc = rc.trace;
  tc.T = kv.get_int("trace.T", tc.T);
  tc.m = kv.get_int("trace.m", tc.m);
  tc.seed = seed_override ? *seed_override : kv.get_uint64("trace.seed", tc.seed);
  if (tc.T < 1 || tc.m < 1) {
    throw std::runtime_error("config: trace.T and trace.m must be >= 1");
  }

  tc.price_adv.kappa = kv.get_double("trace.price_adv.kappa", tc.price_adv.kappa);
  tc.price_adv.mu = kv.get_double("trace.price_adv.mu", tc.price_adv.mu);
  tc.price_adv.std = kv.get_double("trace.price_adv.std", tc.price_adv.std);
  tc.price_adv.init = kv.get_double("trace.price_adv.init", tc.price_adv.init);
  tc.price_spot.kappa = kv.get_double("trace.price_spot.kappa", tc.price_spot.kappa);
  tc.price_spot.mu = kv.get_double("trace.price_spot.mu", tc.price_spot.mu);
  tc.price_spot.std = kv.get_double("trace.price_spot.std", tc.price_spot.std);
  tc.price_spot.init = kv.get_double("trace.price_spot.init", tc.price_spot.init);

  tc.theta.offset = kv.get_vector("trace.theta.offset", tc.theta.offset);
  tc.theta.amplitude = kv.get_vector("trace.theta.amplitude", tc.theta.amplitude);
  tc.theta.period = kv.get_vector("trace.theta.period", tc.theta.period);
  tc.theta.phase = kv.get_vector("trace.theta.phase", tc.theta.phase);
  tc.theta.kappa = kv.get_double("trace.theta.kappa", tc.theta.kappa);
  tc.theta.std = kv.get_double("trace.theta.std", tc.theta.std);

  const std::string demand_source = kv.get_string("trace.demand.source", "synthetic");
  if (demand_source == "synthetic") {
    SyntheticDemandParams d;
    d.offset = kv.get_double("trace.demand.offset", d.offset);
    d.amp_daily = kv.get_double("trace.demand.amp_daily", d.amp_daily);
    d.amp_weekly = kv.get_double("trace.demand.amp_weekly", d.amp_weekly);
    d.period_daily = kv.get_double("trace.demand.period_daily", d.period_daily);
    d.period_weekly = kv.get_double("trace.demand.period_weekly", d.period_weekly);
    d.phase_daily = kv.get_double("trace.demand.phase_daily", d.phase_daily);
    d.phase_weekly = kv.get_double("trace.demand.phase_weekly", d.phase_weekly);
    d.std = kv.get_double("trace.demand.std", d.std);
    tc.demand = d;
  } else if (demand_source == "csv") {
    CsvDemandParams d;
    d.path = kv.get_string("trace.demand.csv_path", "");
    d.column = kv.get_string("trace.demand.csv_column", "a");
    d.normalize = kv.get_bool("trace.demand.normalize", true);
    if (d.path.empty()) {
      throw std::runtime_error("config: trace.demand.csv_path is required for csv demand");
    }
    tc.demand = d;
  } else {
    throw std::runtime_error("config: trace.demand.source must be synthetic or csv");
  }

  if (kv.has("trace.sla.alpha_min") || kv.has("trace.sla.beta_min")) {
    SlaParams sla;
    sla.alpha_min = kv.get_double("trace.sla.alpha_min", 1.0);
    sla.beta_min = kv.get_double("trace.sla.beta_min", 1.0);
    if (sla.alpha_min <= 0.0 || sla.alpha_min > 1.0 || sla.beta_min <= 0.0 ||
        sla.beta_min > 1.0) {
      throw std::runtime_error("config: SLA floors must lie in (0, 1]");
    }
    tc.sla = sla;
  }

  ExperimentConfig& ec = rc.experiment;
  ec.loss.V = kv.get_double("experiment.V", ec.loss.V);
  if (ec.loss.V < 1.0) {
    throw std::runtime_error("config: experiment.V must be >= 1");
  }
  Eigen::VectorXd bounds =
      kv.get_vector("experiment.bounds", Eigen::VectorXd::Constant(1, 1.0));
  if (bounds.size() == 1 && tc.m > 1) {
    bounds = Eigen::VectorXd::Constant(tc.m, bounds(0));
  }
  if (bounds.size() != tc.m) {
    throw std::runtime_error("config: experiment.bounds needs 1 or trace.m values");
  }
  ec.box = make_box(bounds);

  ec.sigma = kv.get_string("experiment.sigma", "auto") == "auto"
                 ? 0.0
                 : kv.get_double("experiment.sigma", 0.0);
  ec.eta_scale = kv.get_string("experiment.eta_scale", "auto") == "auto"
                     ? 0.0
                     : kv.get_double("experiment.eta_scale", 0.0);

  const std::string bench = kv.get_string("experiment.benchmarks", "both");
  if (bench == "static") {
    ec.benchmarks = BenchmarkKind::Static;
  } else if (bench == "dynamic") {
    ec.benchmarks = BenchmarkKind::Dynamic;
  } else if (bench == "both") {
    ec.benchmarks = BenchmarkKind::Both;
  } else {
    throw std::runtime_error("config: experiment.benchmarks must be static, dynamic or both");
  }
  ec.solver.tol = kv.get_double("experiment.solver_tol", ec.solver.tol);
  ec.solver.max_iters = kv.get_int("experiment.solver_max_iters", ec.solver.max_iters);
  ec.T = kv.get_int("experiment.T", 0);

  ec.arma.lag_order = kv.get_int("run.arma.q", ec.arma.lag_order);
  ec.arma.step_scale = kv.get_double("run.arma.step_scale", ec.arma.step_scale);
  ec.arma.coeff_bound = kv.get_double("run.arma.coeff_bound", ec.arma.coeff_bound);
  ec.synthetic.fixed_point_iters =
      kv.get_int("run.fixed_point_iters", ec.synthetic.fixed_point_iters);
  ec.synthetic.fixed_point_tol =
      kv.get_double("run.fixed_point_tol", ec.synthetic.fixed_point_tol);
  rc.predictor_seed = kv.get_uint64("run.predictor_seed", tc.seed + 9001);

  const auto combo_tokens =
      split_list(kv.get_string("run.combos", "oolr:arma"), ',');
  for (const auto& token : combo_tokens) {
    rc.combos.push_back(parse_combo(token));
    for (std::size_t i = 0; i + 1 < rc.combos.size(); ++i) {
      if (rc.combos[i].id == rc.combos.back().id) {
        throw std::runtime_error("config: duplicate combination '" + token + "'");
      }
    }
  }
  if (rc.combos.empty()) {
    throw std::runtime_error("config: run.combos lists no combinations");
  }
  return rc;
}

namespace {

void append_kv(std::ostream& os, const std::string& key, const std::string& value) {
  os << key << " = " << value << "\n";
}

std::string demand_text(const TraceConfig& tc) {
  std::ostringstream os;
  if (const auto* syn = std::get_if<SyntheticDemandParams>(&tc.demand)) {
    append_kv(os, "trace.demand.source", "synthetic");
    append_kv(os, "trace.demand.offset", format_double(syn->offset));
    append_kv(os, "trace.demand.amp_daily", format_double(syn->amp_daily));
    append_kv(os, "trace.demand.amp_weekly", format_double(syn->amp_weekly));
    append_kv(os, "trace.demand.period_daily", format_double(syn->period_daily));
    append_kv(os, "trace.demand.period_weekly", format_double(syn->period_weekly));
    append_kv(os, "trace.demand.phase_daily", format_double(syn->phase_daily));
    append_kv(os, "trace.demand.phase_weekly", format_double(syn->phase_weekly));
    append_kv(os, "trace.demand.std", format_double(syn->std));
  } else {
    const auto& csv = std::get<CsvDemandParams>(tc.demand);
    append_kv(os, "trace.demand.source", "csv");
    append_kv(os, "trace.demand.csv_path", csv.path);
    append_kv(os, "trace.demand.csv_column", csv.column);
    append_kv(os, "trace.demand.normalize", csv.normalize ? "true" : "false");
  }
  return os.str();
}

std::string vector_text(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v(i));
  }
  return out;
}

}  // namespace

RunManifest build_manifest(const ResolvedConfig& cfg, const std::string& trace_source,
                           const std::vector<std::string>& outputs) {
  std::ostringstream os;
  append_kv(os, "scenario.name", cfg.scenario);
  append_kv(os, "trace.T", std::to_string(cfg.trace.T));
  append_kv(os, "trace.m", std::to_string(cfg.trace.m));
  append_kv(os, "trace.seed", std::to_string(cfg.trace.seed));
  for (const auto& [label, ou] :
       {std::pair<std::string, const OuParams*>{"price_adv", &cfg.trace.price_adv},
        {"price_spot", &cfg.trace.price_spot}}) {
    append_kv(os, "trace." + label + ".kappa", format_double(ou->kappa));
    append_kv(os, "trace." + label + ".mu", format_double(ou->mu));
    append_kv(os, "trace." + label + ".std", format_double(ou->std));
    append_kv(os, "trace." + label + ".init", format_double(ou->init));
  }
  append_kv(os, "trace.theta.offset", vector_text(cfg.trace.theta.offset));
  append_kv(os, "trace.theta.amplitude", vector_text(cfg.trace.theta.amplitude));
  append_kv(os, "trace.theta.period", vector_text(cfg.trace.theta.period));
  append_kv(os, "trace.theta.phase", vector_text(cfg.trace.theta.phase));
  append_kv(os, "trace.theta.kappa", format_double(cfg.trace.theta.kappa));
  append_kv(os, "trace.theta.std", format_double(cfg.trace.theta.std));
  os << demand_text(cfg.trace);
  if (cfg.trace.sla) {
    append_kv(os, "trace.sla.alpha_min", format_double(cfg.trace.sla->alpha_min));
    append_kv(os, "trace.sla.beta_min", format_double(cfg.trace.sla->beta_min));
  }
  append_kv(os, "experiment.V", format_double(cfg.experiment.loss.V));
  append_kv(os, "experiment.bounds", vector_text(cfg.experiment.box.bounds));
  append_kv(os, "experiment.sigma", format_double(resolve_sigma(cfg.experiment)));
  append_kv(os, "experiment.eta_scale",
            format_double(resolve_eta_scale(cfg.experiment)));
  append_kv(os, "experiment.benchmarks",
            cfg.experiment.benchmarks == BenchmarkKind::Static    ? "static"
            : cfg.experiment.benchmarks == BenchmarkKind::Dynamic ? "dynamic"
                                                                  : "both");
  append_kv(os, "experiment.solver_tol", format_double(cfg.experiment.solver.tol));
  append_kv(os, "experiment.solver_max_iters",
            std::to_string(cfg.experiment.solver.max_iters));
  append_kv(os, "experiment.T", std::to_string(cfg.experiment.T));
  append_kv(os, "run.arma.q", std::to_string(cfg.experiment.arma.lag_order));
  append_kv(os, "run.arma.step_scale", format_double(cfg.experiment.arma.step_scale));
  append_kv(os, "run.arma.coeff_bound",
            format_double(cfg.experiment.arma.coeff_bound));
  append_kv(os, "run.fixed_point_iters",
            std::to_string(cfg.experiment.synthetic.fixed_point_iters));
  append_kv(os, "run.fixed_point_tol",
            format_double(cfg.experiment.synthetic.fixed_point_tol));
  append_kv(os, "run.predictor_seed", std::to_string(cfg.predictor_seed));
  std::string combos;
  for (const auto& combo : cfg.combos) {
    if (!combos.empty()) combos += ",";
    combos += combo.id;
  }
  append_kv(os, "run.combos", combos);
  append_kv(os, "trace.source", trace_source);

  RunManifest man;
  man.scenario = cfg.scenario;
  man.trace_source = trace_source;
  man.outputs = outputs;
  man.resolved_text = os.str();
  man.config_hash = fnv1a64(man.resolved_text);
  return man;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << manifest.resolved_text;
    for (const auto& o : manifest.outputs) {
      out << "output = " << o << "\n";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(manifest.config_hash));
    out << "config_hash = " << buf << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move " + tmp + " to " + path);
  }
}

void write_report_csv(const std::string& path, const RegretReport& report) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << "t,loss,loss_static,loss_dynamic,regret_static,regret_dynamic,"
           "avg_regret_static,avg_regret_dynamic,h,bound\n";
    for (Eigen::Index t = 0; t < report.T(); ++t) {
      out << (t + 1) << ',' << format_double(report.loss(t)) << ','
          << format_double(report.loss_static(t)) << ','
          << format_double(report.loss_dynamic(t)) << ','
          << format_double(report.regret_static(t)) << ','
          << format_double(report.regret_dynamic(t)) << ','
          << format_double(report.avg_regret_static(t)) << ','
          << format_double(report.avg_regret_dynamic(t)) << ','
          << format_double(report.h(t)) << ',' << format_double(report.bound(t))
          << "\n";
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move " + tmp + " to " + path);
  }
}

int cli_generate(const std::string& config_path, const std::string& out_csv,
                 std::optional<std::uint64_t> seed_override, std::ostream& out,
                 std::ostream& err) {
  try {
    const auto kv = KeyValues::parse_file(config_path);
    const auto cfg = resolve_config(kv, seed_override,
                                    std::filesystem::path(config_path).stem().string());
    const auto slots = generate(cfg.trace);
    write_trace_csv(out_csv, slots);
    out << slots.size() << " rows written to " << out_csv << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_run(const std::string& config_path,
            const std::optional<std::string>& trace_csv,
            const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, std::ostream& out,
            std::ostream& err) {
  try {
    const auto kv = KeyValues::parse_file(config_path);
    ResolvedConfig cfg = resolve_config(
        kv, seed_override, std::filesystem::path(config_path).stem().string());

    std::vector<TraceSlot> trace;
    std::string trace_source;
    if (trace_csv) {
      trace = read_trace_csv(*trace_csv);
      trace_source = *trace_csv;
      if (static_cast<int>(trace.front().m()) != cfg.trace.m) {
        throw std::runtime_error("trace-source: " + *trace_csv + " has m=" +
                                 std::to_string(trace.front().m()) +
                                 ", config expects m=" + std::to_string(cfg.trace.m));
      }
    } else {
      trace = generate(cfg.trace);
      trace_source = "generated seed=" + std::to_string(cfg.trace.seed);
    }

    std::filesystem::create_directories(out_dir);

    std::vector<std::string> outputs;
    struct Row {
      std::string id;
      double avg_static;
      double avg_dynamic;
      bool oracle;
      int nonconverged;
    };
    std::vector<Row> summary;

    for (std::size_t k = 0; k < cfg.combos.size(); ++k) {
      const ComboSpec& combo = cfg.combos[k];
      ExperimentConfig ec = cfg.experiment;
      ec.learner = combo.learner;
      ec.predictor = combo.predictor;
      ec.synthetic.zeta = combo.zeta;
      ec.synthetic.rng_seed = cfg.predictor_seed + k;

      const RegretReport report = run_experiment(ec, trace);
      const std::string path =
          (std::filesystem::path(out_dir) / (combo.id + ".csv")).string();
      write_report_csv(path, report);
      // Manifests record output names relative to the run directory so that
      // identical configs produce identical manifests wherever they run.
      outputs.push_back(combo.id + ".csv");

      const Eigen::Index last = report.T() - 1;
      summary.push_back({combo.id, report.avg_regret_static(last),
                         report.avg_regret_dynamic(last), report.oracle_assisted,
                         report.fixed_point_nonconverged});
    }

    const auto manifest = build_manifest(cfg, trace_source, outputs);
    write_manifest((std::filesystem::path(out_dir) / "manifest.txt").string(),
                   manifest);

    out << "combination              avg_regret_static  avg_regret_dynamic\n";
    for (const auto& row : summary) {
      std::ostringstream line;
      line << std::left << std::setw(24) << row.id << std::right << std::setw(18)
           << std::setprecision(6) << std::scientific << row.avg_static
           << std::setw(20) << row.avg_dynamic;
      if (row.oracle) line << "  [oracle-assisted]";
      if (row.nonconverged > 0) {
        line << "  [fixed-point fallbacks: " << row.nonconverged << "]";
      }
      out << line.str() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cli_report(const std::vector<std::string>& report_csvs,
               const std::string& out_summary, std::ostream& out,
               std::ostream& err) {
  try {
    if (report_csvs.empty()) {
      throw std::runtime_error("report: no input files given");
    }
    struct Columns {
      std::string name;
      std::vector<std::string> avg_static;
      std::vector<std::string> avg_dynamic;
    };
    std::vector<Columns> all;
    for (const auto& path : report_csvs) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("report: cannot open " + path);
      std::string line;
      if (!std::getline(in, line)) {
        throw std::runtime_error("report: " + path + " is empty");
      }
      const auto header = split_list(line, ',');
      int col_s = -1, col_d = -1;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "avg_regret_static") col_s = static_cast<int>(i);
        if (header[i] == "avg_regret_dynamic") col_d = static_cast<int>(i);
      }
      if (col_s < 0 || col_d < 0) {
        throw std::runtime_error("report: " + path + " lacks average regret columns");
      }
      Columns c;
      c.name = std::filesystem::path(path).stem().string();
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_list(line, ',');
        if (static_cast<int>(cells.size()) <= std::max(col_s, col_d)) {
          throw std::runtime_error("report: short row in " + path);
        }
        c.avg_static.push_back(cells[col_s]);
        c.avg_dynamic.push_back(cells[col_d]);
      }
      if (c.avg_static.empty()) {
        throw std::runtime_error("report: " + path + " has no data rows");
      }
      all.push_back(std::move(c));
    }
    const std::size_t T = all.front().avg_static.size();
    for (const auto& c : all) {
      if (c.avg_static.size() != T) {
        throw std::runtime_error("report: horizon mismatch: " + all.front().name +
                                 " has " + std::to_string(T) + " rows, " + c.name +
                                 " has " + std::to_string(c.avg_static.size()));
      }
    }

    const std::string tmp = out_summary + ".tmp";
    {
      std::ofstream os(tmp);
      if (!os) throw std::runtime_error("cannot write " + tmp);
      os << "t";
      for (const auto& c : all) {
        os << ',' << c.name << "_avg_regret_static" << ',' << c.name
           << "_avg_regret_dynamic";
      }
      os << "\n";
      for (std::size_t t = 0; t < T; ++t) {
        os << (t + 1);
        for (const auto& c : all) {
          os << ',' << c.avg_static[t] << ',' << c.avg_dynamic[t];
        }
        os << "\n";
      }
    }
    if (std::rename(tmp.c_str(), out_summary.c_str()) != 0) {
      throw std::runtime_error("cannot move " + tmp + " to " + out_summary);
    }
    out << T << " rows joined from " << all.size() << " reports into "
        << out_summary << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oolr
