#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oolr/traces.hpp"

using namespace oolr;

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("noiseless config produces a constant trace") {
  TraceConfig cfg;
  cfg.T = 16;
  cfg.m = 2;
  cfg.price_adv = OuParams{0.1, 0.5, 0.0, 0.5};
  cfg.price_spot = OuParams{0.1, 0.8, 0.0, 0.8};
  cfg.theta.offset = Eigen::VectorXd::Constant(1, 0.6);
  cfg.theta.amplitude = Eigen::VectorXd::Constant(1, 0.0);
  cfg.theta.std = 0.0;
  SyntheticDemandParams d;
  d.offset = 0.7;
  d.amp_daily = 0.0;
  d.amp_weekly = 0.0;
  d.std = 0.0;
  cfg.demand = d;

  const auto slots = generate(cfg);
  REQUIRE(slots.size() == 16);
  for (const auto& s : slots) {
    CHECK(s.demand == 1.0);  // constant series max-normalizes to one
    CHECK(s.price_adv(0) == 0.5);
    CHECK(s.price_adv(1) == 0.5);
    CHECK(s.price_spot(0) == 0.8);
    CHECK(s.theta(0) == 0.6);
    CHECK(!s.alpha.has_value());
  }
}

TEST_CASE("identical seeds give identical traces, different seeds differ") {
  TraceConfig cfg;
  cfg.T = 64;
  cfg.m = 3;
  cfg.seed = 11;
  const auto a = generate(cfg);
  const auto b = generate(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].demand == b[t].demand);
    CHECK((a[t].price_adv - b[t].price_adv).norm() == 0.0);
    CHECK((a[t].price_spot - b[t].price_spot).norm() == 0.0);
    CHECK((a[t].theta - b[t].theta).norm() == 0.0);
  }
  cfg.seed = 12;
  const auto c = generate(cfg);
  bool any_diff = false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].demand != c[t].demand) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("everything generated is nonnegative") {
  TraceConfig cfg;
  cfg.T = 2000;
  cfg.m = 3;
  cfg.seed = 3;
  cfg.price_adv.std = 0.4;  // noisy enough to hit the clamp
  cfg.theta.std = 0.4;
  for (const auto& s : generate(cfg)) {
    CHECK(s.demand >= 0.0);
    CHECK(s.price_adv.minCoeff() >= 0.0);
    CHECK(s.price_spot.minCoeff() >= 0.0);
    CHECK(s.theta.minCoeff() >= 0.0);
  }
}

TEST_CASE("fulfillment ratios respect the configured floors and mean") {
  TraceConfig cfg;
  cfg.T = 10000;
  cfg.m = 1;
  cfg.seed = 21;
  cfg.sla = SlaParams{0.8, 1.0};
  double alpha_sum = 0.0;
  const auto slots = generate(cfg);
  for (const auto& s : slots) {
    REQUIRE(s.alpha.has_value());
    REQUIRE(s.beta.has_value());
    CHECK((*s.alpha)(0) >= 0.8);
    CHECK((*s.alpha)(0) <= 1.0);
    CHECK((*s.beta)(0) == 1.0);  // floor 1 means full delivery
    alpha_sum += (*s.alpha)(0);
  }
  const double mean = alpha_sum / static_cast<double>(slots.size());
  CHECK(std::abs(mean - 0.9) < 0.01);
}

TEST_CASE("mean reversion holds the long-run level") {
  TraceConfig cfg;
  cfg.T = 50000;
  cfg.m = 1;
  cfg.seed = 5;
  cfg.price_adv = OuParams{0.5, 1.0, 0.05, 1.0};
  double sum = 0.0;
  const auto slots = generate(cfg);
  for (const auto& s : slots) sum += s.price_adv(0);
  CHECK(std::abs(sum / cfg.T - 1.0) < 0.02);
}

TEST_CASE("changing only the SLA floors keeps the base series identical") {
  TraceConfig cfg;
  cfg.T = 32;
  cfg.m = 2;
  cfg.seed = 77;
  cfg.sla = SlaParams{0.5, 1.0};
  const auto a = generate(cfg);
  cfg.sla = SlaParams{0.95, 1.0};
  const auto b = generate(cfg);
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a[t].demand == b[t].demand);
    CHECK((a[t].price_adv - b[t].price_adv).norm() == 0.0);
    CHECK((a[t].theta - b[t].theta).norm() == 0.0);
    CHECK((*a[t].alpha - *b[t].alpha).norm() != 0.0);
  }
}

TEST_CASE("demand csv ingestion normalizes to the maximum") {
  const std::string path = temp_file("oolr_demand_test.csv");
  {
    std::ofstream out(path);
    out << "t,a\n1,2\n2,4\n3,8\n";
  }
  const auto v = ingest_demand_csv(path, "a", true);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.25);
  CHECK(v[1] == 0.5);
  CHECK(v[2] == 1.0);
  std::filesystem::remove(path);
}

TEST_CASE("demand csv ingestion passes values through without normalize") {
  const std::string path = temp_file("oolr_demand_plain.csv");
  {
    std::ofstream out(path);
    out << "a\n5\n";
  }
  const auto v = ingest_demand_csv(path, "a", false);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 5.0);
  std::filesystem::remove(path);
}

TEST_CASE("demand csv errors name the offending line") {
  const std::string path = temp_file("oolr_demand_bad.csv");
  {
    std::ofstream out(path);
    out << "a\n1.5\nnot-a-number\n2.5\n";
  }
  CHECK_THROWS_WITH_AS(ingest_demand_csv(path, "a", false),
                       doctest::Contains("line 3"), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("missing demand csv raises a trace-source error") {
  CHECK_THROWS_WITH_AS(ingest_demand_csv("/nonexistent/demand.csv", "a", false),
                       doctest::Contains("trace-source"), std::runtime_error);
}

TEST_CASE("short demand csv raises a trace-source error at generation") {
  const std::string path = temp_file("oolr_demand_short.csv");
  {
    std::ofstream out(path);
    out << "a\n1\n2\n";
  }
  TraceConfig cfg;
  cfg.T = 10;
  cfg.m = 1;
  CsvDemandParams d;
  d.path = path;
  d.column = "a";
  cfg.demand = d;
  CHECK_THROWS_WITH_AS(generate(cfg), doctest::Contains("trace-source"),
                       std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("trace csv export is byte-identical across reruns and round-trips") {
  TraceConfig cfg;
  cfg.T = 40;
  cfg.m = 2;
  cfg.seed = 31;
  cfg.sla = SlaParams{0.7, 0.9};
  const auto slots = generate(cfg);

  const std::string pa = temp_file("oolr_trace_a.csv");
  const std::string pb = temp_file("oolr_trace_b.csv");
  write_trace_csv(pa, slots);
  write_trace_csv(pb, generate(cfg));
  CHECK(read_all(pa) == read_all(pb));

  const auto back = read_trace_csv(pa);
  REQUIRE(back.size() == slots.size());
  for (std::size_t t = 0; t < slots.size(); ++t) {
    CHECK(back[t].demand == slots[t].demand);
    CHECK((back[t].price_adv - slots[t].price_adv).norm() == 0.0);
    CHECK((back[t].price_spot - slots[t].price_spot).norm() == 0.0);
    CHECK((back[t].theta - slots[t].theta).norm() == 0.0);
    CHECK((*back[t].alpha - *slots[t].alpha).norm() == 0.0);
    CHECK((*back[t].beta - *slots[t].beta).norm() == 0.0);
  }
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);
}

TEST_CASE("trace csv header matches the documented format") {
  TraceConfig cfg;
  cfg.T = 2;
  cfg.m = 2;
  const std::string path = temp_file("oolr_trace_header.csv");
  write_trace_csv(path, generate(cfg));
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,a,p_1,p_2,q_1,q_2,theta_1,theta_2");
  std::filesystem::remove(path);
}
