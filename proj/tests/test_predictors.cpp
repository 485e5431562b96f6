#include <doctest.h>

#include <cmath>
#include <random>

#include "oolr/predictors.hpp"
#include "oracles.hpp"

using namespace oolr;

TEST_CASE("arma_predict combines the lag window once it is full") {
  ArmaOgdState s = arma_init(1, ArmaOgdConfig{2, 0.5, 1.0});
  s.coeffs << 0.5, 0.5;
  s.history << 2.0, 4.0;  // newest first
  s.filled = 2;
  const Prediction p = arma_predict(s);
  CHECK(p.grad_hat(0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("arma_predict is zero before any observation") {
  const ArmaOgdState s = arma_init(4, ArmaOgdConfig{3, 0.5, 1.0});
  CHECK(arma_predict(s).grad_hat.norm() == 0.0);
}

TEST_CASE("arma_predict passes the latest value through while warming up") {
  ArmaOgdState s = arma_init(1, ArmaOgdConfig{3, 0.5, 1.0});
  s = arma_update(s, Eigen::VectorXd::Constant(1, 7.5));
  CHECK(s.filled == 1);
  CHECK(arma_predict(s).grad_hat(0) == 7.5);
}

TEST_CASE("arma_update leaves coefficients alone on an exact prediction") {
  ArmaOgdState s = arma_init(1, ArmaOgdConfig{2, 0.5, 1.0});
  s.coeffs << 0.5, 0.5;
  s.history << 2.0, 4.0;
  s.filled = 2;
  const ArmaOgdState s2 = arma_update(s, Eigen::VectorXd::Constant(1, 3.0));
  CHECK((s2.coeffs - s.coeffs).norm() == 0.0);
  CHECK(s2.history(0, 0) == 3.0);
  CHECK(s2.history(0, 1) == 2.0);
}

TEST_CASE("arma_update executes one projected gradient step") {
  // One lag, coefficient 0, window holding 1, observation 1, step 0.5:
  // error = -1, gradient = -2, so the coefficient moves to min(1, bound).
  ArmaOgdState s = arma_init(1, ArmaOgdConfig{1, 0.5, 1.0});
  s.history(0, 0) = 1.0;
  s.filled = 1;
  const ArmaOgdState s2 = arma_update(s, Eigen::VectorXd::Constant(1, 1.0));
  CHECK(s2.coeffs(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

  ArmaOgdState tight = arma_init(1, ArmaOgdConfig{1, 0.5, 0.7});
  tight.history(0, 0) = 1.0;
  tight.filled = 1;
  const ArmaOgdState t2 = arma_update(tight, Eigen::VectorXd::Constant(1, 1.0));
  CHECK(t2.coeffs(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("coefficients stay inside the clamp box under wild inputs") {
  std::mt19937_64 rng(5);
  ArmaOgdState s = arma_init(2, ArmaOgdConfig{4, 2.0, 1.0});
  for (int k = 0; k < 200; ++k) {
    Eigen::VectorXd v(2);
    v << oracles::uniform(rng, -50.0, 50.0), oracles::uniform(rng, -50.0, 50.0);
    s = arma_update(s, v);
    CHECK(s.coeffs.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
  }
}

TEST_CASE("online lag fitting approaches the noise floor on an AR(2) signal") {
  // x_t = 0.6 x_{t-1} + 0.3 x_{t-2} + eps, eps ~ N(0, 0.1^2). After T = 2000
  // slots the trailing 10% mean squared one-step error should be within
  // 1.5x the driving noise variance.
  std::mt19937_64 rng(97);
  auto normal = [&rng]() {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };
  const int T = 2000;
  double x1 = 0.0, x2 = 0.0;
  ArmaOgdState s = arma_init(1, ArmaOgdConfig{});
  double tail_sq = 0.0;
  int tail_n = 0;
  for (int t = 0; t < T; ++t) {
    const double x = 0.6 * x1 + 0.3 * x2 + 0.1 * normal();
    const double pred = arma_predict(s).grad_hat(0);
    if (t >= T - T / 10) {
      tail_sq += (pred - x) * (pred - x);
      ++tail_n;
    }
    s = arma_update(s, Eigen::VectorXd::Constant(1, x));
    x2 = x1;
    x1 = x;
  }
  const double mse = tail_sq / tail_n;
  CHECK(mse <= 1.5 * 0.01);
}

TEST_CASE("zero_predict returns a 2m zero vector regardless of call count") {
  const Prediction p = zero_predict(3);
  CHECK(p.grad_hat.size() == 6);
  CHECK(p.grad_hat.norm() == 0.0);
  CHECK((zero_predict(3).grad_hat - p.grad_hat).norm() == 0.0);
}

namespace {

TraceSlot simple_slot() {
  TraceSlot s;
  s.demand = 1.0;
  s.price_adv = Eigen::VectorXd::Constant(1, 0.3);
  s.price_spot = Eigen::VectorXd::Constant(1, 0.4);
  s.theta = Eigen::VectorXd::Constant(1, 1.0);
  return s;
}

}  // namespace

TEST_CASE("synthetic predictor with zeta 0 reproduces the induced gradient") {
  // With a constant probe the fixed point is immediate and the forecast is
  // the exact gradient at the decision the learner will play.
  const TraceSlot next = simple_slot();
  const Decision z{Eigen::VectorXd::Constant(1, 0.25),
                   Eigen::VectorXd::Constant(1, 0.5)};
  SyntheticPredictor sp(SyntheticPredictorConfig{0.0, 42, 20, 1e-10});
  const Prediction p =
      sp.predict(next, [&](const Prediction&) { return z; }, LossConfig{2.0});
  const GradVector g = loss_gradient(next, z, LossConfig{2.0});
  CHECK((p.grad_hat - g).norm() == 0.0);
  CHECK(sp.nonconverged_count() == 0);
}

TEST_CASE("synthetic perturbation scales every coordinate by 1 + s*zeta") {
  const TraceSlot next = simple_slot();
  const Decision z{Eigen::VectorXd::Constant(1, 0.25),
                   Eigen::VectorXd::Constant(1, 0.5)};
  const GradVector g = loss_gradient(next, z, LossConfig{2.0});

  for (double zeta : {0.3, 4.0}) {
    SyntheticPredictor sp(SyntheticPredictorConfig{zeta, 7, 20, 1e-10});
    const Prediction p =
        sp.predict(next, [&](const Prediction&) { return z; }, LossConfig{2.0});
    const double ratio = p.grad_hat(0) / g(0);
    const bool plus = std::abs(ratio - (1.0 + zeta)) < 1e-12;
    const bool minus = std::abs(ratio - (1.0 - zeta)) < 1e-12;
    CHECK((plus || minus));
    // Both coordinates share the slot's sign draw.
    CHECK(p.grad_hat(1) / g(1) == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("synthetic relative error is exactly zeta per coordinate") {
  const TraceSlot next = simple_slot();
  const Decision z{Eigen::VectorXd::Constant(1, 0.25),
                   Eigen::VectorXd::Constant(1, 0.5)};
  const GradVector g = loss_gradient(next, z, LossConfig{2.0});
  const double zeta = 0.3;
  SyntheticPredictor sp(SyntheticPredictorConfig{zeta, 19, 20, 1e-10});
  double total_rel = 0.0;
  int plus = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const Prediction p =
        sp.predict(next, [&](const Prediction&) { return z; }, LossConfig{2.0});
    const double rel = std::abs(p.grad_hat(0) - g(0)) / std::abs(g(0));
    CHECK(rel == doctest::Approx(zeta).epsilon(1e-9));
    total_rel += rel;
    if (p.grad_hat(0) / g(0) > 1.0) ++plus;
  }
  CHECK(total_rel / n == doctest::Approx(zeta).epsilon(1e-9));
  // Signs are actually random.
  CHECK(plus > n / 3);
  CHECK(plus < 2 * n / 3);
}

TEST_CASE("identical seeds give identical prediction sequences") {
  const TraceSlot next = simple_slot();
  const Decision z{Eigen::VectorXd::Constant(1, 0.25),
                   Eigen::VectorXd::Constant(1, 0.5)};
  SyntheticPredictor a(SyntheticPredictorConfig{0.7, 123, 20, 1e-10});
  SyntheticPredictor b(SyntheticPredictorConfig{0.7, 123, 20, 1e-10});
  for (int k = 0; k < 50; ++k) {
    const Prediction pa =
        a.predict(next, [&](const Prediction&) { return z; }, LossConfig{2.0});
    const Prediction pb =
        b.predict(next, [&](const Prediction&) { return z; }, LossConfig{2.0});
    CHECK((pa.grad_hat - pb.grad_hat).norm() == 0.0);
  }
}
