#include <doctest.h>

#include <random>

#include "oolr/domain.hpp"
#include "oracles.hpp"

using namespace oolr;

TEST_CASE("project clamps to the box edges") {
  const FeasibleBox box = uniform_box(1, 1.0);
  const Decision z = project((Eigen::VectorXd(2) << 1.5, -0.2).finished(), box);
  CHECK(z.x(0) == 1.0);
  CHECK(z.y(0) == 0.0);
}

TEST_CASE("project is the identity on interior points") {
  const FeasibleBox box = uniform_box(1, 1.0);
  const Decision z = project((Eigen::VectorXd(2) << 0.5, 0.5).finished(), box);
  CHECK(z.x(0) == 0.5);
  CHECK(z.y(0) == 0.5);
}

TEST_CASE("project clamps each coordinate to its own bound") {
  const FeasibleBox box = make_box((Eigen::VectorXd(2) << 1.0, 0.5).finished());
  const Decision z =
      project((Eigen::VectorXd(4) << 2.0, 2.0, 2.0, 2.0).finished(), box);
  CHECK(z.x(0) == 1.0);
  CHECK(z.x(1) == 0.5);
  CHECK(z.y(0) == 1.0);
  CHECK(z.y(1) == 0.5);
}

TEST_CASE("project rejects dimension mismatches") {
  const FeasibleBox box = uniform_box(2, 1.0);
  CHECK_THROWS_WITH_AS(project(Eigen::VectorXd::Zero(3), box),
                       doctest::Contains("dimension"), std::invalid_argument);
}

TEST_CASE("diameter of the unit cube box is sqrt(3)") {
  CHECK(diameter(uniform_box(3, 1.0)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("diameter of a single unit box is 1") {
  CHECK(diameter(uniform_box(1, 1.0)) == 1.0);
}

TEST_CASE("diameter follows the 3-4-5 triangle") {
  CHECK(diameter(make_box((Eigen::VectorXd(2) << 3.0, 4.0).finished())) ==
        doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("decision space diameter is sqrt(2) times the box diagonal") {
  const FeasibleBox box = uniform_box(3, 1.0);
  CHECK(decision_space_diameter(box) ==
        doctest::Approx(std::sqrt(2.0 * 3.0)).epsilon(1e-12));
}

TEST_CASE("box bounds must be positive") {
  CHECK_THROWS_AS(make_box((Eigen::VectorXd(2) << 1.0, 0.0).finished()),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_box(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("projection is idempotent, feasible and distance-optimal") {
  std::mt19937_64 rng(7);
  const FeasibleBox box = make_box((Eigen::VectorXd(2) << 0.8, 1.7).finished());
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd v(4);
    for (int i = 0; i < 4; ++i) v(i) = oracles::uniform(rng, -3.0, 4.0);

    const Decision p = project(v, box);
    CHECK(contains(box, p));

    const Decision pp = project(p.stacked(), box);
    CHECK((pp.stacked() - p.stacked()).norm() == 0.0);

    // Any feasible point is at least as far from v as the projection.
    Eigen::VectorXd w(4);
    for (int i = 0; i < 4; ++i) {
      w(i) = oracles::uniform(rng, 0.0, box.bounds(i % 2));
    }
    CHECK((p.stacked() - v).norm() <= (w - v).norm() + 1e-12);
  }
}

TEST_CASE("stacked round-trips through from_stacked") {
  const Decision z{(Eigen::VectorXd(2) << 0.1, 0.2).finished(),
                   (Eigen::VectorXd(2) << 0.3, 0.4).finished()};
  const Decision r = Decision::from_stacked(z.stacked());
  CHECK((r.x - z.x).norm() == 0.0);
  CHECK((r.y - z.y).norm() == 0.0);
  CHECK_THROWS_AS(Decision::from_stacked(Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
}
