#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include <Eigen/SVD>

#include "forestmetrics/kernel.hpp"
#include "forestmetrics/metrics.hpp"
#include "forestmetrics/resistance.hpp"
#include "generators.hpp"

using forest::resistance_distance_matrix;

namespace {

// Independent pseudoinverse through an SVD, used only to cross-check the
// component-shift formula.
Eigen::MatrixXd svd_pseudoinverse(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double cutoff = 1e-10 * svd.singularValues().maxCoeff();
  Eigen::VectorXd inv = svd.singularValues();
  for (int i = 0; i < inv.size(); ++i)
    inv(i) = inv(i) > cutoff ? 1.0 / inv(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

TEST_CASE("laplacian pseudoinverse goldens") {
  const auto g = testgen::k2();
  const auto pinv =
      forest::laplacian_pseudoinverse(forest::build_laplacian(g), forest::components(g));
  Eigen::Matrix2d expected;
  expected << 0.25, -0.25, -0.25, 0.25;
  CHECK((pinv - expected).cwiseAbs().maxCoeff() <= 1e-14);

  const auto lonely = testgen::edgeless(1);
  const auto zero = forest::laplacian_pseudoinverse(
      forest::build_laplacian(lonely), forest::components(lonely));
  CHECK(zero(0, 0) == 0.0);

  const auto split = testgen::disjoint_union(testgen::k2(), testgen::p3());
  const auto block = forest::laplacian_pseudoinverse(
      forest::build_laplacian(split), forest::components(split));
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 5; ++j) {
      CHECK(block(i, j) == 0.0);
      CHECK(block(j, i) == 0.0);
    }
}

TEST_CASE("pseudoinverse satisfies the Moore-Penrose properties") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    testgen::GraphOptions opt;
    opt.max_n = 15;
    const auto g = testgen::random_graph(rng, opt);
    const auto l = forest::build_laplacian(g);
    const auto pinv = forest::laplacian_pseudoinverse(l, forest::components(g));
    CHECK((l.entries * pinv * l.entries - l.entries).cwiseAbs().maxCoeff() <=
          1e-9);
    CHECK((pinv * l.entries * pinv - pinv).cwiseAbs().maxCoeff() <= 1e-9);
    const Eigen::MatrixXd lp = l.entries * pinv;
    CHECK((lp - lp.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    // cross-check against an SVD pseudoinverse
    CHECK((pinv - svd_pseudoinverse(l.entries)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("resistance distance goldens") {
  const auto k2 = resistance_distance_matrix(testgen::k2());
  CHECK_FALSE(k2(0, 1).infinite());
  CHECK(k2(0, 1).value() == doctest::Approx(1.0).epsilon(1e-13));

  const auto tri = resistance_distance_matrix(testgen::cycle(3));
  CHECK(tri(0, 1).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  forest::WeightedMultigraph k2_plus(3, {{0, 1, 1.0}});
  const auto mixed = resistance_distance_matrix(k2_plus);
  CHECK(mixed(0, 1).value() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mixed(0, 2).infinite());
  CHECK(mixed(2, 0).infinite());
  CHECK_FALSE(mixed(2, 2).infinite());
  CHECK(mixed(2, 2).value() == 0.0);
}

TEST_CASE("resistance satisfies the metric axioms on each component") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 15; ++trial) {
    testgen::GraphOptions opt;
    opt.max_n = 12;
    const auto g = testgen::random_graph(rng, opt);
    const int n = g.vertex_count();
    const auto parts = forest::components(g);
    const auto r = resistance_distance_matrix(g);
    for (int i = 0; i < n; ++i) {
      CHECK(r(i, i).value() == 0.0);
      for (int j = 0; j < n; ++j) {
        CHECK(r(i, j).infinite() == !parts.same_component(i, j));
        if (r(i, j).infinite()) continue;
        CHECK(r(i, j).value() >= -1e-12);
        CHECK(r(i, j).value() == doctest::Approx(r(j, i).value()).epsilon(1e-12));
        for (int k = 0; k < n; ++k) {
          if (!parts.same_component(i, k)) continue;
          CHECK(r(i, j).value() <=
                r(i, k).value() + r(k, j).value() + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("small-alpha limit approaches the discrete metric") {
  const auto k2 = forest::limit_small_alpha(testgen::k2(), {1e-6});
  REQUIRE(k2.rows.size() == 1);
  // 1 - 1/(1 + 2e-6) within 3e-6
  CHECK(*k2.rows[0].max_defect_d <= 3e-6);

  const auto none = forest::limit_small_alpha(testgen::edgeless(3), {0.5, 1e-3});
  for (const auto& row : none.rows) CHECK(*row.max_defect_d == 0.0);

  const auto p3 = forest::limit_small_alpha(testgen::p3(), {1e-2, 1e-4, 1e-6});
  REQUIRE(p3.rows.size() == 3);
  CHECK(p3.rows[0].alpha == 1e-2);  // descending grid
  CHECK(*p3.rows[0].max_defect_d > *p3.rows[1].max_defect_d);
  CHECK(*p3.rows[1].max_defect_d > *p3.rows[2].max_defect_d);
  // defect shrinks roughly linearly in alpha
  CHECK(*p3.rows[2].max_defect_d <= 1e-4);
}

TEST_CASE("large-alpha limit approaches the resistance metric") {
  const auto k2 = forest::limit_large_alpha(testgen::k2(), {1000.0});
  REQUIRE(k2.rows.size() == 1);
  CHECK(*k2.rows[0].max_defect_rho ==
        doctest::Approx(1.0 / 2001.0).epsilon(1e-9));
  CHECK_FALSE(k2.rows[0].theta_cross_max.has_value());  // no cross pairs

  forest::WeightedMultigraph k2_plus(3, {{0, 1, 1.0}});
  const auto mixed = forest::limit_large_alpha(k2_plus, {1e2, 1e4, 1e6});
  REQUIRE(mixed.rows.size() == 3);
  // d(0,2) tends to (1/2 + 1)/2 = 3/4; defect shrinks with alpha
  CHECK(*mixed.rows[2].max_defect_d <= 1e-5);
  REQUIRE(mixed.rows[0].theta_cross_max.has_value());
  CHECK(*mixed.rows[0].theta_cross_max > *mixed.rows[2].theta_cross_max);
  CHECK(*mixed.rows[2].theta_cross_max <= 1e-5);

  // connected graph: d^infinity vanishes
  const auto conn = forest::limit_large_alpha(testgen::p3(), {1e6});
  CHECK(*conn.rows[0].max_defect_d <= 2e-6);
}

TEST_CASE("rho is nondecreasing in alpha toward the resistance distance") {
  for (const auto& g : {testgen::k2(), testgen::p3(), testgen::cycle(4)}) {
    const auto rt = resistance_distance_matrix(g);
    double previous = -1.0;
    for (double alpha : {0.1, 1.0, 10.0, 100.0}) {
      const auto rho = forest::adjusted_forest_distance_matrix(
          forest::accessibility_matrix(g, alpha));
      CHECK(rho.d(0, 1) >= previous - 1e-12);
      CHECK(rho.d(0, 1) <= rt(0, 1).value() + 1e-12);
      previous = rho.d(0, 1);
    }
  }
}

TEST_CASE("alpha-extension identity") {
  // K2: resistance across the unit triangle is 2/3 = 2*(1/3)
  CHECK(forest::alpha_extension_identity_check(testgen::k2(), 1.0, 1e-12).passed);
  // edgeless pair: series resistors through the source give 2 = 2*1
  const auto ext = forest::alpha_extension(testgen::edgeless(2), 1.0);
  CHECK(resistance_distance_matrix(ext)(0, 1).value() ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(forest::alpha_extension_identity_check(testgen::edgeless(2), 1.0, 1e-12)
            .passed);
  // P3: resistance on the 4-vertex extension equals 2*(1/2)
  const auto extp3 = forest::alpha_extension(testgen::p3(), 1.0);
  CHECK(resistance_distance_matrix(extp3)(0, 2).value() ==
        doctest::Approx(1.0).epsilon(1e-13));

  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    testgen::GraphOptions opt;
    opt.max_n = 20;
    const auto g = testgen::random_graph(rng, opt);
    for (double alpha : {0.1, 1.0, 10.0})
      CHECK(forest::alpha_extension_identity_check(g, alpha, 1e-8).passed);
  }
}

TEST_CASE("alpha grids are validated") {
  CHECK_THROWS_AS(forest::limit_small_alpha(testgen::k2(), {}),
                  forest::DomainError);
  CHECK_THROWS_AS(forest::limit_small_alpha(testgen::k2(), {1.0, -2.0}),
                  forest::DomainError);
  CHECK_THROWS_AS(forest::limit_large_alpha(testgen::k2(), {0.0}),
                  forest::DomainError);
}
