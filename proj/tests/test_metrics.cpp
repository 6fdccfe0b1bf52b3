#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "forestmetrics/metrics.hpp"
#include "forestmetrics/perturbation.hpp"
#include "generators.hpp"

using forest::accessibility_matrix;
using forest::adjusted_forest_distance_matrix;
using forest::forest_distance_matrix;

TEST_CASE("forest distance goldens") {
  const auto dk2 = forest_distance_matrix(accessibility_matrix(testgen::k2(), 1.0));
  CHECK(dk2.d(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(dk2.d(0, 0) == 0.0);

  const auto dp3 = forest_distance_matrix(accessibility_matrix(testgen::p3(), 1.0));
  CHECK(dp3.d(0, 1) == doctest::Approx(5.0 / 16.0).epsilon(1e-15));
  CHECK(dp3.d(1, 2) == doctest::Approx(5.0 / 16.0).epsilon(1e-15));
  CHECK(dp3.d(0, 2) == doctest::Approx(0.5).epsilon(1e-15));

  // two isolated vertices sit at the maximal distance 1, exactly
  const auto iso = forest_distance_matrix(accessibility_matrix(testgen::edgeless(2), 3.0));
  CHECK(iso.d(0, 1) == 1.0);
}

TEST_CASE("adjusted forest distance goldens") {
  const auto rk2 = adjusted_forest_distance_matrix(accessibility_matrix(testgen::k2(), 1.0));
  CHECK(rk2.d(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const auto iso = adjusted_forest_distance_matrix(accessibility_matrix(testgen::edgeless(2), 3.0));
  CHECK(iso.d(0, 1) == 6.0);  // 2*alpha, exactly

  const auto big = adjusted_forest_distance_matrix(accessibility_matrix(testgen::k2(), 1000.0));
  CHECK(big.d(0, 1) == doctest::Approx(2000.0 / 2001.0).epsilon(1e-13));
}

TEST_CASE("rho equals 2*alpha*d exactly as computed") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    testgen::GraphOptions opt;
    opt.max_n = 15;
    const auto g = testgen::random_graph(rng, opt);
    const double alpha = 0.125 * (1 + static_cast<int>(rng() % 40));
    const auto q = accessibility_matrix(g, alpha);
    const auto d = forest_distance_matrix(q);
    const auto rho = adjusted_forest_distance_matrix(q);
    for (int i = 0; i < g.vertex_count(); ++i)
      for (int j = 0; j < g.vertex_count(); ++j)
        CHECK(rho.d(i, j) == 2.0 * (alpha * d.d(i, j)));
  }
}

TEST_CASE("cumulative weight of connections") {
  const auto rk2 = adjusted_forest_distance_matrix(accessibility_matrix(testgen::k2(), 1.0));
  CHECK(forest::cumulative_weight(rk2, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));

  const auto iso = adjusted_forest_distance_matrix(accessibility_matrix(testgen::edgeless(2), 1.0));
  CHECK(forest::cumulative_weight(iso, 0, 1) == doctest::Approx(0.0).epsilon(1e-15));

  // indirectly connected pair: theta exceeds the direct pair weight (0 here)
  const auto rp3 = adjusted_forest_distance_matrix(accessibility_matrix(testgen::p3(), 1.0));
  CHECK(forest::cumulative_weight(rp3, 0, 2) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(forest::cumulative_weight(rk2, 0, 0), forest::DomainError);
  const auto d = forest_distance_matrix(accessibility_matrix(testgen::k2(), 1.0));
  CHECK_THROWS_AS(forest::cumulative_weight(d, 0, 1), forest::DomainError);
}

TEST_CASE("theta is additive in the direct pair weight") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    testgen::GraphOptions opt;
    opt.min_n = 2;
    opt.max_n = 12;
    const auto g = testgen::random_graph(rng, opt);
    const int n = g.vertex_count();
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (i == j) j = (j + 1) % n;
    const double eps_ij = g.total_pair_weight(i, j);
    // remove every (i,j) edge
    std::vector<forest::Edge> rest;
    for (const auto& e : g.edges())
      if (!((e.u == i && e.v == j) || (e.u == j && e.v == i)))
        rest.push_back(e);
    const forest::WeightedMultigraph stripped(n, rest);
    const double alpha = 1.0 + (rng() % 3);
    const auto rho_full = adjusted_forest_distance_matrix(accessibility_matrix(g, alpha));
    const auto rho_stripped =
        adjusted_forest_distance_matrix(accessibility_matrix(stripped, alpha));
    const double theta_full = forest::cumulative_weight(rho_full, i, j);
    const double theta_stripped = forest::cumulative_weight(rho_stripped, i, j);
    CHECK(theta_full == doctest::Approx(theta_stripped + eps_ij).epsilon(1e-9));
    CHECK(theta_full >= eps_ij - 1e-9);
  }
}

TEST_CASE("tau and pi profiles of P3") {
  const auto q = accessibility_matrix(testgen::p3(), 1.0);
  const auto d = forest_distance_matrix(q);
  const auto tau = forest::tau_profile(d, 0, 2);
  CHECK(tau.values(0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(tau.values(1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tau.values(2) == doctest::Approx(0.5).epsilon(1e-15));

  const auto pi = forest::pi_profile(q, 0, 2);
  CHECK(pi.values(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pi.values(1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(pi.values(2) == doctest::Approx(-0.5).epsilon(1e-15));

  CHECK_THROWS_AS(forest::tau_profile(d, 1, 1), forest::DomainError);
  CHECK_THROWS_AS(forest::pi_profile(q, 2, 2), forest::DomainError);
}

TEST_CASE("profile identities hold on random graphs") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    testgen::GraphOptions opt;
    opt.min_n = 2;
    opt.max_n = 15;
    const auto g = testgen::random_graph(rng, opt);
    const int n = g.vertex_count();
    const auto q = accessibility_matrix(g, 0.5 + (rng() % 4));
    const auto d = forest_distance_matrix(q);
    const int k = static_cast<int>(rng() % n);
    int t = static_cast<int>(rng() % n);
    if (k == t) t = (t + 1) % n;
    const auto tau = forest::tau_profile(d, k, t);
    const auto pi = forest::pi_profile(q, k, t);
    // endpoint identity tau_t = d_kt = -tau_k
    CHECK(tau.values(t) == doctest::Approx(d.d(k, t)).epsilon(1e-12));
    CHECK(tau.values(k) == doctest::Approx(-d.d(k, t)).epsilon(1e-12));
    // 2 d_kt = pi_k - pi_t
    CHECK(std::abs(2.0 * d.d(k, t) - (pi.values(k) - pi.values(t))) <= 1e-12);
    for (int i = 0; i < n; ++i) {
      // 2 tau_i = (pi_k - pi_i) + (pi_t - pi_i)
      CHECK(std::abs(2.0 * tau.values(i) - ((pi.values(k) - pi.values(i)) +
                                            (pi.values(t) - pi.values(i)))) <=
            1e-12);
      for (int j = 0; j < n; ++j)
        CHECK(std::abs((tau.values(i) - tau.values(j)) -
                       (pi.values(j) - pi.values(i))) <= 1e-12);
    }
  }
}

TEST_CASE("diameter") {
  const auto dp3 = forest_distance_matrix(accessibility_matrix(testgen::p3(), 1.0));
  CHECK(forest::diameter(dp3) == doctest::Approx(0.5).epsilon(1e-15));
  const auto iso = forest_distance_matrix(accessibility_matrix(testgen::edgeless(2), 1.0));
  CHECK(forest::diameter(iso) == 1.0);
  const auto single = forest_distance_matrix(accessibility_matrix(testgen::edgeless(1), 1.0));
  CHECK(forest::diameter(single) == 0.0);
}

TEST_CASE("algebraic connectivity") {
  CHECK(forest::algebraic_connectivity(forest::build_laplacian(testgen::k2())) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(forest::algebraic_connectivity(forest::build_laplacian(testgen::p3())) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const auto disconnected =
      testgen::disjoint_union(testgen::k2(), testgen::k2());
  CHECK(std::abs(forest::algebraic_connectivity(
            forest::build_laplacian(disconnected))) <= 1e-9);
  CHECK_THROWS_AS(forest::algebraic_connectivity(
                      forest::build_laplacian(testgen::edgeless(1))),
                  forest::DomainError);
}

TEST_CASE("bounds report goldens") {
  const auto g = testgen::k2();
  const auto q = accessibility_matrix(g, 1.0);
  const auto d = forest_distance_matrix(q);
  const auto rho = adjusted_forest_distance_matrix(q);
  const auto report = forest::bounds_report(g, q, d, rho);
  CHECK(report.passed);
  REQUIRE(report.algebraic_connectivity.has_value());
  CHECK(*report.algebraic_connectivity == doctest::Approx(2.0).epsilon(1e-12));
  // K2 attains the connectivity bound and the pair-weight bound exactly
  const int alco = static_cast<int>(forest::PairBound::dist_connectivity);
  const int pw = static_cast<int>(forest::PairBound::dist_pair_weight);
  CHECK(std::abs(report.stats[alco].min_slack) <= 1e-15);
  CHECK(std::abs(report.stats[pw].min_slack) <= 1e-15);

  const auto gp = testgen::p3();
  const auto qp = accessibility_matrix(gp, 1.0);
  const auto reportp =
      forest::bounds_report(gp, qp, forest_distance_matrix(qp),
                            adjusted_forest_distance_matrix(qp));
  CHECK(reportp.passed);
  // adjacent P3 pair: d = 5/16 strictly under the pair-weight bound 1/3
  CHECK(reportp.slack[pw](0, 1) ==
        doctest::Approx(1.0 / 3.0 - 5.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("bounds hold on random graphs") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    testgen::GraphOptions opt;
    opt.min_n = 2;
    opt.max_n = 30;
    opt.max_extra_edges = 20;
    const auto g = testgen::random_graph(rng, opt);
    for (double alpha : {0.1, 1.0, 10.0}) {
      const auto q = accessibility_matrix(g, alpha);
      const auto report = forest::bounds_report(
          g, q, forest_distance_matrix(q), adjusted_forest_distance_matrix(q));
      CHECK(report.passed);
    }
  }
}

TEST_CASE("distance maxima are attained exactly on isolated pairs") {
  // isolated pair: equality
  const auto q = accessibility_matrix(testgen::edgeless(2), 2.0);
  CHECK(forest_distance_matrix(q).d(0, 1) == 1.0);
  CHECK(adjusted_forest_distance_matrix(q).d(0, 1) == 4.0);
  // any connection breaks it strictly
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = testgen::random_connected_graph(rng, 2, 10);
    const auto d = forest_distance_matrix(accessibility_matrix(g, 1.0));
    for (int i = 0; i < g.vertex_count(); ++i)
      for (int j = i + 1; j < g.vertex_count(); ++j)
        CHECK(d.d(i, j) < 1.0);
  }
}

TEST_CASE("metric axiom verification") {
  const auto dp3 = forest_distance_matrix(accessibility_matrix(testgen::p3(), 1.0));
  CHECK(forest::verify_metric_axioms(dp3, 1e-9).passed);

  std::mt19937_64 rng(46);
  testgen::GraphOptions opt;
  opt.min_n = 20;
  opt.max_n = 20;
  opt.max_extra_edges = 30;
  const auto g = testgen::random_graph(rng, opt);
  const auto q = accessibility_matrix(g, 1.0);
  CHECK(forest::verify_metric_axioms(forest_distance_matrix(q), 1e-9).passed);
  CHECK(forest::verify_metric_axioms(adjusted_forest_distance_matrix(q), 1e-9)
            .passed);

  // constructed violation: d(1,3) > d(1,2) + d(2,3)
  Eigen::Matrix3d bad;
  bad << 0.0, 0.1, 1.0,
         0.1, 0.0, 0.1,
         1.0, 0.1, 0.0;
  const auto report = forest::verify_metric_axioms(bad, 1e-9);
  CHECK_FALSE(report.passed);
  CHECK(report.tri_i == 0);
  CHECK(report.tri_k == 1);
  CHECK(report.tri_j == 2);
  CHECK(report.detail.find("triangle violated") != std::string::npos);
}
