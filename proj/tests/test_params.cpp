#include <doctest.h>

#include "ebs/params.hpp"

using namespace ebs;
using namespace ebs::params;

TEST_CASE("epsilon_opt") {
  CHECK(epsilon_opt(0, 17, 0, 10'000).value == 0.0);
  // (40 * 20) / (2 * 10000)
  CHECK(epsilon_opt(40, 20, 0, 10'000).value == doctest::Approx(0.04));
  CHECK(epsilon_opt(50, 4, 0, 10'000).value == doctest::Approx(0.01));
  CHECK(epsilon_opt(0, 0, 25, 1'000).value == doctest::Approx(0.05));
  CHECK_FALSE(epsilon_opt(50, 4, 0, 10'000).warning.has_value());

  const auto clamped = epsilon_opt(1'000, 20, 0, 10'000);
  CHECK(clamped.value == 0.5);
  CHECK(clamped.warning.has_value());

  CHECK_THROWS_AS(epsilon_opt(40, 20, 0, 0), std::invalid_argument);
  CHECK(epsilon_opt(40, 21, 0, 10'000).value > epsilon_opt(40, 20, 0, 10'000).value);
  CHECK(epsilon_opt(40, 20, 0, 20'000).value < epsilon_opt(40, 20, 0, 10'000).value);
}

TEST_CASE("sigma_max") {
  CHECK(sigma_max(0.1, 0, 10'000).value == doctest::Approx(0.1 / 0.9));
  CHECK(sigma_max(0.01, 0, 10'000).value == doctest::Approx(0.01 / 0.99));
  CHECK_FALSE(sigma_max(0.01, 0, 10'000).warning.has_value());

  const auto none = sigma_max_for_delta(0.1, 0.05);
  CHECK(none.value == doctest::Approx(0.0));
  CHECK(none.warning.has_value());
  CHECK(sigma_max(0.1, 500, 10'000).warning.has_value());

  CHECK_THROWS_AS(sigma_max(1.0, 0, 10'000), std::invalid_argument);
  CHECK_THROWS_AS(sigma_max(0.0, 0, 10'000), std::invalid_argument);
}

TEST_CASE("adaptive_c") {
  CHECK(adaptive_c(50, 4, 80) == 160);
  CHECK(adaptive_c(50, 20, 80) == 800);
  CHECK(adaptive_c(50, 1, 100) == 50);
  CHECK(adaptive_c(50, 0, 80) == 0);
  for (int n = 0; n < 30; ++n) CHECK(adaptive_c(37, n, 100) == 37 * n);
  CHECK_THROWS_AS(adaptive_c(0, 4, 80), std::invalid_argument);
  CHECK_THROWS_AS(adaptive_c(50, -1, 80), std::invalid_argument);
  CHECK_THROWS_AS(adaptive_c(50, 4, 101), std::invalid_argument);
}

TEST_CASE("check_stability") {
  CHECK(check_stability(0.1, 0.01, 0.01).stable);
  CHECK_FALSE(check_stability(0.1, 0.01, 0.05).stable);
  const auto wide = check_stability(0.5, 0.99, 0.0);
  CHECK(wide.stable);
  CHECK(wide.margin == doctest::Approx(0.01));
  CHECK(check_stability(0.1, 0.01, 100, 10'000).stable);

  // With no delay the predicate is exactly sigma < eps / (1 - eps).
  for (double eps : {0.01, 0.05, 0.1, 0.3}) {
    const double bound = eps / (1.0 - eps);
    CHECK(check_stability(eps, bound * 0.999, 0.0).stable);
    CHECK_FALSE(check_stability(eps, bound * 1.001, 0.0).stable);
  }
}

TEST_CASE("parameter report") {
  Topology t;
  t.add_edge(0, 1);
  t.add_edge(0, 2);
  ReportInputs in;
  in.epsilon = 0.01;
  in.sigma = 0.005;
  in.period = 10'000;
  in.c0 = 50;
  in.s_th = 80;
  const ParamReport r = make_report(in, t);
  CHECK(r.epsilon_opt == doctest::Approx(50.0 * 2 / 20'000));
  CHECK(r.sigma_max == doctest::Approx(0.01 / 0.99));
  CHECK(r.stable);
  CHECK(r.adaptive_c_per_node.at(0) == 80);
  CHECK(r.adaptive_c_per_node.at(1) == 40);
  CHECK(r.warnings.empty());

  in.sigma = 0.02;
  in.nu = 100;
  const ParamReport bad = make_report(in, t);
  CHECK_FALSE(bad.stable);
  CHECK(bad.warnings.size() >= 2);
}
