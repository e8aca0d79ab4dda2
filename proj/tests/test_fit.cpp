#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "hammersley/fit.hpp"
#include "hammersley/rng.hpp"

using namespace hammersley;

namespace {

const std::vector<double> kSchedule = {10000,  21544,   46416,   100000,
                                       215443, 464159,  1000000, 2154435,
                                       4641589, 10000000};

std::vector<FitPoint> make_points(const std::vector<double>& ns,
                                  const std::function<double(double)>& f) {
  std::vector<FitPoint> pts;
  for (const double n : ns) pts.push_back({n, f(n)});
  return pts;
}

}  // namespace

TEST_CASE("t quantiles are pinned") {
  CHECK(student_t_quantile975(1) == doctest::Approx(12.7062047364).epsilon(1e-9));
  CHECK(student_t_quantile975(4) == doctest::Approx(2.7764451052).epsilon(1e-9));
  CHECK(student_t_quantile975(9) == doctest::Approx(2.2621571629).epsilon(1e-9));
  CHECK(student_t_quantile975(10) == doctest::Approx(2.2281388520).epsilon(1e-9));
  CHECK(student_t_quantile975(30) == doctest::Approx(2.0422724563).epsilon(1e-9));
  CHECK_THROWS_AS(student_t_quantile975(0.5), std::invalid_argument);
}

TEST_CASE("noiseless corrected sqrt recovery") {
  const auto pts = make_points(kSchedule, [](double n) {
    return 4.0 * std::sqrt(n) - 5.1 * std::pow(n, 1.0 / 6.0);
  });
  const auto rep = fit_corrected_sqrt(pts, 4.0);
  REQUIRE(rep.params.size() == 1);
  CHECK(rep.params[0].name == "a");
  CHECK(rep.params[0].estimate == doctest::Approx(-5.1).epsilon(1e-6));
  CHECK(rep.mse <= 1e-10);
  CHECK(rep.r_squared > 0.999999);
  CHECK_FALSE(rep.ci_degenerate);
}

TEST_CASE("noiseless scaled power recovery") {
  const auto pts = make_points(
      kSchedule, [](double n) { return 1.4 * std::pow(n, 1.0 / 6.0); });
  const auto rep = fit_scaled_power(pts, 1.0 / 6.0);
  REQUIRE(rep.params.size() == 1);
  CHECK(rep.params[0].name == "b");
  CHECK(rep.params[0].estimate == doctest::Approx(1.4).epsilon(1e-6));
  CHECK(rep.mse <= 1e-10);
}

TEST_CASE("noiseless power recovery") {
  const auto pts =
      make_points(kSchedule, [](double n) { return 0.5 * std::pow(n, 0.26); });
  const auto rep = fit_power(pts);
  REQUIRE(rep.params.size() == 2);
  CHECK(rep.params[0].estimate == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rep.params[1].estimate == doctest::Approx(0.26).epsilon(1e-6));
  CHECK(rep.mse <= 1e-10);
  CHECK(rep.r_squared > 0.999999);
}

TEST_CASE("noiseless log power recovery") {
  const auto pts = make_points(kSchedule, [](double n) {
    return 0.67 * std::pow(std::log(n), 0.23) * std::pow(n, 0.66);
  });
  const auto rep = fit_log_power(pts);
  REQUIRE(rep.params.size() == 3);
  CHECK(rep.params[0].estimate == doctest::Approx(0.67).epsilon(1e-6));
  CHECK(rep.params[1].estimate == doctest::Approx(0.23).epsilon(1e-6));
  CHECK(rep.params[2].estimate == doctest::Approx(0.66).epsilon(1e-6));
  CHECK(rep.mse <= 1e-10);
  CHECK_FALSE(rep.collinearity_warning);
}

TEST_CASE("single point corrected sqrt is exact with a degenerate interval") {
  const std::vector<FitPoint> pts = {{1000000.0, 4020.0}};
  const auto rep = fit_corrected_sqrt(pts, 4.0);
  CHECK(rep.params[0].estimate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.ci_degenerate);
  CHECK(rep.params[0].ci_lo == rep.params[0].estimate);
  CHECK(rep.params[0].ci_hi == rep.params[0].estimate);
}

TEST_CASE("all-zero targets fit a zero slope") {
  const auto pts = make_points(kSchedule, [](double) { return 0.0; });
  const auto rep = fit_scaled_power(pts, 0.5);
  CHECK(rep.params[0].estimate == 0.0);
  CHECK(rep.mse == 0.0);
}

TEST_CASE("two points interpolate a power law exactly") {
  const std::vector<FitPoint> pts = {{100.0, 2.0 * std::pow(100.0, 0.3)},
                                     {10000.0, 2.0 * std::pow(10000.0, 0.3)}};
  const auto rep = fit_power(pts);
  CHECK(rep.params[0].estimate == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.params[1].estimate == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(rep.mse <= 1e-16);
  CHECK(rep.ci_degenerate);
}

TEST_CASE("residuals are orthogonal to the regressor") {
  Pcg64 gen(91, 0);
  std::vector<FitPoint> pts;
  for (const double n : kSchedule) {
    pts.push_back({n, 1.4 * std::pow(n, 1.0 / 6.0) + gen.uniform01() - 0.5});
  }
  const auto rep = fit_scaled_power(pts, 1.0 / 6.0);
  double dot = 0.0;
  double sg2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double g = std::pow(pts[i].n, 1.0 / 6.0);
    dot += rep.residuals[i] * g;
    sg2 += g * g;
  }
  CHECK(std::fabs(dot) / sg2 <= 1e-10);
}

TEST_CASE("input guards") {
  const std::vector<FitPoint> empty;
  CHECK_THROWS_AS(fit_corrected_sqrt(empty, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_scaled_power(empty, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(fit_power(empty), std::invalid_argument);
  CHECK_THROWS_AS(fit_log_power(empty), std::invalid_argument);

  const std::vector<FitPoint> same_n = {{50.0, 1.0}, {50.0, 2.0}, {50.0, 3.0}};
  CHECK_THROWS_AS(fit_power(same_n), std::invalid_argument);
  CHECK_THROWS_AS(fit_log_power(same_n), std::invalid_argument);

  const std::vector<FitPoint> two_distinct = {{10.0, 1.0}, {20.0, 2.0},
                                              {20.0, 2.1}};
  CHECK_THROWS_AS(fit_log_power(two_distinct), std::invalid_argument);

  const std::vector<FitPoint> nonpositive_y = {{10.0, 1.0}, {20.0, -2.0},
                                               {40.0, 3.0}};
  CHECK_THROWS_AS(fit_power(nonpositive_y), std::invalid_argument);
  CHECK_THROWS_AS(fit_log_power(nonpositive_y), std::invalid_argument);

  const std::vector<FitPoint> tiny_n = {{1.0, 1.0}, {20.0, 2.0}, {40.0, 3.0}};
  CHECK_THROWS_AS(fit_log_power(tiny_n), std::invalid_argument);

  const std::vector<FitPoint> negative_n = {{-4.0, 1.0}};
  CHECK_THROWS_AS(fit_corrected_sqrt(negative_n, 4.0), std::invalid_argument);
}

// The next five cases rebuild series from reference normalized summary rows
// and check that the point estimates land inside the quoted 95% intervals.
TEST_CASE("reference series: corrected sqrt, three-line process") {
  const std::vector<double> s = {4.790, 4.869, 4.940, 4.997, 5.056,
                                 5.098, 5.147, 5.175, 5.201, 5.240};
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double n = kSchedule[i];
    pts.push_back({n, 4.0 * std::sqrt(n) - s[i] * std::pow(n, 1.0 / 6.0)});
  }
  const auto rep = fit_corrected_sqrt(pts, 4.0);
  const double a = rep.params[0].estimate;
  CHECK(a == doctest::Approx(-5.139712).epsilon(5e-6));
  CHECK(a > -5.222);
  CHECK(a < -5.057);
}

TEST_CASE("reference series: scaled power, three-line sd") {
  const std::vector<double> s = {1.345, 1.358, 1.380, 1.387, 1.388,
                                 1.401, 1.411, 1.410, 1.412, 1.418};
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    pts.push_back({kSchedule[i], s[i] * std::pow(kSchedule[i], 1.0 / 6.0)});
  }
  const auto rep = fit_scaled_power(pts, 1.0 / 6.0);
  const double b = rep.params[0].estimate;
  CHECK(b == doctest::Approx(1.404490).epsilon(5e-6));
  CHECK(b > 1.392);
  CHECK(b < 1.417);
}

TEST_CASE("reference series: corrected sqrt, four-line process") {
  const std::vector<double> s = {9.188, 9.363, 9.519,  9.647,  9.767,
                                 9.866, 9.963, 10.034, 10.093, 10.172};
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double n = kSchedule[i];
    pts.push_back({n, 6.0 * std::sqrt(n) - s[i] * std::pow(n, 1.0 / 6.0)});
  }
  const auto rep = fit_corrected_sqrt(pts, 6.0);
  const double a = rep.params[0].estimate;
  CHECK(a == doctest::Approx(-9.954603).epsilon(5e-6));
  CHECK(a > -10.140);
  CHECK(a < -9.774);
}

TEST_CASE("reference series: log power, circle-region means") {
  const std::vector<double> s = {0.671, 0.671, 0.670, 0.670, 0.670,
                                 0.670, 0.670, 0.670, 0.670, 0.670};
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double n = kSchedule[i];
    pts.push_back(
        {n, s[i] * std::pow(std::log(n), 0.234) * std::pow(n, 0.662)});
  }
  const auto rep = fit_log_power(pts);
  const double c = rep.params[2].estimate;
  CHECK(c == doctest::Approx(0.663775).epsilon(5e-6));
  CHECK(c > 0.661);
  CHECK(c < 0.664);
}

TEST_CASE("reference series: power, circle-region sds") {
  const std::vector<double> s = {0.583, 0.596, 0.594, 0.598, 0.600,
                                 0.590, 0.591, 0.609, 0.593, 0.594};
  std::vector<FitPoint> pts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    pts.push_back({kSchedule[i], s[i] * std::pow(kSchedule[i], 0.263)});
  }
  const auto rep = fit_power(pts);
  const double f = rep.params[1].estimate;
  CHECK(f == doctest::Approx(0.264622).epsilon(5e-6));
  CHECK(f > 0.258);
  CHECK(f < 0.268);
}

TEST_CASE("confidence intervals cover the truth at roughly the stated rate") {
  Pcg64 gen(92, 0);
  const double f_true = 0.3;
  int hits = 0;
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<FitPoint> pts;
    for (const double n : kSchedule) {
      const double u1 = 1.0 - gen.uniform01();
      const double u2 = gen.uniform01();
      const double noise = std::sqrt(-2.0 * std::log(u1)) *
                           std::cos(6.283185307179586 * u2) * 0.05;
      pts.push_back({n, std::exp(std::log(0.8) + f_true * std::log(n) + noise)});
    }
    const auto r = fit_power(pts);
    if (r.params[1].ci_lo <= f_true && f_true <= r.params[1].ci_hi) ++hits;
  }
  CHECK(hits >= 450);  // nominal rate is 0.95
}
