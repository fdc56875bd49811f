#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qline/oracle.hpp"

using namespace qline;
using namespace qline::oracle;

TEST_SUITE("oracle") {

TEST_CASE("numeric kernel basics") {
  const SwitchingProfile p{1.0, 1.0};
  CHECK(kernel_numeric(p, 0.0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(kernel_numeric(p, 0.9) == doctest::Approx(kernel_numeric(p, -0.9)).epsilon(1e-12));
  const auto t = switching_transform_numeric(p, 1.7);
  CHECK(std::abs(t.im) < 1e-13);
}

TEST_CASE("one- and two-dimensional routes agree") {
  const SwitchingProfile p{1.0, 1.0};
  const double one = kernel_numeric(p, 2.3);
  const double two = kernel_numeric_2d(p, 2.3);
  CHECK(std::abs(one - two) / one < 1e-8);
  const SwitchingProfile q{0.4, 3.0};
  for (double w : {0.2, 5.0, 12.0}) {
    CHECK(std::abs(kernel_numeric(q, w) - kernel_numeric_2d(q, w)) / kernel_numeric(q, w) < 1e-8);
  }
}

TEST_CASE("double and quad precision agree at moderate frequency") {
  OracleSettings dbl;
  dbl.precision = Precision::Double;
  const SwitchingProfile p{0.3, 4.0};
  for (double w : {0.01, 1.0, 10.0, 50.0}) {
    CHECK(kernel_numeric(p, w, dbl) == doctest::Approx(kernel_numeric(p, w)).epsilon(1e-9));
  }
}

TEST_CASE("time grid refinement converges") {
  OracleSettings coarse, fine;
  coarse.time_grid_points = 2048;
  fine.time_grid_points = 4096;
  const SwitchingProfile p{0.6, 2.2};
  for (double w : {1e-3, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 40.0, 200.0, 900.0}) {
    const double a = kernel_numeric(p, w, coarse);
    const double b = kernel_numeric(p, w, fine);
    CHECK(std::abs(a - b) / b < 1e-8);
  }
}

TEST_CASE("numeric smearing transforms") {
  for (Shape s : {Shape::Gaussian, Shape::Lorentzian, Shape::Quartic, Shape::Sharp}) {
    CHECK(std::abs(smearing_ft_numeric({s, 1.0}, 0.0) - 1.0) < 1e-9);
  }
  CHECK(smearing_ft_numeric({Shape::Gaussian, 2.0}, 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(std::abs(smearing_ft_numeric({Shape::Sharp, 2.0}, std::numbers::pi)) < 1e-9);
}

TEST_CASE("settings are validated") {
  OracleSettings bad;
  bad.time_grid_points = 0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = {};
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("numeric probability") {
  auto p = default_parameters();
  p.qubit.lambda = 0.0;
  OracleSettings dbl;
  dbl.precision = Precision::Double;
  const auto r = probability_numeric(validate(p), {}, dbl);
  CHECK(r.p == 0.0);
  CHECK(r.p_over_lambda_sq > 0.0);
  p.cutoff.model = CutoffModel::Sharp;
  const auto sharp = probability_numeric(validate(p), {}, dbl);
  CHECK(sharp.k_max == 6.0);
}

}
