#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "r1c/choquet1d.hpp"

#include <cmath>

using namespace r1c;

namespace {

Eigen::VectorXd sample_on_grid(const std::function<double(double)>& f, int N) {
  Eigen::VectorXd v(N + 1);
  for (int i = 0; i <= N; ++i) v[i] = f(static_cast<double>(i) / N);
  return v;
}

}  // namespace

TEST_CASE("extreme_1d: formulas, endpoints, indicators") {
  for (double y : {0.0, 0.25, 0.8}) {
    const Extreme1DSpec phi{Extreme1DSpec::Kind::phi, y};
    CHECK(extreme_1d(phi, y) == 0.0);
    CHECK(extreme_1d(phi, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(extreme_1d(phi, 0.0) + extreme_1d(phi, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const Extreme1DSpec psi_half{Extreme1DSpec::Kind::psi, 0.5};
  CHECK(extreme_1d(psi_half, 0.0) == 1.0);
  CHECK(extreme_1d(psi_half, 0.5) == 0.0);
  CHECK(extreme_1d(psi_half, 0.25) == doctest::Approx(0.5).epsilon(1e-15));

  // Boundary members are indicators.
  const Extreme1DSpec phi1{Extreme1DSpec::Kind::phi, 1.0};
  CHECK(extreme_1d(phi1, 1.0) == 1.0);
  CHECK(extreme_1d(phi1, 0.999) == 0.0);
  const Extreme1DSpec psi0{Extreme1DSpec::Kind::psi, 0.0};
  CHECK(extreme_1d(psi0, 0.0) == 1.0);
  CHECK(extreme_1d(psi0, 0.001) == 0.0);

  CHECK_THROWS_AS(extreme_1d(psi_half, -0.1), std::domain_error);
  CHECK_THROWS_AS(extreme_1d(psi_half, 1.1), std::domain_error);
}

TEST_CASE("choquet_decompose_1d: x^2 has uniform density 2") {
  const auto res = choquet_decompose_1d(sample_on_grid([](double x) { return x * x; }, 1000));
  CHECK(res.reconstruction_error <= 1e-5);
  CHECK(res.measure.density.minCoeff() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res.measure.density.maxCoeff() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res.measure.psi_vertex_mass == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("choquet_decompose_1d: affine reconstructs exactly") {
  const auto res =
      choquet_decompose_1d(sample_on_grid([](double x) { return 0.3 + 0.4 * x; }, 1000));
  CHECK(res.reconstruction_error <= 1e-12);
  CHECK(res.measure.density.cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(res.measure.psi_vertex_mass == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(res.measure.phi_vertex_mass == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("choquet_decompose_1d: a kink is located within one cell") {
  const Extreme1DSpec phi{Extreme1DSpec::Kind::phi, 0.5};
  const auto res = choquet_decompose_1d(
      sample_on_grid([&](double x) { return extreme_1d(phi, x); }, 1000));
  int arg = 0;
  res.measure.density.maxCoeff(&arg);
  const double y = (arg + 1) * res.measure.grid_step;
  CHECK(std::abs(y - 0.5) <= res.measure.grid_step);
  CHECK(res.reconstruction_error <= res.measure.grid_step);

  // Total kink mass approximates the slope jump 1/(1-y) = 2.
  double mass = 0.0;
  for (int i = 0; i < res.measure.density.size(); ++i)
    mass += res.measure.density[i] * res.measure.grid_step;
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("choquet_decompose_1d: error decays like h^2 on smooth convex inputs") {
  const auto f = [](double x) { return std::exp(x); };
  const double e1 = choquet_decompose_1d(sample_on_grid(f, 100)).reconstruction_error;
  const double e2 = choquet_decompose_1d(sample_on_grid(f, 200)).reconstruction_error;
  CHECK(e1 / e2 > 3.0);  // ~4 for second order
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("choquet_decompose_1d: rejects non-convex samples with the violating index") {
  Eigen::VectorXd v = sample_on_grid([](double x) { return x * x; }, 100);
  v[40] += 1e-3;  // break convexity around index 40
  try {
    choquet_decompose_1d(v);
    CHECK(false);
  } catch (const NonConvexSamplesError& e) {
    CHECK(e.index == 40);  // the bump makes the second difference at 40 negative
    CHECK(e.second_difference < -1e-9);
  }
  CHECK_THROWS_AS(choquet_decompose_1d(Eigen::VectorXd::Zero(2)), std::invalid_argument);
}
