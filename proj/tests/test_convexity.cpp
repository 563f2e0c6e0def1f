#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "r1c/convexity.hpp"
#include "r1c/serialization.hpp"

#include <cmath>

using namespace r1c;

namespace {

ScanConfig quick_cfg(std::uint64_t seed, int bases = 100, int dirs = 10) {
  ScanConfig cfg;
  cfg.seed = seed;
  cfg.n_base_points = bases;
  cfg.n_directions = dirs;
  return cfg;
}

Eigen::MatrixXd diag2(double a, double d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("convexity_along_segment: det+ passes, -det+ has the endpoint-kink witness") {
  ScanConfig cfg = quick_cfg(1);
  Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(2, 2);
  dir(0, 0) = 1.0;  // e1 (x) e1

  const auto pass = convexity_along_segment(det_plus(2), Point(diag2(-1, 1)), Point(dir), cfg);
  CHECK(pass.passed);

  // f(A + tX) = -max(0, t - 1): the kink sits exactly at the grid endpoint
  // t = 1, caught because probes extend one step beyond.
  const auto fail =
      convexity_along_segment(negate(det_plus(2)), Point(diag2(-1, 1)), Point(dir), cfg);
  CHECK_FALSE(fail.passed);
  REQUIRE(fail.witnesses.size() == 1);
  CHECK(fail.witnesses[0].t_center == doctest::Approx(1.0).epsilon(1e-14));
  const double h = 2.0 / (cfg.segment_grid - 1);
  CHECK(fail.witnesses[0].gap == doctest::Approx(-h / 2.0).epsilon(1e-10));
  CHECK(std::abs(reevaluate_gap(negate(det_plus(2)), fail.witnesses[0]) -
                 fail.witnesses[0].gap) <= 1e-15);

  // det is affine along rank-one lines: both signs pass.
  const Integrand det = raw_minor(2, MinorSpec{{1, 2}, {1, 2}});
  CHECK(convexity_along_segment(det, Point(diag2(-1, 1)), Point(dir), cfg).passed);
  CHECK(convexity_along_segment(negate(det), Point(diag2(-1, 1)), Point(dir), cfg).passed);
}

TEST_CASE("convexity_along_segment: rejects non-rank-one directions") {
  ScanConfig cfg = quick_cfg(1);
  CHECK_THROWS_AS(convexity_along_segment(det_plus(2), Point(diag2(0, 0)),
                                          Point(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2))),
                                          cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      convexity_along_segment(sverak_L(), Point(ComplexPair{0.0, 0.0}),
                              Point(ComplexPair{std::complex<double>(1, 0),
                                                std::complex<double>(0.5, 0)}),
                              cfg),
      std::invalid_argument);
}

TEST_CASE("rank_one_scan: pass and fail lists, determinism") {
  ScanConfig cfg = quick_cfg(42, 100, 10);
  for (const Integrand& f : {burkholder(1.2), burkholder(2.0), burkholder(3.0),
                             burkholder_plus(2.0), sverak_L(), det_plus(2), det_minus(2),
                             sverak_F(0, 2), sverak_F(1, 2)}) {
    const auto report = rank_one_scan(f, cfg);
    CHECK_MESSAGE(report.passed, f.name);
  }

  const auto bad1 = rank_one_scan(negate(det_plus(2)), cfg);
  CHECK_FALSE(bad1.passed);
  CHECK(bad1.violation_count > 0);
  const auto bad2 = rank_one_scan(negate(frobenius_squared(2)), cfg);
  CHECK_FALSE(bad2.passed);
  // -|A|^2 is strictly concave along every line: every midpoint check fails.
  CHECK(bad2.violation_count == bad2.checks);

  // Bit-identical reports for identical (cfg, integrand), single- and
  // multi-threaded.
  const auto again = rank_one_scan(negate(det_plus(2)), cfg);
  CHECK(to_json(bad1).dump() == to_json(again).dump());
  ScanConfig serial = cfg;
  serial.threads = 1;
  const auto serial_report = rank_one_scan(negate(det_plus(2)), serial);
  ScanConfig wide = cfg;
  wide.threads = 4;
  const auto wide_report = rank_one_scan(negate(det_plus(2)), wide);
  CHECK(to_json(serial_report).dump() == to_json(wide_report).dump());

  for (size_t i = 0; i < std::min<size_t>(bad1.witnesses.size(), 5); ++i)
    CHECK(std::abs(reevaluate_gap(negate(det_plus(2)), bad1.witnesses[i]) -
                   bad1.witnesses[i].gap) <= 1e-15 * bad1.witnesses[i].scale);
}

TEST_CASE("zigzag_scan: valid and reversed direction regimes") {
  ScanConfig cfg = quick_cfg(3, 60, 8);
  CHECK(zigzag_scan(2.0, cfg).passed);
  CHECK(zigzag_scan(1.5, cfg).passed);
  const auto reversed = zigzag_scan(2.0, cfg, true);
  CHECK(reversed.violation_count > 0);
}

TEST_CASE("homogeneity_bound_check: derivative formula and boundary cases") {
  for (double a : {1.0, 2.0, 3.5})
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const auto r = homogeneity_bound_check(a, p);
      CHECK(std::abs(r.curve.front().second - 1.0) <= 1e-15);
      CHECK(r.derivative_at_1 == p - 1.0 - 1.0 / a);
      CHECK(std::abs(r.derivative_fd - r.derivative_at_1) <= 1e-6);

      // Independent finite-difference oracle at a wider step.
      const auto F = [a, p](double t) {
        return std::pow(t, p - 1.0) * (a * t + a - t + 1.0) / (a * t + a + t - 1.0);
      };
      CHECK(std::abs(oracle::central_difference(F, 1.0, 1e-5) - r.derivative_at_1) <= 1e-6);
    }

  const auto boundary = homogeneity_bound_check(2.0, 1.5);
  CHECK(boundary.derivative_at_1 == 0.0);
  CHECK(boundary.satisfied);

  const auto below = homogeneity_bound_check(2.0, 1.2);
  CHECK(below.derivative_at_1 == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK_FALSE(below.satisfied);
  const auto F = [&](double t) {
    return std::pow(t, 0.2) * (2 * t + 2 - t + 1) / (2 * t + 2 + t - 1);
  };
  CHECK(F(1.1) < 1.0);

  CHECK_THROWS_AS(homogeneity_bound_check(0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(homogeneity_bound_check(2.0, 0.5), std::invalid_argument);
}

TEST_CASE("null_lagrangian_fit: members of the span and rejections") {
  ScanConfig cfg = quick_cfg(5, 300, 1);

  const Integrand det = raw_minor(2, MinorSpec{{1, 2}, {1, 2}});
  const auto fit = null_lagrangian_fit(det, box_sampler(SpaceKind::full, 2, 2.0), 2, cfg);
  CHECK(fit.residual < 1e-10);
  CHECK(std::abs(fit.c) <= 1e-8);
  CHECK(std::abs(fit.v[4] - 1.0) <= 1e-8);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(fit.v[i]) <= 1e-8);

  // det+ on {det > 0} equals det there.
  const auto fitp = null_lagrangian_fit(
      det_plus(2), det_sign_sampler(SpaceKind::full, 2, 2.0, Sign::plus), 2, cfg);
  CHECK(fitp.residual < 1e-10);
  CHECK(std::abs(fitp.v[4] - 1.0) <= 1e-8);

  // Construct-then-recover round trip.
  Integrand f;
  f.domain = Domain::full(2);
  f.name = "3+2a11-det";
  f.eval = [](const Point& pt) {
    const auto& m = std::get<Eigen::MatrixXd>(pt);
    return 3.0 + 2.0 * m(0, 0) - determinant(m);
  };
  const auto fitc = null_lagrangian_fit(f, box_sampler(SpaceKind::full, 2, 2.0), 2, cfg);
  CHECK(fitc.residual < 1e-10);
  CHECK(std::abs(fitc.c - 3.0) <= 1e-8);
  CHECK(std::abs(fitc.v[0] - 2.0) <= 1e-8);
  CHECK(std::abs(fitc.v[4] + 1.0) <= 1e-8);

  const auto reject =
      null_lagrangian_fit(frobenius_squared(2), box_sampler(SpaceKind::full, 2, 2.0), 2, cfg);
  CHECK(reject.residual > 1e-2);
}

TEST_CASE("null_lagrangian_fit: symmetric space is rank-deficient but still fits") {
  // On symmetric 4x4 matrices the 2x2 minors are linearly dependent, so the
  // design matrix loses rank; the minimum-norm solution must still drive the
  // residual to zero for members of the span.
  ScanConfig cfg = quick_cfg(9, 280, 1);
  const Integrand m = raw_minor(4, MinorSpec{{1, 2}, {3, 4}});
  const auto fit = null_lagrangian_fit(m, box_sampler(SpaceKind::symmetric, 4, 2.0), 4, cfg);
  CHECK(fit.residual < 1e-10);
  CHECK(fit.rank < 1 + static_cast<int>(minor_basis(4).size()));
}

TEST_CASE("null_lagrangian_fit: residual invariant under sample duplication") {
  ScanConfig cfg = quick_cfg(6, 200, 1);
  const Integrand f = frobenius_squared(2);
  const auto once = null_lagrangian_fit(f, box_sampler(SpaceKind::full, 2, 2.0), 2, cfg);

  // A sampler that replays each point twice: duplication must not move the
  // relative residual.
  RegionSampler base = box_sampler(SpaceKind::full, 2, 2.0);
  auto cache = std::make_shared<std::pair<bool, Eigen::MatrixXd>>(false, Eigen::MatrixXd());
  RegionSampler doubled = [base, cache](RandomStream& rs) {
    if (cache->first) {
      cache->first = false;
      return cache->second;
    }
    cache->second = base(rs);
    cache->first = true;
    return cache->second;
  };
  ScanConfig cfg2 = cfg;
  cfg2.n_base_points = 2 * cfg.n_base_points;
  const auto twice = null_lagrangian_fit(f, doubled, 2, cfg2);
  CHECK(std::abs(once.residual - twice.residual) <= 1e-8 * (1.0 + once.residual));
}

TEST_CASE("minor_dependence_rank: full independence, symmetric relations") {
  ScanConfig cfg = quick_cfg(7);

  const auto full42 = minor_dependence_rank(SpaceKind::full, 4, 2, cfg);
  CHECK(full42.minor_count == 36);
  CHECK(full42.rank == 36);

  const auto sym42 = minor_dependence_rank(SpaceKind::symmetric, 4, 2, cfg);
  CHECK(sym42.rank < 36);
  CHECK(sym42.relation_checked);
  CHECK(sym42.relation_residual < 1e-12);

  CHECK(minor_dependence_rank(SpaceKind::full, 2, 1, cfg).rank == 4);
  CHECK(minor_dependence_rank(SpaceKind::symmetric, 2, 1, cfg).rank == 3);
  CHECK(minor_dependence_rank(SpaceKind::full, 3, 3, cfg).rank == 1);

  CHECK_THROWS_AS(minor_dependence_rank(SpaceKind::full, 3, 4, cfg), std::invalid_argument);
}

TEST_CASE("euler relation holds for homogeneous zoo members") {
  ScanConfig cfg = quick_cfg(8, 25, 1);
  for (const Integrand& f : {det_plus(2), det_minus(3), abs_det(2), sverak_F(0, 2),
                             burkholder(1.5), burkholder(2.0), burkholder_matrix(2.0),
                             truncated_minor(2, MinorSpec{{1}, {1}}, Sign::plus)}) {
    const auto r = check_euler_relation(f, cfg);
    CHECK_MESSAGE(r.passed, f.name);
  }
}
