#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "r1c/integrands.hpp"
#include "r1c/prelaminate.hpp"
#include "r1c/sampling.hpp"

#include <cmath>

using namespace r1c;

TEST_CASE("h_coefficient: closed-form values") {
  // h_1(t, k) = 1/t^2 for all k, including the k = 1 corner.
  for (double t : {1.0, 1.7, 4.0, 10.0})
    for (double k : {0.0, 0.3, 0.99, 1.0})
      CHECK(std::abs(h_coefficient(1.0, t, k) - 1.0 / (t * t)) <= 1e-13);

  // h_a(1, k) = 1.
  for (double a : {1.0, 1.5, 3.0})
    for (double k : {0.0, 0.5, 1.0})
      CHECK(h_coefficient(a, 1.0, k) == doctest::Approx(1.0).epsilon(1e-14));

  // Hand substitution: h_2(2, 0) = 5/14.
  CHECK(h_coefficient(2.0, 2.0, 0.0) == doctest::Approx(5.0 / 14.0).epsilon(1e-15));

  CHECK_THROWS_AS(h_coefficient(0.5, 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(h_coefficient(2.0, 0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(h_coefficient(2.0, 2.0, 1.5), std::domain_error);
}

TEST_CASE("lemma_hom_split: the worked example") {
  const auto res = lemma_hom_split(HomSplitRequest{2.0, 1.0, 0.0, 2.0});
  CHECK(std::abs(res.lambda1 - 4.0 / 7.0) <= 1e-15);
  CHECK(std::abs(res.lambda2 - 5.0 / 8.0) <= 1e-15);
  CHECK(std::abs(res.lambda1 * res.lambda2 - 5.0 / 14.0) <= 1e-15);

  const auto atoms = res.prelaminate.atoms();
  REQUIRE(atoms.size() == 3);
  // Depth-first: (tA, B2, B1) with weights (l1 l2, l1 (1-l2), 1-l1).
  CHECK(atoms[0].first == doctest::Approx(5.0 / 14.0).epsilon(1e-14));
  CHECK(atoms[1].first == doctest::Approx(3.0 / 14.0).epsilon(1e-14));
  CHECK(atoms[2].first == doctest::Approx(3.0 / 7.0).epsilon(1e-14));

  const auto& tA = std::get<ComplexPair>(atoms[0].second);
  CHECK(std::abs(tA.z - std::complex<double>(2, 0)) <= 1e-14);
  CHECK(std::abs(tA.w) <= 1e-14);
  const auto& B2 = std::get<ComplexPair>(atoms[1].second);
  CHECK(std::abs(B2.z - std::complex<double>(2.0 / 3.0, 0)) <= 1e-14);
  CHECK(std::abs(B2.w - std::complex<double>(-4.0 / 3.0, 0)) <= 1e-14);
  const auto& B1 = std::get<ComplexPair>(atoms[2].second);
  CHECK(std::abs(B1.z - std::complex<double>(1.0 / 3.0, 0)) <= 1e-14);
  CHECK(std::abs(B1.w - std::complex<double>(2.0 / 3.0, 0)) <= 1e-14);

  // Split directions have matching moduli: B1 - A1 = (-7/6, 7/6),
  // B2 - tA = (-4/3, -4/3).
  const auto& root = res.prelaminate.root();
  const auto& A1 = root.left->point;
  const Point d1 = point_sub(Point(ComplexPair{B1.z, B1.w}), A1);
  const auto& d1c = std::get<ComplexPair>(d1);
  CHECK(std::abs(d1c.z - std::complex<double>(-7.0 / 6.0, 0)) <= 1e-14);
  CHECK(std::abs(d1c.w - std::complex<double>(7.0 / 6.0, 0)) <= 1e-14);
  CHECK(std::abs(std::abs(d1c.z) - std::abs(d1c.w)) <= 1e-14);

  const Point d2 = point_sub(Point(ComplexPair{B2.z, B2.w}), Point(ComplexPair{tA.z, tA.w}));
  const auto& d2c = std::get<ComplexPair>(d2);
  CHECK(std::abs(d2c.z - std::complex<double>(-4.0 / 3.0, 0)) <= 1e-14);
  CHECK(std::abs(d2c.w - std::complex<double>(-4.0 / 3.0, 0)) <= 1e-14);

  CHECK(verify_prelaminate(res.prelaminate).passed);
}

TEST_CASE("lemma_hom_split: degenerate and invalid requests") {
  const auto trivial = lemma_hom_split(HomSplitRequest{2.0, 1.0, 0.5, 1.0});
  CHECK(trivial.prelaminate.atoms().size() == 1);
  CHECK(trivial.lambda1 == 1.0);
  CHECK(trivial.lambda2 == 1.0);

  CHECK_THROWS_AS(lemma_hom_split(HomSplitRequest{2.0, 0.0, 0.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(lemma_hom_split(HomSplitRequest{2.0, 1.0, 2.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(lemma_hom_split(HomSplitRequest{0.9, 1.0, 0.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(lemma_hom_split(HomSplitRequest{2.0, 1.0, 0.0, 0.5}), std::invalid_argument);
  // a = 1 with |w| = |z| puts A on the cone; the construction degenerates.
  CHECK_THROWS_AS(lemma_hom_split(HomSplitRequest{1.0, 1.0, 1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("lemma_hom_split: k = 1 collapses to a two-atom tree") {
  const auto res = lemma_hom_split(HomSplitRequest{2.0, 1.0, 1.0, 2.0});
  CHECK(res.lambda1 == 1.0);
  CHECK(res.lambda2 == doctest::Approx(0.5).epsilon(1e-15));
  const auto atoms = res.prelaminate.atoms();
  REQUIRE(atoms.size() == 2);
  CHECK(verify_prelaminate(res.prelaminate).passed);
  CHECK(std::abs(res.lambda1 * res.lambda2 - h_coefficient(2.0, 2.0, 1.0)) <= 1e-14);
}

TEST_CASE("lemma_hom_split: random parameter sweep") {
  RandomStream rs(51);
  for (int i = 0; i < 2000; ++i) {
    const double a = 1.0 + 5.0 * rs.uniform01();
    const double t = 1.0 + 7.0 * rs.uniform01();
    const double k = rs.uniform01();
    const std::complex<double> z = std::polar(rs.uniform(0.5, 2.0), rs.uniform(0.0, 2 * M_PI));
    const std::complex<double> w =
        k == 0.0 ? 0.0 : std::polar(k * std::abs(z), rs.uniform(0.0, 2 * M_PI));
    const auto res = lemma_hom_split(HomSplitRequest{a, z, w, t});
    CHECK(res.lambda1 >= -1e-12);
    CHECK(res.lambda1 <= 1.0 + 1e-12);
    CHECK(res.lambda2 >= -1e-12);
    CHECK(res.lambda2 <= 1.0 + 1e-12);
    CHECK(std::abs(res.lambda1 * res.lambda2 - h_coefficient(a, t, k)) <= 1e-10);
    CHECK(verify_prelaminate(res.prelaminate).passed);
  }
}

TEST_CASE("diagonal_homogeneity_split: worked example") {
  const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  const Prelaminate P = diagonal_homogeneity_split(I2, 2.0);
  const auto atoms = P.atoms();
  REQUIRE(atoms.size() == 3);

  // Expected atom set {(1/4, diag(2,2)), (1/2, diag(0,1)), (1/4, diag(2,0))}.
  double wsum = 0.0;
  Eigen::MatrixXd bary = Eigen::MatrixXd::Zero(2, 2);
  for (const auto& [w, pt] : atoms) {
    wsum += w;
    bary += w * std::get<Eigen::MatrixXd>(pt);
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((bary - I2).norm() <= 1e-12);

  std::vector<std::pair<double, Eigen::Matrix2d>> expected;
  Eigen::Matrix2d m;
  m << 2, 0, 0, 2;
  expected.emplace_back(0.25, m);
  m << 0, 0, 0, 1;
  expected.emplace_back(0.5, m);
  m << 2, 0, 0, 0;
  expected.emplace_back(0.25, m);
  for (const auto& [we, me] : expected) {
    bool found = false;
    for (const auto& [w, pt] : atoms)
      if (std::abs(w - we) <= 1e-12 && (std::get<Eigen::MatrixXd>(pt) - me).norm() <= 1e-10)
        found = true;
    CHECK(found);
  }

  // Jensen equality for det+ (sharpness of t^n E(A) <= E(tA)).
  const Integrand dp = det_plus(2);
  double lhs = 0.0;
  for (const auto& [w, pt] : atoms) lhs += w * dp(std::get<Eigen::MatrixXd>(pt));
  CHECK(lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dp(I2) == 1.0);

  CHECK(verify_prelaminate(P).passed);
}

TEST_CASE("diagonal_homogeneity_split: general and symmetric inputs") {
  RandomStream rs(53);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + (i % 2);
    const bool symmetric = (i / 2) % 2 == 0;
    const Eigen::MatrixXd A =
        symmetric ? sample_box_symmetric(rs, n, 2.0) : sample_box_matrix(rs, n, 2.0);
    const double t = 1.0 + 2.0 * rs.uniform01();
    const Prelaminate P = diagonal_homogeneity_split(
        A, t, symmetric ? SpaceKind::symmetric : SpaceKind::full);
    CHECK(verify_prelaminate(P).passed);
    CHECK(point_distance(P.barycenter(), Point(A)) <= 1e-10 * (1.0 + A.norm()));

    if (symmetric)
      for (const auto& [w, pt] : P.atoms()) {
        const auto& m = std::get<Eigen::MatrixXd>(pt);
        CHECK((m - m.transpose()).norm() == 0.0);  // bitwise symmetric atoms
      }
  }

  // t = 1 gives the trivial single atom; t < 1 is rejected.
  const Eigen::MatrixXd I3 = Eigen::MatrixXd::Identity(3, 3);
  CHECK(diagonal_homogeneity_split(I3, 1.0).atoms().size() == 1);
  CHECK_THROWS_AS(diagonal_homogeneity_split(I3, 0.99), std::invalid_argument);
}

TEST_CASE("diagonal_homogeneity_split: zero singular values collapse cleanly") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 0) = 1.0;  // rank one
  const Prelaminate P = diagonal_homogeneity_split(A, 2.0);
  CHECK(verify_prelaminate(P).passed);
  CHECK(P.atoms().size() == 2);

  const Prelaminate Z = diagonal_homogeneity_split(Eigen::MatrixXd::Zero(2, 2), 3.0);
  CHECK(Z.atoms().size() == 1);
}

TEST_CASE("verify_prelaminate: fault injection") {
  // A valid two-level tree, then a perturbed lambda and a rank-two direction.
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd up = A, down = A;
  up(0, 0) += 1.0;   // A + e1 e1^T
  down(0, 0) -= 1.0; // A - e1 e1^T

  auto good = make_split(Point(A), 0.5, make_leaf(Point(up)), make_leaf(Point(down)));
  const Prelaminate ok(Domain::full(2), std::move(good));
  CHECK(verify_prelaminate(ok).passed);

  auto bad_lambda = make_split(Point(A), 0.6, make_leaf(Point(up)), make_leaf(Point(down)));
  const Prelaminate bad1(Domain::full(2), std::move(bad_lambda));
  const auto r1 = verify_prelaminate(bad1);
  CHECK_FALSE(r1.passed);
  bool saw_barycenter = false;
  for (const auto& f : r1.failures)
    if (f.invariant.find("barycenter") != std::string::npos) saw_barycenter = true;
  CHECK(saw_barycenter);

  Eigen::MatrixXd up2 = A + Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd down2 = A - Eigen::MatrixXd::Identity(2, 2);
  auto bad_dir = make_split(Point(A), 0.5, make_leaf(Point(up2)), make_leaf(Point(down2)));
  const Prelaminate bad2(Domain::full(2), std::move(bad_dir));
  const auto r2 = verify_prelaminate(bad2);
  CHECK_FALSE(r2.passed);
  bool saw_rank = false;
  for (const auto& f : r2.failures)
    if (f.invariant.find("rank-one") != std::string::npos) saw_rank = true;
  CHECK(saw_rank);
}

TEST_CASE("to_measure: atoms, barycenter, refusal") {
  const auto single = single_atom(Domain::full(2), Point(Eigen::MatrixXd::Identity(2, 2)));
  const DiscreteMeasure delta = to_measure(single);
  CHECK(delta.atoms().size() == 1);
  CHECK(delta.atoms()[0].weight == 1.0);

  const Prelaminate P = diagonal_homogeneity_split(Eigen::MatrixXd::Identity(2, 2), 2.0);
  const DiscreteMeasure nu = to_measure(P);
  CHECK(nu.atoms().size() == 3);
  CHECK((nu.barycenter() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);

  // Complex-pair trees map onto 2x2 matrices.
  const auto res = lemma_hom_split(HomSplitRequest{2.0, 1.0, 0.0, 2.0});
  const DiscreteMeasure mu = to_measure(res.prelaminate);
  CHECK(mu.space().kind == SpaceKind::full);
  CHECK(mu.space().n == 2);

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2), up = A, down = A;
  up(0, 0) += 1;
  down(0, 0) -= 1;
  auto bad = make_split(Point(A), 0.6, make_leaf(Point(up)), make_leaf(Point(down)));
  const Prelaminate invalid(Domain::full(2), std::move(bad));
  CHECK_THROWS_AS(to_measure(invalid), std::invalid_argument);
}

TEST_CASE("homogeneity estimate via splits: t^n E(A) <= E(tA) for cone-negative zoo members") {
  RandomStream rs(59);
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + (i % 2);
    const Eigen::MatrixXd A = sample_box_matrix(rs, n, 2.0);
    const double t = 1.0 + 2.0 * rs.uniform01();
    const double tn = std::pow(t, n);
    for (const Integrand& E :
         {det_plus(n), det_minus(n), abs_det(n), positive_power(det_plus(n), 2.0)}) {
      const double ea = E(A), eta = E(Eigen::MatrixXd(t * A));
      CHECK(tn * ea <= eta + 1e-9);
      const double s = 1.0 / t;
      CHECK(std::pow(s, n) * ea >= E(Eigen::MatrixXd(s * A)) - 1e-9);
    }
  }
}
