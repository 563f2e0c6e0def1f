#include "r1c/prelaminate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace r1c {

std::unique_ptr<PrelamNode> make_leaf(Point p) {
  auto node = std::make_unique<PrelamNode>();
  node->point = std::move(p);
  return node;
}

std::unique_ptr<PrelamNode> make_split(Point p, double lambda, std::unique_ptr<PrelamNode> l,
                                       std::unique_ptr<PrelamNode> r) {
  if (!(lambda >= -1e-12 && lambda <= 1.0 + 1e-12))
    throw std::invalid_argument("make_split: lambda outside [0, 1]");
  if (lambda >= 1.0) return l;
  if (lambda <= 0.0) return r;
  auto node = std::make_unique<PrelamNode>();
  node->point = std::move(p);
  node->lambda = lambda;
  node->left = std::move(l);
  node->right = std::move(r);
  return node;
}

Prelaminate::Prelaminate(Domain domain, std::unique_ptr<PrelamNode> root)
    : domain_(domain), root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("Prelaminate: null tree");
}

namespace {

void collect_atoms(const PrelamNode& node, double weight,
                   std::vector<std::pair<double, Point>>& out) {
  if (node.is_leaf()) {
    out.emplace_back(weight, node.point);
    return;
  }
  collect_atoms(*node.left, weight * node.lambda, out);
  collect_atoms(*node.right, weight * (1.0 - node.lambda), out);
}

}  // namespace

std::vector<std::pair<double, Point>> Prelaminate::atoms() const {
  std::vector<std::pair<double, Point>> out;
  collect_atoms(*root_, 1.0, out);
  return out;
}

Prelaminate single_atom(Domain domain, Point p) {
  return Prelaminate(domain, make_leaf(std::move(p)));
}

double h_coefficient(double a, double t, double k) {
  if (!(a >= 1.0 && t >= 1.0 && k >= 0.0 && k <= 1.0))
    throw std::domain_error("h_coefficient: requires a >= 1, t >= 1, 0 <= k <= 1");
  // The formula is 0/0 at exactly (a, k) = (1, 1); continue the a = 1 slice
  // by its limit there. Everywhere else the denominator is non-zero on the
  // admissible region.
  if (a == 1.0 && k == 1.0) return 1.0 / (t * t);
  const double num = (a - k) * (t * (k - 1.0) * (a - 1.0) - (a + 1.0) * (k + 1.0));
  const double den = (a + k) * (t * (k - 1.0) * (a + 1.0) - (a - 1.0) * (k + 1.0));
  if (den == 0.0) throw std::domain_error("h_coefficient: zero denominator");
  return num / (t * den);
}

HomSplitResult lemma_hom_split(const HomSplitRequest& req) {
  const double a = req.a, t = req.t;
  const double az = std::abs(req.z), aw = std::abs(req.w);
  if (az == 0.0) throw std::invalid_argument("lemma_hom_split: z must be non-zero");
  double k = aw / az;
  if (k > 1.0 && k <= 1.0 + 1e-12) k = 1.0;
  if (!(a >= 1.0 && t >= 1.0 && k <= 1.0))
    throw std::invalid_argument("lemma_hom_split: requires a >= 1, t >= 1, |w|/|z| <= 1");

  const std::complex<double> uz = req.z / az;
  const std::complex<double> uw = aw > 0.0 ? req.w / aw : std::complex<double>(1.0, 0.0);
  const auto at = [&](double x, double y) { return Point(ComplexPair{x * uz, y * uw}); };

  if (t == 1.0)
    return HomSplitResult{single_atom(Domain::complex_pair(), at(az, k * az)), 1.0, 1.0};
  if (a == 1.0 && k == 1.0)
    throw std::invalid_argument("lemma_hom_split: degenerate at a = 1, k = 1 (A lies on the cone)");

  const double lambda1 =
      2.0 * (a - k) / ((a - 1.0) * (k + 1.0) - t * (a + 1.0) * (k - 1.0));
  const double lambda2 =
      (1.0 + k + t * k - t + a * (1.0 + k + t - k * t)) / (2.0 * (a + k) * t);

  const Point A = at(az, k * az);
  const Point A1 = at(0.5 * az * (1.0 + k + t - k * t), 0.5 * az * (1.0 + k - t + k * t));
  const Point B1 = at(az * (1.0 + k) / (a + 1.0), a * az * (1.0 + k) / (a + 1.0));
  const Point B2 = at(t * az * (1.0 - k) / (a + 1.0), -a * t * az * (1.0 - k) / (a + 1.0));
  const Point tA = at(t * az, t * k * az);

  auto inner = make_split(A1, lambda2, make_leaf(tA), make_leaf(B2));
  auto root = make_split(A, lambda1, std::move(inner), make_leaf(B1));
  return HomSplitResult{Prelaminate(Domain::complex_pair(), std::move(root)), lambda1, lambda2};
}

Prelaminate diagonal_homogeneity_split(const Eigen::Ref<const Eigen::MatrixXd>& A, double t,
                                       SpaceKind space) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || n < 1)
    throw std::invalid_argument("diagonal_homogeneity_split: square matrix required");
  if (!(t >= 1.0)) throw std::invalid_argument("diagonal_homogeneity_split: requires t >= 1");
  if (space == SpaceKind::complex_pair)
    throw std::invalid_argument("diagonal_homogeneity_split: matrix space required");

  const Domain domain{space, n};
  if (t == 1.0) return single_atom(domain, Point(Eigen::MatrixXd(A)));

  Eigen::VectorXd sigma;
  Eigen::MatrixXd left, right;
  const bool symmetric = space == SpaceKind::symmetric;
  if (symmetric) {
    // Remark-style conjugation A = V Lambda V^T keeps every atom symmetric.
    (void)SquareMatrix(A, SpaceKind::symmetric);  // validates the tag
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    sigma = es.eigenvalues();
    left = es.eigenvectors();
    right = left.transpose();
  } else {
    const SignedSvd svd = signed_svd(A);
    sigma = svd.sigma;
    left = svd.left;
    right = svd.right;
  }

  const auto conjugate = [&](const Eigen::VectorXd& diag) {
    Eigen::MatrixXd m = left * diag.asDiagonal() * right;
    if (symmetric) m = SquareMatrix::symmetrized(m).mat();
    return Point(std::move(m));
  };

  const double tiny = 1e-15 * (1.0 + sigma.cwiseAbs().maxCoeff());

  // Scale slots one at a time: D_{j-1} = (1/t) D_j + ((t-1)/t) B_j where
  // B_j zeroes the j-th slot of D_j. Zero slots make the split direction
  // vanish, so those steps are skipped (D_{j-1} = D_j there).
  Eigen::VectorXd diag = t * sigma;  // D_n
  std::unique_ptr<PrelamNode> node = make_leaf(conjugate(diag));
  for (int j = n - 1; j >= 0; --j) {
    if (std::abs(sigma[j]) <= tiny) {
      // keep diag[j] consistent with D_{j-1} = D_j
      diag[j] = sigma[j];
      continue;
    }
    Eigen::VectorXd bj = diag;
    bj[j] = 0.0;
    Eigen::VectorXd parent = diag;
    parent[j] = sigma[j];
    node = make_split(conjugate(parent), 1.0 / t, std::move(node), make_leaf(conjugate(bj)));
    diag = parent;
  }
  return Prelaminate(domain, std::move(node));
}

namespace {

struct VerifyContext {
  VerificationReport* report;
  std::vector<std::pair<double, Point>> atoms;
};

void verify_node(const PrelamNode& node, const std::string& path, double weight,
                 VerifyContext& ctx) {
  if (node.is_leaf()) {
    if (node.right)
      ctx.report->fail(path, "leaf with a single child", 0.0);
    ctx.atoms.emplace_back(weight, node.point);
    return;
  }
  if (!node.right) {
    ctx.report->fail(path, "internal node missing a child", 0.0);
    return;
  }
  const double lambda = node.lambda;
  if (!(lambda > 0.0 && lambda < 1.0))
    ctx.report->fail(path, "split weight outside (0, 1)", lambda);

  const Point mix = lincomb(lambda, node.left->point, 1.0 - lambda, node.right->point);
  const double mismatch = point_distance(node.point, mix);
  const double scale = 1.0 + point_norm(node.point);
  if (mismatch > 1e-10 * scale)
    ctx.report->fail(path, "barycenter mismatch: point != lambda*left + (1-lambda)*right",
                     mismatch);

  const Point dir = point_sub(node.left->point, node.right->point);
  if (!is_rank_one_direction(dir, 1e-10))
    ctx.report->fail(path, "split direction is not rank-one", point_norm(dir));

  verify_node(*node.left, path + ".L", weight * lambda, ctx);
  verify_node(*node.right, path + ".R", weight * (1.0 - lambda), ctx);
}

}  // namespace

VerificationReport verify_prelaminate(const Prelaminate& p) {
  VerificationReport report;
  VerifyContext ctx{&report, {}};
  verify_node(p.root(), "root", 1.0, ctx);

  double total = 0.0;
  Point sum = zero_point(p.domain());
  for (const auto& [w, pt] : ctx.atoms) {
    if (!(w > 0.0)) report.fail("atoms", "non-positive leaf weight", w);
    total += w;
    sum = add_scaled(sum, w, pt);
  }
  if (std::abs(total - 1.0) > 1e-12)
    report.fail("atoms", "leaf weights do not sum to 1", total - 1.0);
  const double drift = point_distance(sum, p.barycenter());
  if (drift > 1e-10 * (1.0 + point_norm(p.barycenter())))
    report.fail("atoms", "weighted leaf sum does not reproduce the root", drift);
  return report;
}

DiscreteMeasure to_measure(const Prelaminate& p) {
  const VerificationReport check = verify_prelaminate(p);
  if (!check.passed)
    throw std::invalid_argument("to_measure: invalid prelaminate: " + check.summary());
  const bool from_pairs = p.domain().kind == SpaceKind::complex_pair;
  const Domain space = from_pairs ? Domain::full(2) : p.domain();
  std::vector<WeightedAtom> atoms;
  for (const auto& [w, pt] : p.atoms()) {
    Eigen::MatrixXd m = from_pairs ? Eigen::MatrixXd(from_complex_pair(std::get<ComplexPair>(pt)))
                                   : std::get<Eigen::MatrixXd>(pt);
    atoms.push_back(WeightedAtom{w, std::move(m)});
  }
  return DiscreteMeasure(space, std::move(atoms));
}

}  // namespace r1c
