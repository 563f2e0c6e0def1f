#pragma once

#include "r1c/measure.hpp"
#include "r1c/point.hpp"
#include "r1c/report.hpp"

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace r1c {

/// Binary splitting tree witnessing the (H_N) conditions: every internal
/// node is a two-point split of its point along a rank-one direction, with
/// the left child carrying weight lambda. Leaves are the atoms; their
/// weights are the products of the split weights along the root path.
struct PrelamNode {
  Point point;
  double lambda = 0.0;  // meaningful on internal nodes only
  std::unique_ptr<PrelamNode> left;
  std::unique_ptr<PrelamNode> right;

  bool is_leaf() const { return !left; }
};

std::unique_ptr<PrelamNode> make_leaf(Point p);
/// Degenerate lambda in {0, 1} collapses to the surviving child.
std::unique_ptr<PrelamNode> make_split(Point p, double lambda, std::unique_ptr<PrelamNode> l,
                                       std::unique_ptr<PrelamNode> r);

class Prelaminate {
 public:
  Prelaminate(Domain domain, std::unique_ptr<PrelamNode> root);

  const Domain& domain() const { return domain_; }
  const PrelamNode& root() const { return *root_; }
  const Point& barycenter() const { return root_->point; }
  /// Leaf (weight, point) pairs in depth-first left-to-right order.
  std::vector<std::pair<double, Point>> atoms() const;

 private:
  Domain domain_;
  std::unique_ptr<PrelamNode> root_;
};

Prelaminate single_atom(Domain domain, Point p);

/// The splitting coefficient of the two-step cone construction:
/// h_a(t,k) = (1/t) (a-k)[t(k-1)(a-1)-(a+1)(k+1)] /
///            ((a+k)[t(k-1)(a+1)-(a-1)(k+1)]).
/// Requires a >= 1, t >= 1, 0 <= k <= 1. The formula has a removable
/// singularity at (a,k) = (1,1); the a = 1 slice is continued by its limit
/// 1/t^2.
double h_coefficient(double a, double t, double k);

/// Parameters of the cone-aperture split: barycenter A = (z, w) with
/// k = |w|/|z| <= 1, stretch factor t >= 1, cone aperture a >= 1.
struct HomSplitRequest {
  double a = 1.0;
  std::complex<double> z;
  std::complex<double> w;
  double t = 1.0;
};

struct HomSplitResult {
  Prelaminate prelaminate;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
};

/// Two-level prelaminate A = l1 A1 + (1-l1) B1, A1 = l2 (tA) + (1-l2) B2
/// with B1, B2 on the cone a|z| = |w| and l1 l2 = h_a(t, k). t = 1 yields
/// the single-atom tree.
HomSplitResult lemma_hom_split(const HomSplitRequest& req);

/// Prelaminate A = t^{-n} (tA) + sum_j (t-1) t^{-j} B_j with det(B_j) = 0,
/// built by scaling the (signed) singular values one slot at a time.
/// Symmetric inputs are conjugated through an eigendecomposition so every
/// atom stays symmetric.
Prelaminate diagonal_homogeneity_split(const Eigen::Ref<const Eigen::MatrixXd>& A, double t,
                                       SpaceKind space = SpaceKind::full);

/// Checks every (H_N) witness invariant: node barycenters, rank-one split
/// directions, positive leaf weights summing to one, and the weighted leaf
/// sum reproducing the root.
VerificationReport verify_prelaminate(const Prelaminate& p);

/// Atoms as a discrete measure. Complex-pair trees are mapped onto 2x2
/// matrices through the standard identification. Refuses trees that fail
/// verify_prelaminate.
DiscreteMeasure to_measure(const Prelaminate& p);

}  // namespace r1c
