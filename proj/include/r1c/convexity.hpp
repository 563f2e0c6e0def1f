#pragma once

#include "r1c/integrands.hpp"
#include "r1c/point.hpp"
#include "r1c/report.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace r1c {

struct ScanConfig {
  std::uint64_t seed = 0;
  int n_base_points = 1000;
  int n_directions = 100;
  int segment_grid = 41;
  double box_radius = 2.0;
  double tolerance = 1e-9;
  int threads = 0;             // 0 = hardware concurrency
  int max_witnesses = 100;     // stored; the full count is always reported

  void validate() const;
};

/// One failed midpoint-convexity check: at the grid triple
/// (t_minus, t_center, t_plus) along base + t * direction,
/// gap = (f(t-) + f(t+))/2 - f(t0) fell below -tolerance * scale.
struct ConvexityWitness {
  Point base;
  Point direction;
  double t_minus = 0.0;
  double t_center = 0.0;
  double t_plus = 0.0;
  double gap = 0.0;
  double scale = 1.0;  // 1 + max |f| over the segment
};

struct ViolationReport {
  bool passed = true;
  std::vector<ConvexityWitness> witnesses;  // at most max_witnesses, scan order
  long violation_count = 0;
  long checks = 0;
  std::string integrand_id;
  ScanConfig config;
};

/// Midpoint convexity of t -> f(base + t dir) on the uniform grid over
/// [-1, 1]; probes extend one grid step past each end so kinks sitting at
/// the endpoints are still tested. The direction must be rank-one
/// (matrix spaces) or have |xi| = |zeta| (complex pairs).
ViolationReport convexity_along_segment(const Integrand& f, const Point& base,
                                        const Point& direction, const ScanConfig& cfg);

/// Seeded sweep over n_base_points x n_directions (base, rank-one
/// direction) pairs. Deterministic given the seed, independently of the
/// thread count.
ViolationReport rank_one_scan(const Integrand& f, const ScanConfig& cfg);

/// Zig-zag convexity of the Burkholder function: t -> B_p(x + ta, y + tb)
/// with ||a|| >= ||b||. reverse_norms samples ||a|| < ||b|| instead (a
/// negative control: convexity fails there).
ViolationReport zigzag_scan(double p, const ScanConfig& cfg, bool reverse_norms = false);

/// Recomputes a witness's gap from scratch.
double reevaluate_gap(const Integrand& f, const ConvexityWitness& w);

/// The sharp homogeneity bound for integrands vanishing on the cone of
/// aperture a: F_a(t) = t^{p-1} (at + a - t + 1)/(at + a + t - 1) on
/// t in [1, t_max], whose derivative at 1 is p - 1 - 1/a; the bound
/// p >= 1/a + 1 holds iff that derivative is non-negative.
struct HomogeneityBoundResult {
  double a = 1.0;
  double p = 1.0;
  bool satisfied = false;
  double derivative_at_1 = 0.0;     // analytic: p - 1 - 1/a
  double derivative_fd = 0.0;       // central finite difference
  std::vector<std::pair<double, double>> curve;  // (t, F_a(t))
};

HomogeneityBoundResult homogeneity_bound_check(double a, double p, int n_samples = 64,
                                               double t_max = 10.0);

/// Least-squares fit f(A) ~ c + v . M(A) over sampled points of a region
/// where f is claimed rank-one affine. v is reported in the canonical minor
/// order; on rank-deficient design matrices (symmetric spaces) the
/// minimum-norm solution is returned and only the residual is contractual.
struct NullLagrangianFit {
  int n = 0;
  double c = 0.0;
  Eigen::VectorXd v;
  double residual = 0.0;  // rms(f - fit) / (1 + rms(f))
  int sample_count = 0;
  int rank = 0;
  double condition = 0.0;  // singular-value ratio of the design matrix
};

using RegionSampler = std::function<Eigen::MatrixXd(RandomStream&)>;

RegionSampler box_sampler(SpaceKind space, int n, double radius);
/// Rejection sampler conditioned on sign * det > 0.
RegionSampler det_sign_sampler(SpaceKind space, int n, double radius, Sign sign);

NullLagrangianFit null_lagrangian_fit(const Integrand& f, const RegionSampler& sampler, int n,
                                      const ScanConfig& cfg, int min_samples = 0);

/// Numerical rank of the span of order-s minors as functions on the given
/// space, measured on >= 4 C(n,s)^2 samples. For (symmetric, n=4, s=2) the
/// classical three-term relation between the 2x2 minors is evaluated on
/// each sample and its largest residual reported.
struct MinorRankResult {
  int rank = 0;
  int minor_count = 0;
  int sample_count = 0;
  bool relation_checked = false;
  double relation_residual = 0.0;
};

MinorRankResult minor_dependence_rank(SpaceKind space, int n, int s, const ScanConfig& cfg);

/// Metadata checks for zoo members: declared homogeneity degree, isotropy
/// under the domain's natural isometries, and Euler's relation
/// p f(A) = <grad f(A), A> by central differences at smooth points.
VerificationReport check_homogeneity(const Integrand& f, const ScanConfig& cfg);
VerificationReport check_isotropy(const Integrand& f, const ScanConfig& cfg);
VerificationReport check_euler_relation(const Integrand& f, const ScanConfig& cfg);

}  // namespace r1c
