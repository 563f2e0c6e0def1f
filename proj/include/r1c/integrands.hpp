#pragma once

#include "r1c/point.hpp"

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace r1c {

enum class Sign { plus, minus };

/// Isotropic cone of aperture a >= 1 in C^2: the set a|z| = |w|. The
/// Burkholder function B_p vanishes exactly on the cone of aperture
/// max(p-1, 1/(p-1)).
struct ConeSpec {
  double aperture = 1.0;

  explicit ConeSpec(double a);
  static ConeSpec burkholder_zero_set(double p);

  bool contains(std::complex<double> z, std::complex<double> w, double tol = 1e-12) const;
  /// The cone point (radius e^{i phase_z}, aperture * radius e^{i phase_w}).
  ComplexPair point(double radius, double phase_z, double phase_w) const;
};

/// An evaluatable integrand together with the metadata the verifiers need.
/// Immutable value type; evaluation is pure.
class Integrand {
 public:
  std::string name;
  Domain domain;
  std::map<std::string, double> params;
  /// Positive homogeneity degree, when known: f(tA) = t^p f(A) for t > 0.
  std::optional<double> homogeneity;
  /// Invariance under the natural isometries of the domain: E(QAR) on
  /// full(n), E(QAQ^T) on symmetric(n), independent phase rotations of z
  /// and w on complex_pair.
  bool isotropic = false;
  std::function<double(const Point&)> eval;
  /// Distance-like margin to the nearest kink of eval; used to pick smooth
  /// sample points for derivative-based checks. Unset means smooth
  /// everywhere.
  std::function<double(const Point&)> smooth_margin;

  double operator()(const Point& p) const { return eval(p); }
  double operator()(const Eigen::MatrixXd& A) const { return eval(Point(A)); }
  double operator()(std::complex<double> z, std::complex<double> w) const {
    return eval(Point(ComplexPair{z, w}));
  }
};

/// max(0, +/- M(A)) for a minor M; positively homogeneous of the minor's
/// order.
Integrand truncated_minor(int n, const MinorSpec& spec, Sign sign);

/// The signed minor +/-M itself (rank-one affine).
Integrand raw_minor(int n, const MinorSpec& spec, bool negated = false);

Integrand det_plus(int n);
Integrand det_minus(int n);
Integrand abs_det(int n);

/// |det A| on symmetric matrices of index k, 0 elsewhere; returns 0 on the
/// numerically singular boundary.
Integrand sverak_F(int k, int n);

/// Burkholder function on C^2: ((p*-1)|z| - |w|)(|z| + |w|)^{p-1} with
/// p*-1 = max(p-1, 1/(p-1)). Requires 1 < p.
Integrand burkholder(double p);
Integrand burkholder_plus(double p);

/// Matrix-level Burkholder on 2x2 matrices: B_p applied to the Frobenius
/// norms (|A+|, |A-|) of the conformal split. With this convention
/// B_2 = 2 det (factor recorded under params["det_factor"]).
Integrand burkholder_matrix(double p);
Integrand burkholder_plus_matrix(double p);

/// Sverak's non-homogeneous rank-one convex L on C^2.
Integrand sverak_L();

/// |A|^degree * E(A/|A|) with value 0 at the origin.
Integrand homogenize(Integrand inner, double degree);

Integrand negate(Integrand f);
/// f^k pointwise for f >= 0; multiplies the homogeneity degree by k.
Integrand positive_power(Integrand f, double k);
/// Squared Frobenius norm (not rank-one convex when negated; test control).
Integrand frobenius_squared(int n);

/// Both sides of the Baernstein-Montgomery-Smith identity
/// int_0^inf t^{p-1} L(z/t, w/t) dt = 2/(p(2-p)) B_p(z,w), 1 < p < 2,
/// evaluated in closed form.
struct LbIdentity {
  double lhs;
  double rhs;
};
LbIdentity lb_integral_identity(std::complex<double> z, std::complex<double> w, double p);

/// Adaptive-quadrature evaluation of the same integral (log substitution,
/// no knowledge of the closed form); cross-check for lb_integral_identity.
double lb_integral_quadrature(std::complex<double> z, std::complex<double> w, double p,
                              double tol = 1e-9);

/// Parses the CLI integrand ids: det+, det-, absdet,
/// minor:{rows}:{cols}:{+|-}, F:{k}, burkholder:{p}, burkholder+:{p}, L,
/// homog:{degree}:{inner-id}. Matrix ids are built for dimension n.
Integrand parse_integrand(const std::string& id, int n);

}  // namespace r1c
