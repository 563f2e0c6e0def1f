#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace r1c {

/// The extreme rays of the non-negative convex functions on [0, 1]
/// normalised by f(0) + f(1) = 1:
///   phi_y(x) = (x-y)^+ / (1-y) for y in [0,1), phi_1 = indicator of {1};
///   psi_y(x) = (y-x)^+ / y for y in (0,1], psi_0 = indicator of {0}.
struct Extreme1DSpec {
  enum class Kind { phi, psi };
  Kind kind = Kind::phi;
  double y = 0.0;
};

double extreme_1d(const Extreme1DSpec& spec, double x);

/// Representing measure of a sampled convex function on [0, 1]: an affine
/// part pinned by the endpoint values (masses on phi_0 = x and psi_1 = 1-x)
/// plus a piecewise-constant kink density over the interior grid cells,
/// estimated by second differences / h^2.
struct RepresentingMeasure1D {
  double phi_vertex_mass = 0.0;  // affine part evaluated at x = 1
  double psi_vertex_mass = 0.0;  // affine part evaluated at x = 0
  Eigen::VectorXd density;       // density[i-1] ~ f''(x_i) for interior nodes i = 1..N-1
  double grid_step = 0.0;

  /// Integrates the measure against the kink family: the reconstruction of
  /// f at node j of the sampling grid.
  double reconstruct(int j) const;
};

struct NonConvexSamplesError : std::invalid_argument {
  NonConvexSamplesError(int index, double second_difference);
  int index;
  double second_difference;
};

struct Choquet1DResult {
  RepresentingMeasure1D measure;
  double reconstruction_error = 0.0;  // sup over grid nodes
};

/// Decomposes samples of a convex function on the uniform grid over [0, 1]
/// into the representing measure above. Rejects inputs whose second
/// differences fall below -1e-9 (NonConvexSamplesError carries the first
/// violating interior index).
Choquet1DResult choquet_decompose_1d(const Eigen::VectorXd& f_samples);

}  // namespace r1c
