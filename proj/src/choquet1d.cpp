#include "r1c/choquet1d.hpp"

#include <cmath>
#include <sstream>

namespace r1c {

double extreme_1d(const Extreme1DSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("extreme_1d: x must lie in [0, 1]");
  if (!(spec.y >= 0.0 && spec.y <= 1.0))
    throw std::domain_error("extreme_1d: y must lie in [0, 1]");
  if (spec.kind == Extreme1DSpec::Kind::phi) {
    if (spec.y == 1.0) return x == 1.0 ? 1.0 : 0.0;
    return std::max(0.0, x - spec.y) / (1.0 - spec.y);
  }
  if (spec.y == 0.0) return x == 0.0 ? 1.0 : 0.0;
  return std::max(0.0, spec.y - x) / spec.y;
}

NonConvexSamplesError::NonConvexSamplesError(int idx, double d2)
    : std::invalid_argument([&] {
        std::ostringstream os;
        os << "non-convex samples: second difference " << d2 << " at index " << idx;
        return os.str();
      }()),
      index(idx),
      second_difference(d2) {}

double RepresentingMeasure1D::reconstruct(int j) const {
  const double h = grid_step;
  const double x = j * h;
  double value = psi_vertex_mass * (1.0 - x) + phi_vertex_mass * x;
  // Cells strictly left of x contribute their exact integral h*(x - x_i)
  // (midpoint rule is exact for the linear factor); the cell straddling x
  // contributes the half-cell integral h^2/8.
  for (int i = 1; i < j; ++i) value += density[i - 1] * h * (x - i * h);
  if (j >= 1 && j - 1 < density.size()) value += density[j - 1] * h * h / 8.0;
  return value;
}

Choquet1DResult choquet_decompose_1d(const Eigen::VectorXd& f) {
  const int N = static_cast<int>(f.size()) - 1;  // number of cells
  if (N < 2)
    throw std::invalid_argument("choquet_decompose_1d: need at least 3 samples");
  const double h = 1.0 / N;

  RepresentingMeasure1D m;
  m.grid_step = h;
  m.density.resize(N - 1);
  for (int i = 1; i < N; ++i) {
    const double d2 = f[i + 1] - 2.0 * f[i] + f[i - 1];
    if (d2 < -1e-9) throw NonConvexSamplesError(i, d2);
    m.density[i - 1] = d2 / (h * h);
  }
  // Affine part a + b x with a = f(0) and b the initial slope; given the
  // kink masses this also matches f(1) exactly (telescoping).
  const double a = f[0];
  const double b = (f[1] - f[0]) / h;
  m.psi_vertex_mass = a;
  m.phi_vertex_mass = a + b;

  double err = 0.0;
  for (int j = 0; j <= N; ++j) err = std::max(err, std::abs(m.reconstruct(j) - f[j]));
  return Choquet1DResult{std::move(m), err};
}

}  // namespace r1c
