#pragma once

#include "r1c/integrands.hpp"
#include "r1c/point.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace r1c {

struct WeightedAtom {
  double weight = 0.0;
  Eigen::MatrixXd point;
};

/// Finitely supported probability measure on a matrix space. Weights must
/// be positive and sum to one within 1e-9; atoms must live in the declared
/// space (exact symmetry under the symmetric tag).
class DiscreteMeasure {
 public:
  DiscreteMeasure(Domain space, std::vector<WeightedAtom> atoms);

  const Domain& space() const { return space_; }
  const std::vector<WeightedAtom>& atoms() const { return atoms_; }
  Eigen::MatrixXd barycenter() const;

 private:
  Domain space_;
  std::vector<WeightedAtom> atoms_;
};

DiscreteMeasure dirac(Domain space, const Eigen::MatrixXd& A);

/// <nu, f> - f(nu_bar). Non-negative across all rank-one convex f exactly
/// when nu is a laminate (Pedregal).
double jensen_gap(const Integrand& f, const DiscreteMeasure& nu);

/// The default non-negative test family for a space: every truncated minor
/// (both signs), F_k on symmetric spaces, and the matrix-level Burkholder
/// integrands B_p^+ for p in {1.2, 1.5, 3} when n = 2.
std::vector<Integrand> default_family(const Domain& space);

struct LaminateTestReport {
  enum class Verdict { consistent, not_laminate };

  struct Witness {
    std::string integrand;  // family member or "eq:<minor>"
    double gap = 0.0;
    std::string kind;  // "jensen" or "minor equality"
  };

  Verdict verdict = Verdict::consistent;
  std::optional<Witness> witness;
  std::map<std::string, double> per_integrand_gaps;
  std::vector<std::string> family;
  double tolerance = 0.0;

  bool consistent() const { return verdict == Verdict::consistent; }
};

/// Jensen test of nu against a family of non-negative rank-one convex
/// integrands, plus the rank-one-affine equality checks +/-M for every
/// minor M (reported as "eq:<minor>" with gap -|<nu,M> - M(nu_bar)|).
/// "consistent" is one-sided: the family is a strict subset of the extreme
/// integrands, so the verdict never certifies laminacy.
LaminateTestReport test_measure(const DiscreteMeasure& nu, const std::vector<Integrand>& family,
                                double tolerance = 1e-9);

}  // namespace r1c
