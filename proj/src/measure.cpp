#include "r1c/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace r1c {

DiscreteMeasure::DiscreteMeasure(Domain space, std::vector<WeightedAtom> atoms)
    : space_(space), atoms_(std::move(atoms)) {
  if (!space_.is_matrix())
    throw std::invalid_argument("DiscreteMeasure: space must be full or symmetric");
  if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: needs at least one atom");
  double sum = 0.0;
  for (size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!(a.weight > 0.0)) {
      std::ostringstream os;
      os << "DiscreteMeasure: atom " << i << " has non-positive weight " << a.weight;
      throw std::invalid_argument(os.str());
    }
    if (a.point.rows() != space_.n || a.point.cols() != space_.n) {
      std::ostringstream os;
      os << "DiscreteMeasure: atom " << i << " is " << a.point.rows() << "x" << a.point.cols()
         << ", expected " << space_.n << "x" << space_.n;
      throw std::invalid_argument(os.str());
    }
    if (space_.kind == SpaceKind::symmetric) {
      for (int r = 0; r < space_.n; ++r)
        for (int c = r + 1; c < space_.n; ++c)
          if (a.point(r, c) != a.point(c, r)) {
            std::ostringstream os;
            os << "DiscreteMeasure: atom " << i << " entry (" << r + 1 << "," << c + 1
               << ") breaks the symmetric tag";
            throw std::invalid_argument(os.str());
          }
    }
    sum += a.weight;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "DiscreteMeasure: weights sum to " << sum << " (off by " << sum - 1.0 << ")";
    throw std::invalid_argument(os.str());
  }
}

Eigen::MatrixXd DiscreteMeasure::barycenter() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(space_.n, space_.n);
  for (const auto& a : atoms_) b += a.weight * a.point;
  return b;
}

DiscreteMeasure dirac(Domain space, const Eigen::MatrixXd& A) {
  return DiscreteMeasure(space, {WeightedAtom{1.0, A}});
}

double jensen_gap(const Integrand& f, const DiscreteMeasure& nu) {
  if (!domain_accepts(f.domain, nu.space()))
    throw std::invalid_argument("jensen_gap: integrand domain " + f.domain.to_string() +
                                " does not accept measures on " + nu.space().to_string());
  double expectation = 0.0;
  for (const auto& a : nu.atoms()) expectation += a.weight * f(a.point);
  return expectation - f(nu.barycenter());
}

std::vector<Integrand> default_family(const Domain& space) {
  if (!space.is_matrix())
    throw std::invalid_argument("default_family: matrix space required");
  std::vector<Integrand> family;
  for (const auto& spec : minor_basis(space.n)) {
    family.push_back(truncated_minor(space.n, spec, Sign::plus));
    family.push_back(truncated_minor(space.n, spec, Sign::minus));
  }
  if (space.kind == SpaceKind::symmetric)
    for (int k = 0; k <= space.n; ++k) family.push_back(sverak_F(k, space.n));
  if (space.n == 2)
    for (double p : {1.2, 1.5, 3.0}) family.push_back(burkholder_plus_matrix(p));
  return family;
}

LaminateTestReport test_measure(const DiscreteMeasure& nu, const std::vector<Integrand>& family,
                                double tolerance) {
  if (family.empty()) throw std::invalid_argument("test_measure: empty family");
  LaminateTestReport report;
  report.tolerance = tolerance;

  struct Entry {
    std::string name;
    double gap;
    std::string kind;
  };
  std::vector<Entry> entries;
  for (const auto& f : family) {
    entries.push_back({f.name, jensen_gap(f, nu), "jensen"});
    report.family.push_back(f.name);
  }
  // Rank-one-affine equality checks: gap(M) >= -tol and gap(-M) >= -tol for
  // every minor M, folded into the single entry eq:<minor>.
  for (const auto& spec : minor_basis(nu.space().n)) {
    const Integrand m = raw_minor(nu.space().n, spec);
    const double gap = jensen_gap(m, nu);
    entries.push_back({"eq:" + m.name, -std::abs(gap), "minor equality"});
  }

  for (const auto& e : entries) report.per_integrand_gaps[e.name] = e.gap;

  const Entry* worst = nullptr;
  for (const auto& e : entries)
    if (!worst || e.gap < worst->gap || (e.gap == worst->gap && e.name < worst->name))
      worst = &e;
  if (worst && worst->gap < -tolerance) {
    report.verdict = LaminateTestReport::Verdict::not_laminate;
    report.witness = LaminateTestReport::Witness{worst->name, worst->gap, worst->kind};
  }
  return report;
}

}  // namespace r1c
