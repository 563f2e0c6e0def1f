#include "r1c/point.hpp"

#include <cmath>
#include <stdexcept>

namespace r1c {

std::string Domain::to_string() const {
  if (kind == SpaceKind::complex_pair) return "complex_pair";
  return r1c::to_string(kind) + "(" + std::to_string(n) + ")";
}

bool domain_accepts(const Domain& fn_domain, const Domain& point_domain) {
  if (fn_domain.kind == SpaceKind::complex_pair)
    return point_domain.kind == SpaceKind::complex_pair;
  if (point_domain.kind == SpaceKind::complex_pair) return false;
  if (fn_domain.n != point_domain.n) return false;
  if (fn_domain.kind == SpaceKind::symmetric)
    return point_domain.kind == SpaceKind::symmetric;
  return true;
}

namespace {

const Eigen::MatrixXd& as_mat(const Point& p) { return std::get<Eigen::MatrixXd>(p); }
const ComplexPair& as_pair(const Point& p) { return std::get<ComplexPair>(p); }

}  // namespace

Point scale(double t, const Point& p) {
  if (std::holds_alternative<Eigen::MatrixXd>(p)) return Point(Eigen::MatrixXd(t * as_mat(p)));
  const auto& c = as_pair(p);
  return Point(ComplexPair{t * c.z, t * c.w});
}

Point lincomb(double a, const Point& p, double b, const Point& q) {
  if (std::holds_alternative<Eigen::MatrixXd>(p))
    return Point(Eigen::MatrixXd(a * as_mat(p) + b * as_mat(q)));
  const auto& cp = as_pair(p);
  const auto& cq = as_pair(q);
  return Point(ComplexPair{a * cp.z + b * cq.z, a * cp.w + b * cq.w});
}

Point add_scaled(const Point& base, double t, const Point& dir) {
  return lincomb(1.0, base, t, dir);
}

Point point_sub(const Point& p, const Point& q) { return lincomb(1.0, p, -1.0, q); }

double point_norm(const Point& p) {
  if (std::holds_alternative<Eigen::MatrixXd>(p)) return as_mat(p).norm();
  const auto& c = as_pair(p);
  return std::sqrt(std::norm(c.z) + std::norm(c.w));
}

double point_distance(const Point& p, const Point& q) { return point_norm(point_sub(p, q)); }

Point zero_point(const Domain& d) {
  if (d.kind == SpaceKind::complex_pair) return Point(ComplexPair{0.0, 0.0});
  return Point(Eigen::MatrixXd(Eigen::MatrixXd::Zero(d.n, d.n)));
}

bool point_matches(const Domain& d, const Point& p) {
  if (d.kind == SpaceKind::complex_pair) return std::holds_alternative<ComplexPair>(p);
  if (!std::holds_alternative<Eigen::MatrixXd>(p)) return false;
  return as_mat(p).rows() == d.n && as_mat(p).cols() == d.n;
}

bool is_rank_one_direction(const Point& dir, double tol) {
  if (std::holds_alternative<ComplexPair>(dir)) {
    const auto& c = as_pair(dir);
    const double xi = std::abs(c.z), zeta = std::abs(c.w);
    if (xi <= 0.0 && zeta <= 0.0) return false;
    return std::abs(xi - zeta) <= tol * (1.0 + std::max(xi, zeta));
  }
  const auto& m = as_mat(dir);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() < 1 || s[0] <= 0.0) return false;
  if (s.size() == 1) return true;
  return s[1] <= tol * (1.0 + s[0]);
}

Point sample_point(RandomStream& rs, const Domain& d, double radius) {
  switch (d.kind) {
    case SpaceKind::full:
      return Point(sample_box_matrix(rs, d.n, radius));
    case SpaceKind::symmetric:
      return Point(sample_box_symmetric(rs, d.n, radius));
    case SpaceKind::complex_pair: {
      ComplexPair c;
      c.z = {rs.uniform(-radius, radius), rs.uniform(-radius, radius)};
      c.w = {rs.uniform(-radius, radius), rs.uniform(-radius, radius)};
      return Point(c);
    }
  }
  throw std::logic_error("sample_point: bad domain");
}

Point sample_rank_one_direction(RandomStream& rs, const Domain& d) {
  switch (d.kind) {
    case SpaceKind::full: {
      const Eigen::VectorXd u = sample_unit_vector(rs, d.n);
      const Eigen::VectorXd v = sample_unit_vector(rs, d.n);
      return Point(Eigen::MatrixXd(u * v.transpose()));
    }
    case SpaceKind::symmetric: {
      const Eigen::VectorXd v = sample_unit_vector(rs, d.n);
      return Point(Eigen::MatrixXd(v * v.transpose()));
    }
    case SpaceKind::complex_pair: {
      const double theta = rs.uniform(0.0, 2.0 * M_PI);
      const double phi = rs.uniform(0.0, 2.0 * M_PI);
      return Point(ComplexPair{std::polar(1.0, theta), std::polar(1.0, phi)});
    }
  }
  throw std::logic_error("sample_rank_one_direction: bad domain");
}

}  // namespace r1c
