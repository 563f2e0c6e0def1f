#pragma once

#include "r1c/matrix_core.hpp"
#include "r1c/sampling.hpp"

#include <string>
#include <variant>

namespace r1c {

/// Evaluation space of an integrand, a measure or a prelaminate. Matrices
/// live in full(n) or symmetric(n); complex_pair is C^2 identified with
/// R^{2x2}.
struct Domain {
  SpaceKind kind = SpaceKind::full;
  int n = 2;

  static Domain full(int n) { return {SpaceKind::full, n}; }
  static Domain symmetric(int n) { return {SpaceKind::symmetric, n}; }
  static Domain complex_pair() { return {SpaceKind::complex_pair, 2}; }

  bool is_matrix() const { return kind != SpaceKind::complex_pair; }
  friend bool operator==(const Domain&, const Domain&) = default;
  std::string to_string() const;
};

/// A point may be evaluated by an integrand whose domain is at least as
/// large: full(n) accepts symmetric(n) points, never the reverse.
bool domain_accepts(const Domain& fn_domain, const Domain& point_domain);

using Point = std::variant<Eigen::MatrixXd, ComplexPair>;

Point scale(double t, const Point& p);
Point lincomb(double a, const Point& p, double b, const Point& q);
Point add_scaled(const Point& base, double t, const Point& dir);
Point point_sub(const Point& p, const Point& q);
double point_norm(const Point& p);
double point_distance(const Point& p, const Point& q);
Point zero_point(const Domain& d);
bool point_matches(const Domain& d, const Point& p);

/// Rank-one test for a split/scan direction. Matrix directions: second
/// singular value at most tol relative to the first. Complex-pair
/// directions (xi, zeta): | |xi| - |zeta| | at most tol, both non-zero.
bool is_rank_one_direction(const Point& dir, double tol = 1e-9);

Point sample_point(RandomStream& rs, const Domain& d, double radius);
Point sample_rank_one_direction(RandomStream& rs, const Domain& d);

}  // namespace r1c
