#include "r1c/integrands.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace r1c {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate_slope(double p) {
  // p* - 1 = max(p - 1, 1/(p - 1))
  return std::max(p - 1.0, 1.0 / (p - 1.0));
}

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double burkholder_of_norms(double x, double y, double p, double pstar1) {
  return (pstar1 * x - y) * std::pow(x + y, p - 1.0);
}

const Eigen::MatrixXd& mat_of(const Point& pt) { return std::get<Eigen::MatrixXd>(pt); }
const ComplexPair& pair_of(const Point& pt) { return std::get<ComplexPair>(pt); }

std::string sign_suffix(Sign s) { return s == Sign::plus ? "+" : "-"; }

}  // namespace

ConeSpec::ConeSpec(double a) : aperture(a) {
  if (!(a >= 1.0)) throw std::invalid_argument("ConeSpec: aperture must be >= 1");
}

ConeSpec ConeSpec::burkholder_zero_set(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("ConeSpec: p must satisfy 1 < p");
  return ConeSpec(conjugate_slope(p));
}

bool ConeSpec::contains(std::complex<double> z, std::complex<double> w, double tol) const {
  const double az = std::abs(z), aw = std::abs(w);
  return std::abs(aperture * az - aw) <= tol * (1.0 + aperture * az + aw);
}

ComplexPair ConeSpec::point(double radius, double phase_z, double phase_w) const {
  return ComplexPair{std::polar(radius, phase_z), std::polar(aperture * radius, phase_w)};
}

Integrand truncated_minor(int n, const MinorSpec& spec, Sign sign) {
  spec.validate(n);
  Integrand f;
  f.domain = Domain::full(n);
  f.name = spec.is_full(n) ? ("det" + sign_suffix(sign))
                           : ("minor:" + spec.label() + ":" + sign_suffix(sign));
  f.homogeneity = static_cast<double>(spec.order());
  f.isotropic = spec.is_full(n);
  const double s = sign == Sign::plus ? 1.0 : -1.0;
  f.eval = [spec, s](const Point& pt) { return std::max(0.0, s * minor(mat_of(pt), spec)); };
  f.smooth_margin = [spec](const Point& pt) { return std::abs(minor(mat_of(pt), spec)); };
  f.params["order"] = spec.order();
  return f;
}

Integrand raw_minor(int n, const MinorSpec& spec, bool negated) {
  spec.validate(n);
  Integrand f;
  f.domain = Domain::full(n);
  const std::string base = spec.is_full(n) ? "det" : "minor:" + spec.label();
  f.name = negated ? "-" + base : base;
  f.homogeneity = static_cast<double>(spec.order());
  f.isotropic = spec.is_full(n);
  const double s = negated ? -1.0 : 1.0;
  f.eval = [spec, s](const Point& pt) { return s * minor(mat_of(pt), spec); };
  f.params["order"] = spec.order();
  return f;
}

namespace {

MinorSpec full_spec(int n) {
  MinorSpec spec;
  for (int i = 1; i <= n; ++i) {
    spec.rows.push_back(i);
    spec.cols.push_back(i);
  }
  return spec;
}

}  // namespace

Integrand det_plus(int n) { return truncated_minor(n, full_spec(n), Sign::plus); }
Integrand det_minus(int n) { return truncated_minor(n, full_spec(n), Sign::minus); }

Integrand abs_det(int n) {
  Integrand f;
  f.domain = Domain::full(n);
  f.name = "absdet";
  f.homogeneity = static_cast<double>(n);
  f.isotropic = true;
  f.eval = [](const Point& pt) { return std::abs(determinant(mat_of(pt))); };
  f.smooth_margin = [](const Point& pt) { return std::abs(determinant(mat_of(pt))); };
  return f;
}

Integrand sverak_F(int k, int n) {
  if (k < 0 || k > n)
    throw std::invalid_argument("sverak_F: k must lie in 0..n");
  Integrand f;
  f.domain = Domain::symmetric(n);
  f.name = "F:" + std::to_string(k);
  f.homogeneity = static_cast<double>(n);
  f.isotropic = true;
  f.eval = [k](const Point& pt) {
    const auto& A = mat_of(pt);
    const auto idx = index_of(A);
    if (!idx || *idx != k) return 0.0;
    return std::abs(determinant(A));
  };
  // Smooth except across the singular set; margin = least |eigenvalue|.
  f.smooth_margin = [](const Point& pt) {
    return symmetric_eigenvalues(mat_of(pt)).cwiseAbs().minCoeff();
  };
  f.params["k"] = k;
  return f;
}

Integrand burkholder(double p) {
  if (!(p > 1.0))
    throw std::invalid_argument("burkholder: p must satisfy 1 < p");
  const double pstar1 = conjugate_slope(p);
  Integrand f;
  f.domain = Domain::complex_pair();
  f.name = "burkholder:" + fmt_param(p);
  f.homogeneity = p;
  f.isotropic = true;
  f.eval = [p, pstar1](const Point& pt) {
    const auto& c = pair_of(pt);
    return burkholder_of_norms(std::abs(c.z), std::abs(c.w), p, pstar1);
  };
  f.smooth_margin = [](const Point& pt) {
    const auto& c = pair_of(pt);
    return std::min(std::abs(c.z), std::abs(c.w));
  };
  f.params["p"] = p;
  return f;
}

Integrand burkholder_plus(double p) {
  Integrand f = burkholder(p);
  const double pstar1 = conjugate_slope(p);
  f.name = "burkholder+:" + fmt_param(p);
  auto inner = f.eval;
  f.eval = [inner](const Point& pt) { return std::max(0.0, inner(pt)); };
  f.smooth_margin = [pstar1](const Point& pt) {
    const auto& c = pair_of(pt);
    const double az = std::abs(c.z), aw = std::abs(c.w);
    return std::min({az, aw, std::abs(pstar1 * az - aw)});
  };
  return f;
}

Integrand burkholder_matrix(double p) {
  if (!(p > 1.0))
    throw std::invalid_argument("burkholder_matrix: p must satisfy 1 < p");
  const double pstar1 = conjugate_slope(p);
  Integrand f;
  f.domain = Domain::full(2);
  f.name = "burkholder2x2:" + fmt_param(p);
  f.homogeneity = p;
  f.isotropic = true;
  f.eval = [p, pstar1](const Point& pt) {
    const ConformalSplit s = conformal_split(mat_of(pt));
    return burkholder_of_norms(s.plus.norm(), s.minus.norm(), p, pstar1);
  };
  f.smooth_margin = [](const Point& pt) {
    const ConformalSplit s = conformal_split(mat_of(pt));
    return std::min(s.plus.norm(), s.minus.norm());
  };
  f.params["p"] = p;
  if (p == 2.0) f.params["det_factor"] = 2.0;  // B_2 = 2 det in this convention
  return f;
}

Integrand burkholder_plus_matrix(double p) {
  Integrand f = burkholder_matrix(p);
  const double pstar1 = conjugate_slope(p);
  f.name = "burkholder2x2+:" + fmt_param(p);
  auto inner = f.eval;
  f.eval = [inner](const Point& pt) { return std::max(0.0, inner(pt)); };
  f.smooth_margin = [pstar1](const Point& pt) {
    const ConformalSplit s = conformal_split(mat_of(pt));
    const double x = s.plus.norm(), y = s.minus.norm();
    return std::min({x, y, std::abs(pstar1 * x - y)});
  };
  return f;
}

Integrand sverak_L() {
  Integrand f;
  f.domain = Domain::complex_pair();
  f.name = "L";
  f.isotropic = true;
  f.eval = [](const Point& pt) {
    const auto& c = pair_of(pt);
    const double az = std::abs(c.z), aw = std::abs(c.w);
    if (az + aw <= 1.0) return az * az - aw * aw;
    return 2.0 * az - 1.0;
  };
  f.smooth_margin = [](const Point& pt) {
    const auto& c = pair_of(pt);
    const double az = std::abs(c.z), aw = std::abs(c.w);
    double m = std::abs(az + aw - 1.0);
    if (az + aw > 1.0) m = std::min(m, az);  // outer branch has a kink at z = 0
    return m;
  };
  return f;
}

Integrand homogenize(Integrand inner, double degree) {
  Integrand f;
  f.domain = inner.domain;
  std::ostringstream name;
  name << "homog:" << degree << ":" << inner.name;
  f.name = name.str();
  f.homogeneity = degree;
  f.isotropic = inner.isotropic;
  f.params = inner.params;
  auto inner_eval = inner.eval;
  f.eval = [inner_eval, degree](const Point& pt) {
    const double r = point_norm(pt);
    if (r == 0.0) return 0.0;
    return std::pow(r, degree) * inner_eval(scale(1.0 / r, pt));
  };
  auto inner_margin = inner.smooth_margin;
  f.smooth_margin = [inner_margin](const Point& pt) {
    const double r = point_norm(pt);
    if (r == 0.0) return 0.0;
    return inner_margin ? std::min(r, inner_margin(scale(1.0 / r, pt))) : r;
  };
  return f;
}

Integrand negate(Integrand f) {
  Integrand g = f;
  g.name = "neg:" + f.name;
  auto inner = f.eval;
  g.eval = [inner](const Point& pt) { return -inner(pt); };
  return g;
}

Integrand positive_power(Integrand f, double k) {
  Integrand g = f;
  std::ostringstream name;
  name << f.name << "^" << k;
  g.name = name.str();
  if (f.homogeneity) g.homogeneity = *f.homogeneity * k;
  auto inner = f.eval;
  g.eval = [inner, k](const Point& pt) { return std::pow(inner(pt), k); };
  return g;
}

Integrand frobenius_squared(int n) {
  Integrand f;
  f.domain = Domain::full(n);
  f.name = "frob2";
  f.homogeneity = 2.0;
  f.isotropic = true;
  f.eval = [](const Point& pt) { return mat_of(pt).squaredNorm(); };
  return f;
}

LbIdentity lb_integral_identity(std::complex<double> z, std::complex<double> w, double p) {
  if (!(p > 1.0 && p < 2.0))
    throw std::invalid_argument("lb_integral_identity: p must lie in (1, 2)");
  const double x = std::abs(z), y = std::abs(w);
  const double s = x + y;
  if (s == 0.0)
    throw std::invalid_argument("lb_integral_identity: (z, w) must be non-zero");
  // Split at t0 = |z| + |w|:
  //   t < t0: integrand 2|z| t^{p-2} - t^{p-1}
  //   t > t0: integrand (|z|^2 - |w|^2) t^{p-3}
  LbIdentity id;
  id.lhs = 2.0 * x * std::pow(s, p - 1.0) / (p - 1.0) - std::pow(s, p) / p +
           (x * x - y * y) * std::pow(s, p - 2.0) / (2.0 - p);
  const double pstar1 = conjugate_slope(p);
  id.rhs = 2.0 / (p * (2.0 - p)) * burkholder_of_norms(x, y, p, pstar1);
  return id;
}

namespace {

// Adaptive Simpson on [a, b] with explicit recursion depth bound.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = g(a), fm = g(m), fb = g(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double lb_integral_quadrature(std::complex<double> z, std::complex<double> w, double p,
                              double tol) {
  if (!(p > 1.0 && p < 2.0))
    throw std::invalid_argument("lb_integral_quadrature: p must lie in (1, 2)");
  const double s = std::abs(z) + std::abs(w);
  if (s == 0.0)
    throw std::invalid_argument("lb_integral_quadrature: (z, w) must be non-zero");
  const Integrand L = sverak_L();
  // Substitute t = e^u; the integrand decays like e^{(p-1)u} to the left of
  // the kink at u0 = log(t0) and like e^{(p-2)u} to the right.
  const auto g = [&](double u) {
    const double t = std::exp(u);
    return std::exp(p * u) * L(z / t, w / t);
  };
  const double u0 = std::log(s);
  const double left = u0 - 32.0 / (p - 1.0);
  const double right = u0 + 32.0 / (2.0 - p);
  const double scale = std::max(1.0, std::pow(s, p));
  return integrate(g, left, u0, tol * scale) + integrate(g, u0, right, tol * scale);
}

namespace {

std::vector<std::string> split_tokens(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split_tokens(s, ',')) {
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("invalid index list: \"" + s + "\"");
    out.push_back(v);
  }
  return out;
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("invalid number: \"" + s + "\"");
  return v;
}

}  // namespace

Integrand parse_integrand(const std::string& id, int n) {
  if (id == "det+") return det_plus(n);
  if (id == "det-") return det_minus(n);
  if (id == "absdet") return abs_det(n);
  if (id == "L") return sverak_L();
  if (id == "frob2") return frobenius_squared(n);
  if (id.rfind("F:", 0) == 0) return sverak_F(std::stoi(id.substr(2)), n);
  if (id.rfind("burkholder+:", 0) == 0) return burkholder_plus(parse_double(id.substr(12)));
  if (id.rfind("burkholder:", 0) == 0) return burkholder(parse_double(id.substr(11)));
  if (id.rfind("burkholder2x2+:", 0) == 0)
    return burkholder_plus_matrix(parse_double(id.substr(15)));
  if (id.rfind("burkholder2x2:", 0) == 0) return burkholder_matrix(parse_double(id.substr(14)));
  if (id.rfind("neg:", 0) == 0) return negate(parse_integrand(id.substr(4), n));
  if (id.rfind("homog:", 0) == 0) {
    const std::string rest = id.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("homog id needs a degree and an inner id: \"" + id + "\"");
    const double degree = parse_double(rest.substr(0, colon));
    return homogenize(parse_integrand(rest.substr(colon + 1), n), degree);
  }
  if (id.rfind("minor:", 0) == 0) {
    const auto parts = split_tokens(id, ':');
    if (parts.size() != 4)
      throw std::invalid_argument("minor id must look like minor:{rows}:{cols}:{+|-}: \"" + id +
                                  "\"");
    MinorSpec spec{parse_index_list(parts[1]), parse_index_list(parts[2])};
    if (parts[3] == "+") return truncated_minor(n, spec, Sign::plus);
    if (parts[3] == "-") return truncated_minor(n, spec, Sign::minus);
    throw std::invalid_argument("minor id sign must be + or -: \"" + id + "\"");
  }
  throw std::invalid_argument("unknown integrand id: \"" + id + "\"");
}

}  // namespace r1c
