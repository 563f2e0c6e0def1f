#include "r1c/suites.hpp"

#include "r1c/choquet1d.hpp"
#include "r1c/convexity.hpp"
#include "r1c/integrands.hpp"
#include "r1c/matrix_core.hpp"
#include "r1c/measure.hpp"
#include "r1c/prelaminate.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace r1c::suites {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  long checks = 0;
  long failures = 0;
  std::ostringstream log;

  void expect(bool cond, const char* what, double value = 0.0) {
    ++checks;
    if (cond) return;
    if (failures < 4) log << (failures ? "; " : "") << what << " (value " << value << ")";
    ++failures;
  }
  bool ok() const { return failures == 0; }
};

SuiteResult finish(std::string name, const Check& c, json data, Clock::time_point start) {
  SuiteResult r;
  r.name = std::move(name);
  r.passed = c.ok();
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream detail;
  detail << c.checks << " checks";
  if (!c.ok()) detail << ", " << c.failures << " failed: " << c.log.str();
  r.detail = detail.str();
  data["checks"] = c.checks;
  data["failures"] = c.failures;
  r.data = std::move(data);
  return r;
}

ScanConfig scan_config(const SuiteOptions& opts) {
  ScanConfig cfg;
  cfg.seed = opts.seed;
  cfg.threads = opts.threads;
  return cfg;
}

}  // namespace

SuiteResult matrix_core_invariants(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  const int samples = opts.quick ? 100 : 400;
  RandomStream rs(derive_seed(opts.seed, 101));

  for (int i = 0; i < samples; ++i) {
    const int n = 1 + static_cast<int>(rs.uniform01() * 4.0);
    const Eigen::MatrixXd A = sample_box_matrix(rs, n, 2.0);
    const SignedSvd svd = signed_svd(A);
    const double scale = 1.0 + A.norm();
    c.expect(svd.sigma.size() == n, "sigma length");
    c.expect((svd.reconstruct() - A).norm() <= 1e-10 * scale, "svd reconstruction",
             (svd.reconstruct() - A).norm());
    c.expect((svd.left.transpose() * svd.left - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-12,
             "left factor orthogonal");
    c.expect((svd.right.transpose() * svd.right - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-12,
             "right factor orthogonal");
    c.expect(std::abs(svd.left.determinant() - 1.0) <= 1e-12, "left factor in SO(n)");
    c.expect(std::abs(svd.right.determinant() - 1.0) <= 1e-12, "right factor in SO(n)");
    for (int j = 0; j + 1 < n; ++j) {
      c.expect(svd.sigma[j] >= -1e-15, "leading singular values non-negative", svd.sigma[j]);
      const double next = j + 2 == n ? std::abs(svd.sigma[j + 1]) : svd.sigma[j + 1];
      c.expect(svd.sigma[j] >= next - 1e-12 * scale, "singular values ordered");
    }
    const double det = determinant(A);
    if (std::abs(det) > 1e-12 * scale)
      c.expect(svd.sigma[n - 1] * det > 0.0, "sign(sigma_n) = sign(det)", svd.sigma[n - 1]);

    if (n == 2) {
      const ConformalSplit cs = conformal_split(A);
      c.expect(((cs.plus + cs.minus) - A).norm() <= 1e-13 * scale, "A+ + A- reproduces A");
      c.expect(cs.plus(0, 0) == cs.plus(1, 1) && cs.plus(0, 1) == -cs.plus(1, 0),
               "conformal shape");
      c.expect(cs.minus(0, 0) == -cs.minus(1, 1) && cs.minus(0, 1) == cs.minus(1, 0),
               "anticonformal shape");
      const double np = cs.plus.norm(), nm = cs.minus.norm();
      c.expect(std::abs(2.0 * det - (np * np - nm * nm)) <= 1e-10 * (1.0 + scale * scale),
               "2 det = |A+|^2 - |A-|^2");
      const double s1 = (np + nm) / std::sqrt(2.0), s2 = (np - nm) / std::sqrt(2.0);
      c.expect(std::abs(svd.sigma[0] - s1) <= 1e-10 * scale, "sigma1 via conformal norms",
               svd.sigma[0] - s1);
      c.expect(std::abs(svd.sigma[1] - s2) <= 1e-10 * scale, "sigma2 via conformal norms",
               svd.sigma[1] - s2);
      const ComplexPair cp = to_complex_pair(A);
      c.expect((from_complex_pair(cp) - A).norm() <= 1e-14 * scale, "complex pair round trip");
      c.expect(std::abs(std::norm(cp.z) - 2.0 * np * np) <= 1e-12 * (1.0 + scale * scale),
               "|z|^2 = 2 |A+|^2");
      c.expect(std::abs(std::norm(cp.w) - 2.0 * nm * nm) <= 1e-12 * (1.0 + scale * scale),
               "|w|^2 = 2 |A-|^2");
    }
  }

  // Rank-one matrices have equal conformal and anticonformal norms.
  for (int i = 0; i < samples; ++i) {
    const Eigen::VectorXd u = sample_unit_vector(rs, 2), v = sample_unit_vector(rs, 2);
    const Eigen::MatrixXd X = rs.uniform(0.2, 3.0) * u * v.transpose();
    const ConformalSplit cs = conformal_split(X);
    c.expect(std::abs(cs.plus.norm() - cs.minus.norm()) <= 1e-10 * (1.0 + X.norm()),
             "rank-one X has |X+| = |X-|");
  }

  // Minors of order above the rank vanish.
  for (int i = 0; i < (opts.quick ? 20 : 60); ++i) {
    const int n = 4;
    const int rank = 1 + static_cast<int>(rs.uniform01() * 3.0);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < rank; ++r)
      A += rs.uniform(0.3, 2.0) * sample_unit_vector(rs, n) * sample_unit_vector(rs, n).transpose();
    const auto& basis = minor_basis(n);
    const MinorVector mv = all_minors(A);
    for (size_t j = 0; j < basis.size(); ++j) {
      const int order = basis[j].order();
      if (order > rank)
        c.expect(std::abs(mv.values[static_cast<long>(j)]) <=
                     1e-9 * std::pow(1.0 + A.norm(), order),
                 "minor of order above rank vanishes", mv.values[static_cast<long>(j)]);
    }
  }

  return finish("matrix-core", c, json{{"samples", samples}}, start);
}

SuiteResult zoo_metadata(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  ScanConfig cfg = scan_config(opts);
  cfg.n_base_points = opts.quick ? 40 : 200;

  std::vector<Integrand> zoo;
  for (int n : {2, 3}) {
    zoo.push_back(det_plus(n));
    zoo.push_back(det_minus(n));
    zoo.push_back(abs_det(n));
    for (int k = 0; k <= n; ++k) zoo.push_back(sverak_F(k, n));
  }
  zoo.push_back(truncated_minor(2, MinorSpec{{1}, {1}}, Sign::plus));
  zoo.push_back(truncated_minor(3, MinorSpec{{1, 2}, {1, 3}}, Sign::minus));
  for (double p : {1.2, 2.0, 3.0}) {
    zoo.push_back(burkholder(p));
    zoo.push_back(burkholder_plus(p));
  }
  zoo.push_back(burkholder_matrix(2.0));
  zoo.push_back(burkholder_plus_matrix(1.2));
  zoo.push_back(sverak_L());
  zoo.push_back(homogenize(sverak_L(), 2.5));
  zoo.push_back(homogenize(det_plus(2), 2.0));

  json per = json::object();
  for (const auto& f : zoo) {
    const auto hom = check_homogeneity(f, cfg);
    const auto iso = check_isotropy(f, cfg);
    c.expect(hom.passed, ("homogeneity metadata: " + f.name).c_str(),
             static_cast<double>(hom.failures.size()));
    c.expect(iso.passed, ("isotropy metadata: " + f.name).c_str(),
             static_cast<double>(iso.failures.size()));
    per[f.name] = {{"homogeneity", hom.passed}, {"isotropy", iso.passed}};
  }

  // B_p vanishes on the cone of aperture p* - 1.
  RandomStream rs(derive_seed(opts.seed, 102));
  for (double p : {1.2, 2.0, 3.0}) {
    const Integrand B = burkholder(p);
    const ConeSpec cone = ConeSpec::burkholder_zero_set(p);
    for (int i = 0; i < cfg.n_base_points; ++i) {
      const double r = rs.uniform(0.1, 2.0);
      const double phase_z = rs.uniform(0.0, 2.0 * M_PI);
      const double phase_w = rs.uniform(0.0, 2.0 * M_PI);
      const ComplexPair zw = cone.point(r, phase_z, phase_w);
      c.expect(cone.contains(zw.z, zw.w), "cone points satisfy a|z| = |w|");
      const double tol = 1e-12 * (1.0 + std::pow(r * (1.0 + cone.aperture), p));
      c.expect(std::abs(B(zw.z, zw.w)) <= tol, "B_p vanishes on its cone", B(zw.z, zw.w));
    }
  }

  // L is continuous across |z| + |w| = 1: both branch formulas agree there.
  for (int i = 0; i < cfg.n_base_points; ++i) {
    const double az = rs.uniform(0.0, 1.0);
    const double aw = 1.0 - az;
    const double inner = az * az - aw * aw;
    const double outer = 2.0 * az - 1.0;
    c.expect(std::abs(inner - outer) <= 1e-14, "L branches agree on the interface",
             inner - outer);
  }

  // Matrix-level convention: B_2 = 2 det, so B_2^+ = 2 det^+.
  const Integrand B2 = burkholder_matrix(2.0);
  const Integrand B2p = burkholder_plus_matrix(2.0);
  const Integrand dp = det_plus(2);
  for (int i = 0; i < cfg.n_base_points; ++i) {
    const Eigen::MatrixXd A = sample_box_matrix(rs, 2, 2.0);
    const double det = determinant(A);
    c.expect(std::abs(B2(A) - 2.0 * det) <= 1e-12 * (1.0 + 2.0 * std::abs(det)),
             "matrix B_2 = 2 det", B2(A) - 2.0 * det);
    c.expect(std::abs(B2p(A) - 2.0 * dp(A)) <= 1e-12 * (1.0 + 2.0 * dp(A)),
             "matrix B_2^+ = 2 det^+", B2p(A) - 2.0 * dp(A));
  }

  return finish("zoo-metadata", c, json{{"members", per}}, start);
}

SuiteResult decomposition_identities(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  const int samples = opts.quick ? 1000 : 10000;
  RandomStream rs(derive_seed(opts.seed, 103));

  for (int n : {2, 3}) {
    const Integrand dp = det_plus(n), dm = det_minus(n), ad = abs_det(n);
    std::vector<Integrand> F;
    for (int k = 0; k <= n; ++k) F.push_back(sverak_F(k, n));
    for (int i = 0; i < samples; ++i) {
      const Eigen::MatrixXd A = sample_box_matrix(rs, n, 2.0);
      c.expect(std::abs(ad(A) - (dp(A) + dm(A))) <= 1e-12, "|det| = det+ + det-");

      const Eigen::MatrixXd S = sample_box_symmetric(rs, n, 2.0);
      double even = 0.0, odd = 0.0;
      for (int k = 0; k <= n; ++k) (k % 2 == 0 ? even : odd) += F[static_cast<size_t>(k)](S);
      c.expect(std::abs(dp(S) - even) <= 1e-12, "det+ = sum of even F_k", dp(S) - even);
      c.expect(std::abs(dm(S) - odd) <= 1e-12, "det- = sum of odd F_k", dm(S) - odd);
    }
  }
  return finish("decomposition-identities", c, json{{"samples", samples}}, start);
}

SuiteResult lb_identity(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;

  const auto exact = lb_integral_identity(1.0, 0.0, 1.5);
  const double target = 16.0 / 3.0;
  c.expect(std::abs(exact.lhs - target) <= 1e-12, "closed form lhs = 16/3 at (1,0,1.5)",
           exact.lhs - target);
  c.expect(std::abs(exact.rhs - target) <= 1e-12, "closed form rhs = 16/3 at (1,0,1.5)",
           exact.rhs - target);
  const double quad = lb_integral_quadrature(1.0, 0.0, 1.5);
  c.expect(std::abs(quad - exact.lhs) <= 1e-6, "quadrature cross-check", quad - exact.lhs);

  RandomStream rs(derive_seed(opts.seed, 104));
  const int samples = opts.quick ? 30 : 100;
  for (int i = 0; i < samples; ++i) {
    const double p = 1.0 + 1e-3 + rs.uniform01() * (1.0 - 2e-3);
    std::complex<double> z, w;
    do {
      z = {rs.uniform(-2.0, 2.0), rs.uniform(-2.0, 2.0)};
      w = {rs.uniform(-2.0, 2.0), rs.uniform(-2.0, 2.0)};
    } while (std::abs(z) + std::abs(w) < 1e-3);
    const auto id = lb_integral_identity(z, w, p);
    const double tol = 1e-8 * (1.0 + std::max(std::abs(id.lhs), std::abs(id.rhs)));
    c.expect(std::abs(id.lhs - id.rhs) <= tol, "closed forms agree", id.lhs - id.rhs);

    // Scaling: lhs(2z, 2w) = 2^p lhs(z, w).
    const auto scaled = lb_integral_identity(2.0 * z, 2.0 * w, p);
    const double expect = std::pow(2.0, p) * id.lhs;
    c.expect(std::abs(scaled.lhs - expect) <= 1e-9 * (1.0 + std::abs(expect)),
             "p-homogeneous scaling", scaled.lhs - expect);
  }

  // Both sides vanish on the cone |w| = (p*-1)|z|.
  for (int i = 0; i < samples; ++i) {
    const double p = rs.uniform(1.1, 1.9);
    const ConeSpec cone = ConeSpec::burkholder_zero_set(p);
    const double r = rs.uniform(0.1, 2.0);
    const double phase_z = rs.uniform(0.0, 2.0 * M_PI);
    const double phase_w = rs.uniform(0.0, 2.0 * M_PI);
    const ComplexPair zw = cone.point(r, phase_z, phase_w);
    const auto id = lb_integral_identity(zw.z, zw.w, p);
    const double scale =
        std::pow(1.0 + r * (1.0 + cone.aperture), p) * (1.0 / (p - 1.0) + 1.0 / (2.0 - p));
    c.expect(std::abs(id.rhs) <= 1e-9 * scale, "rhs vanishes on the cone", id.rhs);
    c.expect(std::abs(id.lhs) <= 1e-9 * scale, "lhs vanishes on the cone", id.lhs);
  }

  return finish("lb-integral-identity", c,
                json{{"lhs_at_example", exact.lhs}, {"quadrature", quad}, {"samples", samples}},
                start);
}

SuiteResult h_grid(const SuiteOptions& opts) {
  (void)opts;  // the grid is fixed by the criterion
  const auto start = Clock::now();
  Check c;
  const int grid = 50;
  double max_err = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = 1.0 + 9.0 * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double k = static_cast<double>(j) / (grid - 1);
      const double err = std::abs(h_coefficient(1.0, t, k) - 1.0 / (t * t));
      max_err = std::max(max_err, err);
      c.expect(err <= 1e-12, "h_1(t,k) = t^-2", err);
    }
  }
  return finish("h-grid", c, json{{"grid", grid}, {"max_error", max_err}}, start);
}

SuiteResult lemma_hom(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;

  // Hand case a=2, (z,w)=(1,0), t=2.
  const auto hand = lemma_hom_split(HomSplitRequest{2.0, 1.0, 0.0, 2.0});
  c.expect(std::abs(hand.lambda1 - 4.0 / 7.0) <= 1e-14, "lambda1 = 4/7",
           hand.lambda1 - 4.0 / 7.0);
  c.expect(std::abs(hand.lambda2 - 5.0 / 8.0) <= 1e-14, "lambda2 = 5/8",
           hand.lambda2 - 5.0 / 8.0);
  c.expect(verify_prelaminate(hand.prelaminate).passed, "hand case verifies");

  const int samples = opts.quick ? 1000 : 10000;
  RandomStream rs(derive_seed(opts.seed, 105));
  for (int i = 0; i < samples; ++i) {
    const double a = 1.0 + 5.0 * rs.uniform01();
    const double t = 1.0 + 7.0 * rs.uniform01();
    const double k = rs.uniform01();
    const std::complex<double> z = std::polar(rs.uniform(0.5, 2.0), rs.uniform(0.0, 2.0 * M_PI));
    const std::complex<double> w =
        k == 0.0 ? 0.0 : std::polar(k * std::abs(z), rs.uniform(0.0, 2.0 * M_PI));
    const auto res = lemma_hom_split(HomSplitRequest{a, z, w, t});

    c.expect(res.lambda1 >= -1e-12 && res.lambda1 <= 1.0 + 1e-12, "lambda1 in [0,1]",
             res.lambda1);
    c.expect(res.lambda2 >= -1e-12 && res.lambda2 <= 1.0 + 1e-12, "lambda2 in [0,1]",
             res.lambda2);
    const double h = h_coefficient(a, t, k);
    c.expect(std::abs(res.lambda1 * res.lambda2 - h) <= 1e-10, "lambda1 lambda2 = h_a(t,k)",
             res.lambda1 * res.lambda2 - h);
    c.expect(verify_prelaminate(res.prelaminate).passed, "prelaminate verifies");

    const auto atoms = res.prelaminate.atoms();
    if (atoms.size() == 3) {
      // Depth-first order: (tA, B2, B1); B1 and B2 must sit on the cone.
      const ConeSpec cone(a);
      for (size_t bi : {size_t{1}, size_t{2}}) {
        const auto& cp = std::get<ComplexPair>(atoms[bi].second);
        c.expect(cone.contains(cp.z, cp.w), "B on the cone C_a",
                 std::abs(a * std::abs(cp.z) - std::abs(cp.w)));
      }
    }
  }
  return finish("lemma-hom-split", c,
                json{{"samples", samples}, {"lambda1", hand.lambda1}, {"lambda2", hand.lambda2}},
                start);
}

SuiteResult diag_split(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  const int cases = opts.quick ? 200 : 1000;
  RandomStream rs(derive_seed(opts.seed, 106));

  for (int i = 0; i < cases; ++i) {
    const int n = 2 + (i % 2);
    const SpaceKind space = (i / 2) % 2 == 0 ? SpaceKind::full : SpaceKind::symmetric;
    const bool symmetric = space == SpaceKind::symmetric;
    const Eigen::MatrixXd A =
        symmetric ? sample_box_symmetric(rs, n, 2.0) : sample_box_matrix(rs, n, 2.0);
    const double t = 1.0 + 2.0 * rs.uniform01();

    const Prelaminate P = diagonal_homogeneity_split(A, t, space);
    c.expect(verify_prelaminate(P).passed, "split verifies");

    // Every atom is either the stretched copy tA or lies on {det = 0}.
    const Eigen::MatrixXd tA = t * A;
    for (const auto& [wgt, pt] : P.atoms()) {
      const auto& m = std::get<Eigen::MatrixXd>(pt);
      const bool is_tA = (m - tA).norm() <= 1e-9 * (1.0 + tA.norm());
      const bool det_zero =
          std::abs(determinant(m)) <= 1e-9 * std::pow(1.0 + A.norm(), n);
      c.expect(is_tA || det_zero, "atom is tA or lies on {det = 0}", determinant(m));
    }

    // Homogeneity estimates for zoo members non-positive on {det = 0}.
    std::vector<Integrand> members{det_plus(n), det_minus(n), abs_det(n),
                                   positive_power(det_plus(n), 2.0)};
    if (symmetric)
      for (int k = 0; k <= n; ++k) members.push_back(sverak_F(k, n));
    const double tn = std::pow(t, n);
    for (const auto& E : members) {
      const double ea = E(A), eta = E(tA);
      c.expect(tn * ea <= eta + 1e-9, "t^n E(A) <= E(tA)", tn * ea - eta);
      const double s = 1.0 / t;
      const double esa = E(Eigen::MatrixXd(s * A));
      c.expect(std::pow(s, n) * ea >= esa - 1e-9, "reverse estimate for 0 < t <= 1",
               std::pow(s, n) * ea - esa);
      const bool n_homogeneous = E.homogeneity && *E.homogeneity == static_cast<double>(n);
      if (n_homogeneous)
        c.expect(std::abs(tn * ea - eta) <= 1e-12 * (1.0 + std::abs(eta)),
                 "equality for n-homogeneous members", tn * ea - eta);
    }
  }

  // Strict gap for (det+)^2 at t = 2 on matrices with det > 0.
  const int strict_cases = opts.quick ? 20 : 100;
  for (int i = 0; i < strict_cases; ++i) {
    const int n = 2 + (i % 2);
    Eigen::MatrixXd A;
    do {
      A = sample_box_matrix(rs, n, 2.0);
    } while (determinant(A) <= 0.1);
    const Integrand E = positive_power(det_plus(n), 2.0);
    const double t = 2.0;
    const double gap = E(Eigen::MatrixXd(t * A)) - std::pow(t, n) * E(A);
    c.expect(gap > 1e-6, "(det+)^2 has a strict gap at t = 2", gap);
  }

  return finish("diag-homogeneity-split", c, json{{"cases", cases}}, start);
}

SuiteResult rank_one_scans(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  ScanConfig cfg = scan_config(opts);
  cfg.n_base_points = opts.quick ? 100 : 1000;
  cfg.n_directions = opts.quick ? 10 : 100;

  std::vector<Integrand> expected_pass;
  for (double p : {1.2, 2.0, 3.0}) {
    expected_pass.push_back(burkholder(p));
    expected_pass.push_back(burkholder_plus(p));
  }
  expected_pass.push_back(sverak_L());
  for (int n : {2, 3}) {
    expected_pass.push_back(det_plus(n));
    expected_pass.push_back(det_minus(n));
    for (int k = 0; k <= n; ++k) expected_pass.push_back(sverak_F(k, n));
  }
  for (int s : {1, 2})
    for (const auto& spec : minor_specs_of_order(3, s)) {
      expected_pass.push_back(truncated_minor(3, spec, Sign::plus));
      expected_pass.push_back(truncated_minor(3, spec, Sign::minus));
    }

  json per = json::object();
  for (const auto& f : expected_pass) {
    const ViolationReport report = rank_one_scan(f, cfg);
    c.expect(report.passed, ("rank-one convex integrand has violations: " + f.name).c_str(),
             static_cast<double>(report.violation_count));
    // Keyed by name and domain: F:k and det+- exist for several dimensions.
    per[f.name + " on " + f.domain.to_string()] = {{"violations", report.violation_count},
                                                   {"checks", report.checks}};
  }

  // Negative controls must produce (reproducible) violations.
  for (Integrand control : {negate(det_plus(2)), negate(frobenius_squared(2))}) {
    const ViolationReport first = rank_one_scan(control, cfg);
    c.expect(first.violation_count > 0,
             ("negative control found no violations: " + control.name).c_str());
    const ViolationReport second = rank_one_scan(control, cfg);
    c.expect(to_json(first).dump() == to_json(second).dump(),
             "scan reports are deterministic across reruns");
    for (size_t i = 0; i < std::min<size_t>(first.witnesses.size(), 10); ++i) {
      const auto& w = first.witnesses[i];
      c.expect(std::abs(reevaluate_gap(control, w) - w.gap) <= 1e-14 * w.scale,
               "witness gap reproduces on re-evaluation");
    }
    per[control.name + " on " + control.domain.to_string()] = {
        {"violations", first.violation_count}, {"checks", first.checks}};
  }

  return finish("rank-one-scans", c,
                json{{"per_integrand", per},
                     {"n_base_points", cfg.n_base_points},
                     {"n_directions", cfg.n_directions}},
                start);
}

SuiteResult zigzag(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  ScanConfig cfg = scan_config(opts);
  cfg.n_base_points = opts.quick ? 50 : 200;
  cfg.n_directions = 10;

  for (double p : {2.0, 1.5}) {
    const auto report = zigzag_scan(p, cfg);
    c.expect(report.passed, "zigzag convexity violated",
             static_cast<double>(report.violation_count));
  }
  const auto reversed = zigzag_scan(2.0, cfg, /*reverse_norms=*/true);
  c.expect(reversed.violation_count > 0, "reversed norms must violate convexity");

  return finish("zigzag-convexity", c, json{{"reversed_violations", reversed.violation_count}},
                start);
}

SuiteResult homogeneity_bound(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  (void)opts;

  for (double a : {1.0, 1.5, 2.0, 3.0, 5.0})
    for (double p : {1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0}) {
      const auto r = homogeneity_bound_check(a, p);
      c.expect(std::abs(r.curve.front().second - 1.0) <= 1e-15, "F_a(1) = 1",
               r.curve.front().second - 1.0);
      c.expect(std::abs(r.derivative_at_1 - (p - 1.0 - 1.0 / a)) == 0.0,
               "analytic derivative formula");
      c.expect(std::abs(r.derivative_fd - r.derivative_at_1) <= 1e-6,
               "finite differences confirm the derivative",
               r.derivative_fd - r.derivative_at_1);
      c.expect(r.satisfied == (r.derivative_at_1 >= 0.0), "bound flag matches the derivative");
    }

  // Boundary case a = 1/(p-1): derivative exactly zero (Burkholder sharpness).
  for (double p : {1.1, 1.25, 1.5, 1.75, 1.9}) {
    const auto r = homogeneity_bound_check(1.0 / (p - 1.0), p);
    c.expect(std::abs(r.derivative_at_1) <= 1e-10, "boundary derivative vanishes",
             r.derivative_at_1);
    c.expect(std::abs(r.derivative_fd) <= 1e-6, "boundary FD derivative vanishes",
             r.derivative_fd);
  }

  // A failing aperture: a = 2, p = 1.2 undershoots.
  const auto bad = homogeneity_bound_check(2.0, 1.2);
  c.expect(std::abs(bad.derivative_at_1 + 0.3) <= 1e-12, "derivative -0.3 at (a,p)=(2,1.2)",
           bad.derivative_at_1 + 0.3);
  c.expect(!bad.satisfied, "bound not satisfied at (a,p)=(2,1.2)");
  const auto F_11 = [&] {
    for (const auto& [t, v] : bad.curve)
      if (t > 1.05) return v;
    return bad.curve.back().second;
  }();
  c.expect(F_11 < 1.0, "F_a dips below 1 just above t = 1", F_11);

  return finish("homogeneity-bound", c, json{{"boundary_checked", true}}, start);
}

SuiteResult euler_relation(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  ScanConfig cfg = scan_config(opts);
  cfg.n_base_points = opts.quick ? 20 : 60;

  std::vector<Integrand> members{det_plus(2),
                                 det_minus(2),
                                 det_plus(3),
                                 abs_det(2),
                                 sverak_F(0, 2),
                                 sverak_F(1, 2),
                                 sverak_F(1, 3),
                                 burkholder(1.2),
                                 burkholder(2.0),
                                 burkholder(3.0),
                                 burkholder_plus(2.0),
                                 burkholder_matrix(1.5),
                                 truncated_minor(2, MinorSpec{{1}, {1}}, Sign::plus),
                                 truncated_minor(3, MinorSpec{{1, 2}, {1, 3}}, Sign::plus),
                                 homogenize(sverak_L(), 2.5)};
  for (const auto& f : members) {
    const auto r = check_euler_relation(f, cfg);
    c.expect(r.passed, ("Euler relation: " + f.name).c_str(),
             static_cast<double>(r.failures.size()));
  }
  return finish("euler-relation", c, json{{"members", members.size()}}, start);
}

SuiteResult null_lagrangian(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  ScanConfig cfg = scan_config(opts);
  cfg.n_base_points = opts.quick ? 200 : 400;

  json fits = json::object();
  const auto run_det = [&](int n) {
    const Integrand det = raw_minor(n, [&] {
      MinorSpec s;
      for (int i = 1; i <= n; ++i) {
        s.rows.push_back(i);
        s.cols.push_back(i);
      }
      return s;
    }());
    const auto fit =
        null_lagrangian_fit(det, box_sampler(SpaceKind::full, n, cfg.box_radius), n, cfg);
    c.expect(fit.residual < 1e-10, "det fit residual", fit.residual);
    c.expect(std::abs(fit.c) <= 1e-8, "det fit constant", fit.c);
    const int det_slot = static_cast<int>(minor_basis(n).size()) - 1;
    for (int i = 0; i < fit.v.size(); ++i) {
      const double want = i == det_slot ? 1.0 : 0.0;
      c.expect(std::abs(fit.v[i] - want) <= 1e-8, "det fit coefficient", fit.v[i] - want);
    }
    fits["det_" + std::to_string(n)] = to_json(fit, n);
  };
  run_det(2);
  run_det(3);

  // det+ restricted to {det > 0} agrees with det.
  {
    const auto fit = null_lagrangian_fit(
        det_plus(2), det_sign_sampler(SpaceKind::full, 2, cfg.box_radius, Sign::plus), 2, cfg);
    c.expect(fit.residual < 1e-10, "det+ fit residual on {det > 0}", fit.residual);
    c.expect(std::abs(fit.c) <= 1e-8, "det+ fit constant", fit.c);
    const int det_slot = static_cast<int>(minor_basis(2).size()) - 1;
    for (int i = 0; i < fit.v.size(); ++i) {
      const double want = i == det_slot ? 1.0 : 0.0;
      c.expect(std::abs(fit.v[i] - want) <= 1e-8, "det+ fit coefficient", fit.v[i] - want);
    }
    fits["det_plus_on_positive"] = to_json(fit, 2);
  }

  // Construct-then-recover: f = 3 + 2 a11 - det.
  {
    Integrand f;
    f.domain = Domain::full(2);
    f.name = "3+2a11-det";
    f.eval = [](const Point& pt) {
      const auto& m = std::get<Eigen::MatrixXd>(pt);
      return 3.0 + 2.0 * m(0, 0) - determinant(m);
    };
    const auto fit =
        null_lagrangian_fit(f, box_sampler(SpaceKind::full, 2, cfg.box_radius), 2, cfg);
    c.expect(fit.residual < 1e-10, "constructed fit residual", fit.residual);
    c.expect(std::abs(fit.c - 3.0) <= 1e-8, "constant recovered", fit.c - 3.0);
    c.expect(std::abs(fit.v[0] - 2.0) <= 1e-8, "a11 coefficient recovered", fit.v[0] - 2.0);
    c.expect(std::abs(fit.v[4] + 1.0) <= 1e-8, "det coefficient recovered", fit.v[4] + 1.0);
    fits["construct_recover"] = to_json(fit, 2);
  }

  // |A|^2 is not rank-one affine and must be rejected.
  {
    const auto fit = null_lagrangian_fit(frobenius_squared(2),
                                         box_sampler(SpaceKind::full, 2, cfg.box_radius), 2, cfg);
    c.expect(fit.residual > 1e-2, "|A|^2 rejected", fit.residual);
    fits["frobenius_rejected"] = to_json(fit, 2);
  }

  return finish("null-lagrangian-fit", c, json{{"fits", fits}}, start);
}

SuiteResult minor_dependence(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  const ScanConfig cfg = scan_config(opts);

  const auto full42 = minor_dependence_rank(SpaceKind::full, 4, 2, cfg);
  c.expect(full42.rank == 36, "full space (n=4, s=2) rank 36",
           static_cast<double>(full42.rank));

  const auto sym42 = minor_dependence_rank(SpaceKind::symmetric, 4, 2, cfg);
  c.expect(sym42.rank < 36, "symmetric space (n=4, s=2) rank deficient",
           static_cast<double>(sym42.rank));
  c.expect(sym42.relation_checked, "three-term relation evaluated");
  c.expect(sym42.relation_residual < 1e-12, "three-term relation residual",
           sym42.relation_residual);

  const auto full_s1 = minor_dependence_rank(SpaceKind::full, 3, 1, cfg);
  c.expect(full_s1.rank == 9, "entries span the full space", full_s1.rank);
  const auto sym_s1 = minor_dependence_rank(SpaceKind::symmetric, 3, 1, cfg);
  c.expect(sym_s1.rank == 6, "entries span the symmetric space", sym_s1.rank);

  return finish("minor-dependence", c,
                json{{"full_4_2", to_json(full42)}, {"symmetric_4_2", to_json(sym42)}}, start);
}

SuiteResult jensen(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  RandomStream rs(derive_seed(opts.seed, 107));
  const int measures = opts.quick ? 5 : 20;

  // Every prelaminate-derived measure must test consistent.
  for (int i = 0; i < measures; ++i) {
    const double a = 1.0 + 4.0 * rs.uniform01();
    const double t = 1.0 + 3.0 * rs.uniform01();
    const double k = rs.uniform01();
    const std::complex<double> z = std::polar(rs.uniform(0.5, 1.5), rs.uniform(0.0, 2.0 * M_PI));
    const std::complex<double> w =
        k == 0.0 ? 0.0 : std::polar(k * std::abs(z), rs.uniform(0.0, 2.0 * M_PI));
    const auto res = lemma_hom_split(HomSplitRequest{a, z, w, t});
    const DiscreteMeasure nu = to_measure(res.prelaminate);
    const auto report = test_measure(nu, default_family(nu.space()));
    c.expect(report.consistent(), "cone-split measure is consistent",
             report.witness ? report.witness->gap : 0.0);
  }
  for (int i = 0; i < measures; ++i) {
    const int n = 2 + (i % 2);
    const SpaceKind space = (i / 2) % 2 == 0 ? SpaceKind::full : SpaceKind::symmetric;
    const Eigen::MatrixXd A = space == SpaceKind::symmetric ? sample_box_symmetric(rs, n, 2.0)
                                                            : sample_box_matrix(rs, n, 2.0);
    const double t = 1.0 + 2.0 * rs.uniform01();
    const DiscreteMeasure nu = to_measure(diagonal_homogeneity_split(A, t, space));
    const auto report = test_measure(nu, default_family(nu.space()));
    c.expect(report.consistent(), "diagonal-split measure is consistent",
             report.witness ? report.witness->gap : 0.0);
  }

  // The classical non-laminate: half I, half -I.
  {
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
    const DiscreteMeasure nu(Domain::full(2), {WeightedAtom{0.5, I}, WeightedAtom{0.5, -I}});
    const auto report = test_measure(nu, default_family(nu.space()));
    c.expect(!report.consistent(), "I/-I mixture flagged");
    c.expect(report.witness && report.witness->integrand == "eq:det",
             "witness is the det equality");
    if (report.witness)
      c.expect(std::abs(report.witness->gap + 1.0) <= 1e-12, "det equality gap is -1",
               report.witness->gap + 1.0);
  }

  // Rank-one two-atom measures: exactly laminates, det gap exactly zero.
  const int pair_cases = opts.quick ? 10 : 50;
  for (int i = 0; i < pair_cases; ++i) {
    const Eigen::MatrixXd A = sample_box_matrix(rs, 2, 2.0);
    const Eigen::MatrixXd dir = rs.uniform(0.5, 1.5) * sample_unit_vector(rs, 2) *
                                sample_unit_vector(rs, 2).transpose();
    const double lambda = rs.uniform(0.1, 0.9);
    const DiscreteMeasure nu(
        Domain::full(2),
        {WeightedAtom{lambda, A}, WeightedAtom{1.0 - lambda, Eigen::MatrixXd(A + dir)}});
    const auto report = test_measure(nu, default_family(nu.space()));
    c.expect(report.consistent(), "rank-one pair is consistent",
             report.witness ? report.witness->gap : 0.0);
    c.expect(report.per_integrand_gaps.at("eq:det") >= -1e-12, "det gap exactly zero",
             report.per_integrand_gaps.at("eq:det"));
  }

  return finish("jensen-laminate", c, json{{"measures", 2 * measures + pair_cases + 1}}, start);
}

SuiteResult choquet_1d(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check c;
  (void)opts;
  const int N = 1000;

  // f(x) = x^2: uniform density ~2, reconstruction within 1e-5.
  {
    Eigen::VectorXd f(N + 1);
    for (int i = 0; i <= N; ++i) {
      const double x = static_cast<double>(i) / N;
      f[i] = x * x;
    }
    const auto res = choquet_decompose_1d(f);
    c.expect(res.reconstruction_error <= 1e-5, "x^2 reconstruction", res.reconstruction_error);
    double dmin = res.measure.density.minCoeff(), dmax = res.measure.density.maxCoeff();
    c.expect(std::abs(dmin - 2.0) <= 1e-6 && std::abs(dmax - 2.0) <= 1e-6,
             "x^2 density is uniformly 2", dmax - 2.0);
  }

  // Affine input: zero interior density, exact reconstruction.
  {
    Eigen::VectorXd f(N + 1);
    for (int i = 0; i <= N; ++i) {
      const double x = static_cast<double>(i) / N;
      f[i] = 0.3 + 0.4 * x;
    }
    const auto res = choquet_decompose_1d(f);
    c.expect(res.reconstruction_error <= 1e-12, "affine reconstruction exact",
             res.reconstruction_error);
    c.expect(res.measure.density.cwiseAbs().maxCoeff() <= 1e-9, "affine density vanishes",
             res.measure.density.cwiseAbs().maxCoeff());
  }

  // phi_{0.5}: the kink lands within one grid cell of y = 0.5.
  {
    Eigen::VectorXd f(N + 1);
    const Extreme1DSpec phi{Extreme1DSpec::Kind::phi, 0.5};
    for (int i = 0; i <= N; ++i) f[i] = extreme_1d(phi, static_cast<double>(i) / N);
    const auto res = choquet_decompose_1d(f);
    int arg = 0;
    res.measure.density.maxCoeff(&arg);
    const double y = (arg + 1) * res.measure.grid_step;
    c.expect(std::abs(y - 0.5) <= res.measure.grid_step, "kink located within one cell", y);
    c.expect(res.reconstruction_error <= res.measure.grid_step, "kink reconstruction within h",
             res.reconstruction_error);
  }

  return finish("choquet-1d", c, json{{"grid", N + 1}}, start);
}

std::vector<SuiteResult> run_all(const SuiteOptions& opts) {
  std::vector<SuiteResult> results;
  results.push_back(matrix_core_invariants(opts));
  results.push_back(zoo_metadata(opts));
  results.push_back(decomposition_identities(opts));
  results.push_back(lb_identity(opts));
  results.push_back(h_grid(opts));
  results.push_back(lemma_hom(opts));
  results.push_back(diag_split(opts));
  results.push_back(rank_one_scans(opts));
  results.push_back(zigzag(opts));
  results.push_back(homogeneity_bound(opts));
  results.push_back(euler_relation(opts));
  results.push_back(null_lagrangian(opts));
  results.push_back(minor_dependence(opts));
  results.push_back(jensen(opts));
  results.push_back(choquet_1d(opts));
  return results;
}

}  // namespace r1c::suites
