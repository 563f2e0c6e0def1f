#include "r1c/convexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace r1c {

void ScanConfig::validate() const {
  if (n_base_points < 1 || n_directions < 1)
    throw std::invalid_argument("ScanConfig: sample counts must be positive");
  if (segment_grid < 3) throw std::invalid_argument("ScanConfig: segment_grid must be >= 3");
  if (!(box_radius > 0.0)) throw std::invalid_argument("ScanConfig: box_radius must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("ScanConfig: tolerance must be positive");
}

namespace {

struct SegmentViolation {
  std::array<double, 3> t;
  double gap;
};

struct SegmentOutcome {
  std::vector<SegmentViolation> violations;
  double scale = 1.0;
  long checks = 0;
};

// Midpoint checks centred on every grid node of [-1, 1]; the probe values
// reach one step past the ends.
SegmentOutcome check_segment(const std::function<double(double)>& g, int grid, double tolerance) {
  const double step = 2.0 / (grid - 1);
  const int total = grid + 2;
  std::vector<double> ts(total), vs(total);
  for (int i = 0; i < total; ++i) {
    ts[i] = -1.0 + (i - 1) * step;
    vs[i] = g(ts[i]);
  }
  double vmax = 0.0;
  for (double v : vs) vmax = std::max(vmax, std::abs(v));
  SegmentOutcome out;
  out.scale = 1.0 + vmax;
  out.checks = grid;
  const double tol = tolerance * out.scale;
  for (int c = 1; c <= grid; ++c) {
    const double gap = 0.5 * (vs[c - 1] + vs[c + 1]) - vs[c];
    if (gap < -tol) out.violations.push_back({{ts[c - 1], ts[c], ts[c + 1]}, gap});
  }
  return out;
}

void run_workers(long count, int threads, const std::function<void(int, long, long)>& body) {
  int n_workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  n_workers = static_cast<int>(std::min<long>(n_workers, std::max<long>(count, 1)));
  if (n_workers == 1) {
    body(0, 0, count);
    return;
  }
  const long chunk = (count + n_workers - 1) / n_workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) {
    const long begin = w * chunk;
    const long end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

void require_point_in_domain(const Integrand& f, const Point& p, const char* what) {
  const bool is_pair = std::holds_alternative<ComplexPair>(p);
  if (is_pair != (f.domain.kind == SpaceKind::complex_pair))
    throw std::invalid_argument(std::string("convexity check: ") + what +
                                " does not live in the integrand domain " + f.domain.to_string());
  if (!is_pair) {
    const auto& m = std::get<Eigen::MatrixXd>(p);
    if (m.rows() != f.domain.n || m.cols() != f.domain.n)
      throw std::invalid_argument(std::string("convexity check: ") + what + " has wrong dimension");
  }
}

}  // namespace

ViolationReport convexity_along_segment(const Integrand& f, const Point& base,
                                        const Point& direction, const ScanConfig& cfg) {
  cfg.validate();
  require_point_in_domain(f, base, "base point");
  require_point_in_domain(f, direction, "direction");
  if (!is_rank_one_direction(direction, 1e-9))
    throw std::invalid_argument("convexity_along_segment: direction is not rank-one");

  const auto outcome = check_segment(
      [&](double t) { return f(add_scaled(base, t, direction)); }, cfg.segment_grid,
      cfg.tolerance);

  ViolationReport report;
  report.integrand_id = f.name;
  report.config = cfg;
  report.checks = outcome.checks;
  report.violation_count = static_cast<long>(outcome.violations.size());
  report.passed = outcome.violations.empty();
  for (const auto& v : outcome.violations)
    report.witnesses.push_back(
        {base, direction, v.t[0], v.t[1], v.t[2], v.gap, outcome.scale});
  return report;
}

namespace {

struct ScanLocal {
  std::vector<ConvexityWitness> witnesses;
  long count = 0;
  long checks = 0;
};

ViolationReport merge_scan(const Integrand& f, const ScanConfig& cfg,
                           std::vector<ScanLocal>& locals) {
  ViolationReport report;
  report.integrand_id = f.name;
  report.config = cfg;
  for (auto& local : locals) {
    report.violation_count += local.count;
    report.checks += local.checks;
    for (auto& w : local.witnesses) {
      if (static_cast<int>(report.witnesses.size()) >= cfg.max_witnesses) break;
      report.witnesses.push_back(std::move(w));
    }
  }
  report.passed = report.violation_count == 0;
  return report;
}

}  // namespace

ViolationReport rank_one_scan(const Integrand& f, const ScanConfig& cfg) {
  cfg.validate();
  const Domain dom = f.domain;
  const long pairs = static_cast<long>(cfg.n_base_points) * cfg.n_directions;

  int n_workers = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  std::vector<ScanLocal> locals(static_cast<size_t>(n_workers));

  run_workers(pairs, n_workers, [&](int worker, long begin, long end) {
    ScanLocal& local = locals[static_cast<size_t>(worker)];
    for (long pi = begin; pi < end; ++pi) {
      const long bi = pi / cfg.n_directions;
      RandomStream bs(derive_seed(cfg.seed, 1, static_cast<std::uint64_t>(bi)));
      const Point base = sample_point(bs, dom, cfg.box_radius);
      RandomStream ds(derive_seed(cfg.seed, 2, static_cast<std::uint64_t>(pi)));
      const Point dir = sample_rank_one_direction(ds, dom);
      const auto outcome = check_segment(
          [&](double t) { return f(add_scaled(base, t, dir)); }, cfg.segment_grid, cfg.tolerance);
      local.checks += outcome.checks;
      local.count += static_cast<long>(outcome.violations.size());
      for (const auto& v : outcome.violations) {
        if (static_cast<int>(local.witnesses.size()) >= cfg.max_witnesses) break;
        local.witnesses.push_back({base, dir, v.t[0], v.t[1], v.t[2], v.gap, outcome.scale});
      }
    }
  });
  return merge_scan(f, cfg, locals);
}

ViolationReport zigzag_scan(double p, const ScanConfig& cfg, bool reverse_norms) {
  cfg.validate();
  const Integrand B = burkholder(p);
  const long pairs = static_cast<long>(cfg.n_base_points) * cfg.n_directions;

  int n_workers = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  std::vector<ScanLocal> locals(static_cast<size_t>(n_workers));

  run_workers(pairs, n_workers, [&](int worker, long begin, long end) {
    ScanLocal& local = locals[static_cast<size_t>(worker)];
    for (long pi = begin; pi < end; ++pi) {
      const long bi = pi / cfg.n_directions;
      RandomStream bs(derive_seed(cfg.seed, 5, static_cast<std::uint64_t>(bi)));
      const Point base = sample_point(bs, Domain::complex_pair(), cfg.box_radius);
      RandomStream ds(derive_seed(cfg.seed, 6, static_cast<std::uint64_t>(pi)));
      const double norm_a = ds.uniform(0.1, 1.0);
      const double ratio = ds.uniform(0.0, 1.0);
      const double norm_b = reverse_norms ? norm_a * (1.1 + ratio) : norm_a * ratio;
      const ComplexPair dir{std::polar(norm_a, ds.uniform(0.0, 2.0 * M_PI)),
                            std::polar(norm_b, ds.uniform(0.0, 2.0 * M_PI))};
      const Point dir_pt(dir);
      const auto outcome = check_segment(
          [&](double t) { return B(add_scaled(base, t, dir_pt)); }, cfg.segment_grid,
          cfg.tolerance);
      local.checks += outcome.checks;
      local.count += static_cast<long>(outcome.violations.size());
      for (const auto& v : outcome.violations) {
        if (static_cast<int>(local.witnesses.size()) >= cfg.max_witnesses) break;
        local.witnesses.push_back({base, dir_pt, v.t[0], v.t[1], v.t[2], v.gap, outcome.scale});
      }
    }
  });
  auto report = merge_scan(B, cfg, locals);
  report.integrand_id = (reverse_norms ? "zigzag-reversed:" : "zigzag:") + B.name;
  return report;
}

double reevaluate_gap(const Integrand& f, const ConvexityWitness& w) {
  const double fm = f(add_scaled(w.base, w.t_minus, w.direction));
  const double fc = f(add_scaled(w.base, w.t_center, w.direction));
  const double fp = f(add_scaled(w.base, w.t_plus, w.direction));
  return 0.5 * (fm + fp) - fc;
}

HomogeneityBoundResult homogeneity_bound_check(double a, double p, int n_samples, double t_max) {
  if (!(a >= 1.0 && p >= 1.0))
    throw std::invalid_argument("homogeneity_bound_check: requires a >= 1 and p >= 1");
  if (n_samples < 2 || !(t_max > 1.0))
    throw std::invalid_argument("homogeneity_bound_check: bad sampling parameters");
  const auto F = [a, p](double t) {
    return std::pow(t, p - 1.0) * (a * t + a - t + 1.0) / (a * t + a + t - 1.0);
  };
  HomogeneityBoundResult r;
  r.a = a;
  r.p = p;
  r.derivative_at_1 = p - 1.0 - 1.0 / a;
  const double h = 1e-6;
  r.derivative_fd = (F(1.0 + h) - F(1.0 - h)) / (2.0 * h);
  r.satisfied = r.derivative_at_1 >= 0.0;
  r.curve.reserve(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double t = 1.0 + (t_max - 1.0) * i / (n_samples - 1);
    r.curve.emplace_back(t, F(t));
  }
  return r;
}

RegionSampler box_sampler(SpaceKind space, int n, double radius) {
  if (space == SpaceKind::complex_pair)
    throw std::invalid_argument("box_sampler: matrix space required");
  const bool symmetric = space == SpaceKind::symmetric;
  return [symmetric, n, radius](RandomStream& rs) {
    return symmetric ? sample_box_symmetric(rs, n, radius) : sample_box_matrix(rs, n, radius);
  };
}

RegionSampler det_sign_sampler(SpaceKind space, int n, double radius, Sign sign) {
  RegionSampler inner = box_sampler(space, n, radius);
  const double s = sign == Sign::plus ? 1.0 : -1.0;
  return [inner, s](RandomStream& rs) {
    for (int tries = 0; tries < 10000; ++tries) {
      Eigen::MatrixXd A = inner(rs);
      if (s * determinant(A) > 0.0) return A;
    }
    throw std::runtime_error("det_sign_sampler: rejection sampling failed");
  };
}

NullLagrangianFit null_lagrangian_fit(const Integrand& f, const RegionSampler& sampler, int n,
                                      const ScanConfig& cfg, int min_samples) {
  cfg.validate();
  const auto& basis = minor_basis(n);
  const int cols = 1 + static_cast<int>(basis.size());
  const int samples = std::max({min_samples, cfg.n_base_points, 3 * cols});

  Eigen::MatrixXd X(samples, cols);
  Eigen::VectorXd y(samples);
  RandomStream rs(derive_seed(cfg.seed, 3, 0));
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXd A = sampler(rs);
    if (A.rows() != n || A.cols() != n)
      throw std::invalid_argument("null_lagrangian_fit: sampler dimension mismatch");
    X(s, 0) = 1.0;
    for (size_t j = 0; j < basis.size(); ++j)
      X(s, 1 + static_cast<int>(j)) = minor(A, basis[j]);
    y[s] = f(A);
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd beta = svd.solve(y);

  NullLagrangianFit fit;
  fit.n = n;
  fit.c = beta[0];
  fit.v = beta.tail(cols - 1);
  fit.sample_count = samples;
  fit.rank = static_cast<int>(svd.rank());
  const auto& sv = svd.singularValues();
  fit.condition = fit.rank > 0 ? sv[0] / sv[fit.rank - 1] : 0.0;
  const double rms_resid = std::sqrt((X * beta - y).squaredNorm() / samples);
  const double rms_y = std::sqrt(y.squaredNorm() / samples);
  fit.residual = rms_resid / (1.0 + rms_y);
  return fit;
}

MinorRankResult minor_dependence_rank(SpaceKind space, int n, int s, const ScanConfig& cfg) {
  cfg.validate();
  if (s < 1 || s > n)
    throw std::invalid_argument("minor_dependence_rank: order must lie in 1..n");
  const auto specs = minor_specs_of_order(n, s);
  const int cols = static_cast<int>(specs.size());
  const int samples = std::max(4 * cols, 64);

  const RegionSampler sampler = box_sampler(space, n, cfg.box_radius);
  RandomStream rs(derive_seed(cfg.seed, 4, 0));

  MinorRankResult result;
  result.minor_count = cols;
  result.sample_count = samples;
  const bool check_relation = space == SpaceKind::symmetric && n == 4 && s == 2;
  const MinorSpec m1234{{1, 2}, {3, 4}};
  const MinorSpec m1324{{1, 3}, {2, 4}};
  const MinorSpec m1423{{1, 4}, {2, 3}};

  Eigen::MatrixXd X(samples, cols);
  for (int row = 0; row < samples; ++row) {
    const Eigen::MatrixXd A = sampler(rs);
    for (int j = 0; j < cols; ++j) X(row, j) = minor(A, specs[static_cast<size_t>(j)]);
    if (check_relation && row < 100) {
      const double rel = -minor(A, m1234) + minor(A, m1324) - minor(A, m1423);
      result.relation_residual = std::max(result.relation_residual, std::abs(rel));
      result.relation_checked = true;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-9 * sv[0]) ++rank;
  result.rank = rank;
  return result;
}

namespace {

Point sample_nonzero(RandomStream& rs, const Domain& dom, double radius) {
  for (int tries = 0; tries < 100; ++tries) {
    Point p = sample_point(rs, dom, radius);
    if (point_norm(p) > 1e-6) return p;
  }
  throw std::runtime_error("sample_nonzero: failed");
}

}  // namespace

VerificationReport check_homogeneity(const Integrand& f, const ScanConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  if (!f.homogeneity) return report;
  const double p = *f.homogeneity;
  RandomStream rs(derive_seed(cfg.seed, 7, 0));
  for (int i = 0; i < cfg.n_base_points; ++i) {
    const Point A = sample_point(rs, f.domain, cfg.box_radius);
    const double fa = f(A);
    for (double t : {0.5, 2.0, 3.7, rs.uniform(0.25, 4.0)}) {
      const double expected = std::pow(t, p) * fa;
      const double got = f(scale(t, A));
      if (std::abs(got - expected) > cfg.tolerance * (1.0 + std::abs(expected)))
        report.fail("sample " + std::to_string(i), "homogeneity: f(tA) != t^p f(A)",
                    got - expected);
    }
  }
  return report;
}

VerificationReport check_isotropy(const Integrand& f, const ScanConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  if (!f.isotropic) return report;
  RandomStream rs(derive_seed(cfg.seed, 8, 0));
  for (int i = 0; i < cfg.n_base_points; ++i) {
    const Point A = sample_point(rs, f.domain, cfg.box_radius);
    const double fa = f(A);
    double transformed = 0.0;
    switch (f.domain.kind) {
      case SpaceKind::full: {
        const Eigen::MatrixXd Q = sample_rotation(rs, f.domain.n);
        const Eigen::MatrixXd R = sample_rotation(rs, f.domain.n);
        transformed = f(Point(Eigen::MatrixXd(Q * std::get<Eigen::MatrixXd>(A) * R)));
        break;
      }
      case SpaceKind::symmetric: {
        const Eigen::MatrixXd Q = sample_rotation(rs, f.domain.n);
        const Eigen::MatrixXd M = Q * std::get<Eigen::MatrixXd>(A) * Q.transpose();
        transformed = f(Point(SquareMatrix::symmetrized(M).mat()));
        break;
      }
      case SpaceKind::complex_pair: {
        const auto& c = std::get<ComplexPair>(A);
        const auto rot = [&](std::complex<double> v) {
          return v * std::polar(1.0, rs.uniform(0.0, 2.0 * M_PI));
        };
        transformed = f(Point(ComplexPair{rot(c.z), rot(c.w)}));
        break;
      }
    }
    if (std::abs(transformed - fa) > cfg.tolerance * (1.0 + std::abs(fa)))
      report.fail("sample " + std::to_string(i), "isotropy: f(QAR) != f(A)", transformed - fa);
  }
  return report;
}

VerificationReport check_euler_relation(const Integrand& f, const ScanConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  if (!f.homogeneity) return report;
  const double p = *f.homogeneity;
  RandomStream rs(derive_seed(cfg.seed, 9, 0));

  for (int i = 0; i < cfg.n_base_points; ++i) {
    // Pick a point a safe distance away from the integrand's kinks: the
    // finite-difference stencil must not straddle one.
    Point A = sample_nonzero(rs, f.domain, cfg.box_radius);
    bool found = true;
    if (f.smooth_margin) {
      found = false;
      for (int tries = 0; tries < 200; ++tries) {
        if (f.smooth_margin(A) > 0.05 * (1.0 + point_norm(A))) {
          found = true;
          break;
        }
        A = sample_nonzero(rs, f.domain, cfg.box_radius);
      }
    }
    if (!found) continue;

    const double h = 1e-5 * (1.0 + point_norm(A));
    double radial = 0.0;
    const auto accumulate = [&](const Point& dir, double coord) {
      const double diff =
          (f(add_scaled(A, h, dir)) - f(add_scaled(A, -h, dir))) / (2.0 * h);
      radial += diff * coord;
    };
    if (f.domain.kind == SpaceKind::complex_pair) {
      const auto& c = std::get<ComplexPair>(A);
      accumulate(Point(ComplexPair{{1, 0}, {0, 0}}), c.z.real());
      accumulate(Point(ComplexPair{{0, 1}, {0, 0}}), c.z.imag());
      accumulate(Point(ComplexPair{{0, 0}, {1, 0}}), c.w.real());
      accumulate(Point(ComplexPair{{0, 0}, {0, 1}}), c.w.imag());
    } else {
      const auto& m = std::get<Eigen::MatrixXd>(A);
      const int n = f.domain.n;
      const bool symmetric = f.domain.kind == SpaceKind::symmetric;
      for (int r = 0; r < n; ++r) {
        for (int c = symmetric ? r : 0; c < n; ++c) {
          Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(n, n);
          dir(r, c) = 1.0;
          if (symmetric && c != r) dir(c, r) = 1.0;
          // For symmetric pairs the direction e_rc + e_cr carries both
          // matching gradient entries, so the coordinate is a_rc itself.
          accumulate(Point(std::move(dir)), m(r, c));
        }
      }
    }
    const double expected = p * f(A);
    if (std::abs(expected - radial) > 1e-5 * (1.0 + std::abs(expected) + std::abs(radial)))
      report.fail("sample " + std::to_string(i), "Euler relation: p f(A) != <grad f, A>",
                  expected - radial);
  }
  return report;
}

}  // namespace r1c
