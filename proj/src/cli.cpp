#include "r1c/cli.hpp"

#include "r1c/convexity.hpp"
#include "r1c/integrands.hpp"
#include "r1c/measure.hpp"
#include "r1c/prelaminate.hpp"
#include "r1c/serialization.hpp"
#include "r1c/suites.hpp"
#include "r1c/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace r1c::cli {

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  std::string format = "json";
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "Master seed (fallback: env R1LAB_SEED, then 0)")
      ->each([&c](const std::string&) { c.seed_given = true; });
  cmd->add_option("--out", c.out_path, "Write the report to this path instead of stdout");
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", c.threads, "Worker threads for scans (0 = all cores)");
}

void resolve_seed(CommonOpts& c) {
  if (c.seed_given) return;
  if (const char* env = std::getenv("R1LAB_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("R1LAB_SEED is not an integer: \"" + std::string(env) + "\"");
    }
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const json& report, const std::string& csv, const CommonOpts& c, std::ostream& out,
          std::ostream& err) {
  const std::string text = c.format == "csv" ? csv : report.dump(2) + "\n";
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output path: " + c.out_path);
  f << text;
  err << "report written to " << c.out_path << "\n";
}

json report_envelope(const json& command_echo, json results, bool overall_pass) {
  return json{{"tool_version", std::string(kToolName) + " " + kToolVersion},
              {"command", command_echo},
              {"results", std::move(results)},
              {"overall_pass", overall_pass}};
}

std::complex<double> parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<double> flatten(const Point& p) {
  std::vector<double> out;
  if (std::holds_alternative<ComplexPair>(p)) {
    const auto& c = std::get<ComplexPair>(p);
    out = {c.z.real(), c.z.imag(), c.w.real(), c.w.imag()};
  } else {
    const auto& m = std::get<Eigen::MatrixXd>(p);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

// ----- subcommand runners ------------------------------------------------

int run_verify_all(const CommonOpts& common, const std::string& profile, std::ostream& out,
                   std::ostream& err) {
  suites::SuiteOptions opts;
  opts.seed = common.seed;
  opts.quick = profile == "quick";
  opts.threads = common.threads;
  const auto results = suites::run_all(opts);

  bool all = true;
  json jresults = json::array();
  std::ostringstream csv;
  csv << "suite,passed,detail\n";
  for (const auto& r : results) {
    all = all && r.passed;
    json jr{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
    jr["data"] = r.data;
    jresults.push_back(std::move(jr));
    csv << r.name << "," << (r.passed ? "1" : "0") << ",\"" << r.detail << "\"\n";
  }
  const json echo{{"subcommand", "verify-all"},
                  {"seed", common.seed},
                  {"profile", profile},
                  {"format", common.format}};
  emit(report_envelope(echo, std::move(jresults), all), csv.str(), common, out, err);
  return all ? 0 : 1;
}

int run_identity_check(const CommonOpts& common, const std::string& profile, std::ostream& out,
                       std::ostream& err) {
  suites::SuiteOptions opts;
  opts.seed = common.seed;
  opts.quick = profile == "quick";
  opts.threads = common.threads;
  std::vector<suites::SuiteResult> results;
  results.push_back(suites::matrix_core_invariants(opts));
  results.push_back(suites::decomposition_identities(opts));
  results.push_back(suites::lb_identity(opts));

  bool all = true;
  json jresults = json::array();
  std::ostringstream csv;
  csv << "suite,passed,detail\n";
  for (const auto& r : results) {
    all = all && r.passed;
    jresults.push_back(json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                            {"data", r.data}});
    csv << r.name << "," << (r.passed ? "1" : "0") << ",\"" << r.detail << "\"\n";
  }
  const json echo{{"subcommand", "identity-check"},
                  {"seed", common.seed},
                  {"profile", profile},
                  {"format", common.format}};
  emit(report_envelope(echo, std::move(jresults), all), csv.str(), common, out, err);
  return all ? 0 : 1;
}

int run_scan(const CommonOpts& common, const std::string& integrand_id, int n, int samples,
             int directions, int grid, double radius, double tol, std::ostream& out,
             std::ostream& err) {
  const Integrand f = parse_integrand(integrand_id, n);
  ScanConfig cfg;
  cfg.seed = common.seed;
  cfg.n_base_points = samples;
  cfg.n_directions = directions;
  cfg.segment_grid = grid;
  cfg.box_radius = radius;
  cfg.tolerance = tol;
  cfg.threads = common.threads;
  const ViolationReport report = rank_one_scan(f, cfg);

  std::ostringstream csv;
  csv << "witness,gap,t_minus,t_center,t_plus,scale,point...\n";
  for (size_t i = 0; i < report.witnesses.size(); ++i) {
    const auto& w = report.witnesses[i];
    csv << i << "," << fmt_double(w.gap) << "," << fmt_double(w.t_minus) << ","
        << fmt_double(w.t_center) << "," << fmt_double(w.t_plus) << "," << fmt_double(w.scale);
    for (double v : flatten(w.base)) csv << "," << fmt_double(v);
    for (double v : flatten(w.direction)) csv << "," << fmt_double(v);
    csv << "\n";
  }
  const json echo{{"subcommand", "scan"}, {"seed", common.seed}, {"integrand", integrand_id},
                  {"n", n},               {"samples", samples},  {"directions", directions},
                  {"grid", grid},         {"radius", radius},    {"tol", tol},
                  {"format", common.format}};
  json results = json::array();
  results.push_back(json{{"name", "rank-one-scan"}, {"passed", report.passed},
                         {"data", to_json(report)}});
  emit(report_envelope(echo, std::move(results), report.passed), csv.str(), common, out, err);
  return report.passed ? 0 : 1;
}

int run_jensen(const CommonOpts& common, const std::string& measure_path,
               const std::string& family_spec, double tol, std::ostream& out, std::ostream& err) {
  const DiscreteMeasure nu = parse_measure_file(measure_path);
  std::vector<Integrand> family;
  if (family_spec == "default") {
    family = default_family(nu.space());
  } else {
    std::stringstream ss(family_spec);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) family.push_back(parse_integrand(id, nu.space().n));
  }
  const LaminateTestReport report = test_measure(nu, family, tol);

  std::ostringstream csv;
  csv << "integrand,gap\n";
  for (const auto& [id, gap] : report.per_integrand_gaps)
    csv << id << "," << fmt_double(gap) << "\n";
  const json echo{{"subcommand", "jensen"},   {"seed", common.seed},
                  {"measure", measure_path},  {"family", family_spec},
                  {"tol", tol},               {"format", common.format}};
  json results = json::array();
  results.push_back(json{{"name", "laminate-test"}, {"passed", report.consistent()},
                         {"data", to_json(report)}});
  emit(report_envelope(echo, std::move(results), report.consistent()), csv.str(), common, out,
       err);
  return report.consistent() ? 0 : 1;
}

int run_prelaminate(const CommonOpts& common, const std::string& kind, double a,
                    const std::string& z_str, const std::string& w_str, bool k_given, double k,
                    double t, const std::string& matrix_spec, const std::string& space_str,
                    std::ostream& out, std::ostream& err) {
  json data;
  std::unique_ptr<Prelaminate> prelaminate;
  if (kind == "lemma-hom") {
    HomSplitRequest req;
    req.a = a;
    req.t = t;
    if (k_given) {
      req.z = 1.0;
      req.w = k;
    } else {
      req.z = parse_complex(z_str);
      req.w = parse_complex(w_str);
    }
    auto res = lemma_hom_split(req);
    data["lambda1"] = res.lambda1;
    data["lambda2"] = res.lambda2;
    data["h"] = h_coefficient(req.a, req.t, std::abs(req.w) / std::abs(req.z));
    prelaminate = std::make_unique<Prelaminate>(std::move(res.prelaminate));
  } else {  // diag-split
    std::string text = matrix_spec;
    if (!text.empty() && text[0] == '@') {
      std::ifstream f(text.substr(1));
      if (!f) throw std::invalid_argument("cannot open matrix file: " + text.substr(1));
      std::stringstream buf;
      buf << f.rdbuf();
      text = buf.str();
    }
    if (text.empty())
      throw std::invalid_argument("diag-split needs --matrix (inline JSON or @file)");
    const Eigen::MatrixXd A = matrix_from_json(json::parse(text));
    const SpaceKind space = space_kind_from_string(space_str);
    prelaminate = std::make_unique<Prelaminate>(diagonal_homogeneity_split(A, t, space));
  }

  const VerificationReport check = verify_prelaminate(*prelaminate);
  data["prelaminate"] = to_json(*prelaminate);
  data["verification"] = to_json(check);

  std::ostringstream csv;
  csv << "weight,point...\n";
  for (const auto& [wgt, pt] : prelaminate->atoms()) {
    csv << fmt_double(wgt);
    for (double v : flatten(pt)) csv << "," << fmt_double(v);
    csv << "\n";
  }
  const json echo{{"subcommand", "prelaminate"}, {"seed", common.seed}, {"kind", kind},
                  {"a", a},                      {"t", t},             {"format", common.format}};
  json results = json::array();
  results.push_back(json{{"name", kind}, {"passed", check.passed}, {"data", std::move(data)}});
  emit(report_envelope(echo, std::move(results), check.passed), csv.str(), common, out, err);
  return check.passed ? 0 : 1;
}

int run_fit_nl(const CommonOpts& common, const std::string& integrand_id, int n,
               const std::string& space_str, const std::string& region, int samples,
               double radius, double tol, std::ostream& out, std::ostream& err) {
  const SpaceKind space = space_kind_from_string(space_str);
  const Integrand f = parse_integrand(integrand_id, n);
  RegionSampler sampler;
  if (region == "box")
    sampler = box_sampler(space, n, radius);
  else if (region == "det+")
    sampler = det_sign_sampler(space, n, radius, Sign::plus);
  else if (region == "det-")
    sampler = det_sign_sampler(space, n, radius, Sign::minus);
  else
    throw std::invalid_argument("unknown region: \"" + region + "\"");

  ScanConfig cfg;
  cfg.seed = common.seed;
  cfg.n_base_points = samples;
  cfg.box_radius = radius;
  cfg.threads = common.threads;
  const NullLagrangianFit fit = null_lagrangian_fit(f, sampler, n, cfg);
  const bool passed = fit.residual <= tol;

  std::ostringstream csv;
  csv << "term,coefficient\n";
  csv << "1," << fmt_double(fit.c) << "\n";
  const auto& basis = minor_basis(n);
  for (size_t i = 0; i < basis.size(); ++i)
    csv << basis[i].label() << "," << fmt_double(fit.v[static_cast<long>(i)]) << "\n";
  csv << "residual," << fmt_double(fit.residual) << "\n";

  const json echo{{"subcommand", "fit-nl"}, {"seed", common.seed}, {"integrand", integrand_id},
                  {"n", n},                 {"space", space_str},  {"region", region},
                  {"samples", samples},     {"radius", radius},    {"tol", tol},
                  {"format", common.format}};
  json results = json::array();
  results.push_back(
      json{{"name", "null-lagrangian-fit"}, {"passed", passed}, {"data", to_json(fit, n)}});
  emit(report_envelope(echo, std::move(results), passed), csv.str(), common, out, err);
  return passed ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string(kToolName) +
               " - rank-one convexity verification toolkit (" + kToolVersion + ")"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* verify = app.add_subcommand("verify-all", "Run every verification suite");
  CommonOpts verify_common;
  add_common(verify, verify_common);
  std::string verify_profile = "full";
  verify->add_option("--profile", verify_profile, "full (stated sample counts) or quick")
      ->check(CLI::IsMember({"full", "quick"}));

  auto* identity = app.add_subcommand("identity-check", "Algebraic identity suites only");
  CommonOpts identity_common;
  add_common(identity, identity_common);
  std::string identity_profile = "full";
  identity->add_option("--profile", identity_profile, "full or quick")
      ->check(CLI::IsMember({"full", "quick"}));

  auto* scan = app.add_subcommand("scan", "Rank-one convexity scan of one integrand");
  CommonOpts scan_common;
  add_common(scan, scan_common);
  std::string scan_integrand;
  int scan_n = 2, scan_samples = 1000, scan_directions = 100, scan_grid = 41;
  double scan_radius = 2.0, scan_tol = 1e-9;
  scan->add_option("--integrand", scan_integrand, "Integrand id (see README)")->required();
  scan->add_option("--n", scan_n, "Matrix dimension for matrix-space ids");
  scan->add_option("--samples", scan_samples, "Number of base points");
  scan->add_option("--directions", scan_directions, "Directions per base point");
  scan->add_option("--grid", scan_grid, "Segment grid size");
  scan->add_option("--radius", scan_radius, "Sampling box radius");
  scan->add_option("--tol", scan_tol, "Convexity tolerance");

  auto* jensen = app.add_subcommand("jensen", "Laminate Jensen test of a measure file");
  CommonOpts jensen_common;
  add_common(jensen, jensen_common);
  std::string jensen_measure, jensen_family = "default";
  double jensen_tol = 1e-9;
  jensen->add_option("--measure", jensen_measure, "Measure JSON file")->required();
  jensen->add_option("--family", jensen_family, "\"default\" or comma-separated integrand ids");
  jensen->add_option("--tol", jensen_tol, "Gap tolerance");

  auto* prelam = app.add_subcommand("prelaminate", "Construct and verify a prelaminate");
  CommonOpts prelam_common;
  add_common(prelam, prelam_common);
  std::string prelam_kind, prelam_z = "1", prelam_w = "0", prelam_matrix, prelam_space = "full";
  double prelam_a = 1.0, prelam_t = 1.0, prelam_k = 0.0;
  bool prelam_k_given = false;
  prelam->add_option("--kind", prelam_kind, "lemma-hom or diag-split")
      ->required()
      ->check(CLI::IsMember({"lemma-hom", "diag-split"}));
  prelam->add_option("--a", prelam_a, "Cone aperture (lemma-hom)");
  prelam->add_option("--z", prelam_z, "Complex z as re or re,im (lemma-hom)");
  prelam->add_option("--w", prelam_w, "Complex w as re or re,im (lemma-hom)");
  prelam->add_option("--k", prelam_k, "Shortcut for (z,w) = (1,k) (lemma-hom)")
      ->each([&prelam_k_given](const std::string&) { prelam_k_given = true; });
  prelam->add_option("--t", prelam_t, "Stretch factor t >= 1");
  prelam->add_option("--matrix", prelam_matrix, "Matrix JSON rows or @file (diag-split)");
  prelam->add_option("--space", prelam_space, "full or symmetric (diag-split)")
      ->check(CLI::IsMember({"full", "symmetric"}));

  auto* fit = app.add_subcommand("fit-nl", "Null-Lagrangian (affine-in-minors) fit");
  CommonOpts fit_common;
  add_common(fit, fit_common);
  std::string fit_integrand, fit_space = "full", fit_region = "box";
  int fit_n = 2, fit_samples = 400;
  double fit_radius = 2.0, fit_tol = 1e-8;
  fit->add_option("--integrand", fit_integrand, "Integrand id")->required();
  fit->add_option("--n", fit_n, "Matrix dimension");
  fit->add_option("--space", fit_space, "full or symmetric")
      ->check(CLI::IsMember({"full", "symmetric"}));
  fit->add_option("--region", fit_region, "box, det+ or det-")
      ->check(CLI::IsMember({"box", "det+", "det-"}));
  fit->add_option("--samples", fit_samples, "Sample count");
  fit->add_option("--radius", fit_radius, "Sampling box radius");
  fit->add_option("--tol", fit_tol, "Residual threshold for a pass");

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed args
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) {
      resolve_seed(verify_common);
      return run_verify_all(verify_common, verify_profile, out, err);
    }
    if (*identity) {
      resolve_seed(identity_common);
      return run_identity_check(identity_common, identity_profile, out, err);
    }
    if (*scan) {
      resolve_seed(scan_common);
      return run_scan(scan_common, scan_integrand, scan_n, scan_samples, scan_directions,
                      scan_grid, scan_radius, scan_tol, out, err);
    }
    if (*jensen) {
      resolve_seed(jensen_common);
      return run_jensen(jensen_common, jensen_measure, jensen_family, jensen_tol, out, err);
    }
    if (*prelam) {
      resolve_seed(prelam_common);
      return run_prelaminate(prelam_common, prelam_kind, prelam_a, prelam_z, prelam_w,
                             prelam_k_given, prelam_k, prelam_t, prelam_matrix, prelam_space,
                             out, err);
    }
    if (*fit) {
      resolve_seed(fit_common);
      return run_fit_nl(fit_common, fit_integrand, fit_n, fit_space, fit_region, fit_samples,
                        fit_radius, fit_tol, out, err);
    }
  } catch (const std::exception& e) {
    // Bad parameters, unreadable or invalid input files: usage/input error.
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

RunOutcome run_capture(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunOutcome outcome;
  outcome.exit_code = run(args, out, err);
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

}  // namespace r1c::cli
