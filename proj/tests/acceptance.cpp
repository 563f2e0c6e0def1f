// Acceptance suite: runs every criterion at its stated sample counts and
// tolerances and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include "r1c/cli.hpp"
#include "r1c/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void criterion(int number, const std::string& description, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_seconds > 0.0 && seconds >= budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over runtime budget");
  }
  if (!ok) ++g_failures;
  std::printf("[%s] criterion %2d: %s (%.2f s%s%s%s)\n", ok ? "PASS" : "FAIL", number,
              description.c_str(), seconds,
              budget_seconds > 0 ? ", budget " : "",
              budget_seconds > 0 ? (std::to_string(static_cast<int>(budget_seconds)) + " s").c_str()
                                 : "",
              detail.empty() ? "" : ("; " + detail).c_str());
  std::fflush(stdout);
}

bool from_suite(const r1c::suites::SuiteResult& r, std::string& detail) {
  if (!r.passed) detail = r.detail;
  return r.passed;
}

}  // namespace

int main() {
  r1c::suites::SuiteOptions opts;
  opts.seed = 42;
  opts.quick = false;

  criterion(1, "h_1(t,k) = t^-2 on a 50x50 grid over [1,10]x[0,1] to 1e-12", 1.0,
            [&](std::string& d) { return from_suite(r1c::suites::h_grid(opts), d); });

  criterion(2,
            "lemma cone split: 1e4 random (a,t,k) with lambda1 lambda2 = h_a(t,k) to 1e-10, "
            "lambdas in [0,1], rank-one splits, B1,B2 on C_a; hand case (2,2,0) -> 4/7, 5/8",
            5.0, [&](std::string& d) { return from_suite(r1c::suites::lemma_hom(opts), d); });

  criterion(3,
            "diagonal splits: 1e3 random (A,t), n in {2,3}, verify + t^n E(A) <= E(tA) + 1e-9 "
            "with equality for n-homogeneous members and a strict (det+)^2 gap",
            10.0, [&](std::string& d) { return from_suite(r1c::suites::diag_split(opts), d); });

  criterion(4,
            "integral identity: lhs = rhs = 16/3 at (1,0,1.5) to 1e-12, quadrature to 1e-6, "
            "100 random (z,w,p) to 1e-8 relative",
            5.0, [&](std::string& d) { return from_suite(r1c::suites::lb_identity(opts), d); });

  criterion(5,
            "decomposition identities on 1e4 random matrices: |det| = det+ + det- and "
            "det+/- = even/odd F_k sums to 1e-12",
            5.0, [&](std::string& d) {
              return from_suite(r1c::suites::decomposition_identities(opts), d);
            });

  criterion(6,
            "rank-one scans (1e3 x 1e2): B_p, B_p+, L, det+-, F_k, all truncated 1x1/2x2 "
            "minors of 3x3 pass; -det+ and -|A|^2 yield reproducible violations",
            60.0, [&](std::string& d) { return from_suite(r1c::suites::rank_one_scans(opts), d); });

  criterion(7,
            "homogeneity bound: dF_a/dt|_1 = p - 1 - 1/a vs finite differences to 1e-6; "
            "boundary a = 1/(p-1) gives 0 to 1e-10",
            1.0, [&](std::string& d) {
              return from_suite(r1c::suites::homogeneity_bound(opts), d);
            });

  criterion(8,
            "null-Lagrangian fits: det (2x2, 3x3) and det+ on {det>0} recover e_det with "
            "residual < 1e-10; |A|^2 rejected above 1e-2",
            5.0, [&](std::string& d) { return from_suite(r1c::suites::null_lagrangian(opts), d); });

  criterion(9,
            "minor dependence: full (4,2) rank 36; symmetric (4,2) rank < 36 with the "
            "three-term relation residual < 1e-12 on 100 samples",
            5.0, [&](std::string& d) {
              return from_suite(r1c::suites::minor_dependence(opts), d);
            });

  criterion(10,
            "Jensen suite: prelaminate measures consistent; I/-I flagged via det equality "
            "with gap magnitude 1 to 1e-12; rank-one pairs give det gap 0 to 1e-12",
            5.0, [&](std::string& d) { return from_suite(r1c::suites::jensen(opts), d); });

  criterion(11,
            "1D Choquet: x^2 on 1001 points reconstructs to 1e-5; phi_0.5 kink within one "
            "cell; affine inputs exact to 1e-12",
            1.0, [&](std::string& d) { return from_suite(r1c::suites::choquet_1d(opts), d); });

  criterion(12, "determinism: verify-all --seed 42 twice is byte-identical with exit code 0",
            0.0, [&](std::string& d) {
              const std::vector<std::string> cmd{"verify-all", "--seed", "42"};
              const auto a = r1c::cli::run_capture(cmd);
              const auto b = r1c::cli::run_capture(cmd);
              if (a.exit_code != 0) {
                d = "exit code " + std::to_string(a.exit_code);
                return false;
              }
              if (a.out != b.out) {
                d = "reports differ";
                return false;
              }
              return true;
            });

  std::printf("%s: %d of 12 criteria failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
  return g_failures;
}
