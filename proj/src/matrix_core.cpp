#include "r1c/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace r1c {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::full: return "full";
    case SpaceKind::symmetric: return "symmetric";
    case SpaceKind::complex_pair: return "complex_pair";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "full") return SpaceKind::full;
  if (s == "symmetric") return SpaceKind::symmetric;
  if (s == "complex_pair") return SpaceKind::complex_pair;
  throw std::invalid_argument("unknown space tag: \"" + s + "\"");
}

SquareMatrix::SquareMatrix(Eigen::MatrixXd entries, SpaceKind tag)
    : mat_(std::move(entries)), tag_(tag) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
    throw std::invalid_argument("SquareMatrix: entries must be square and non-empty");
  if (tag_ == SpaceKind::complex_pair)
    throw std::invalid_argument("SquareMatrix: complex_pair is not a matrix space tag");
  if (tag_ == SpaceKind::symmetric) {
    for (int i = 0; i < mat_.rows(); ++i)
      for (int j = i + 1; j < mat_.cols(); ++j)
        if (mat_(i, j) != mat_(j, i)) {
          std::ostringstream os;
          os << "SquareMatrix: symmetric tag but entry (" << i + 1 << "," << j + 1
             << ") = " << mat_(i, j) << " differs from (" << j + 1 << "," << i + 1
             << ") = " << mat_(j, i);
          throw std::invalid_argument(os.str());
        }
  }
}

SquareMatrix SquareMatrix::symmetrized(const Eigen::MatrixXd& entries) {
  Eigen::MatrixXd s = 0.5 * (entries + entries.transpose());
  // Force bitwise symmetry; the averaged values can differ in the last ulp.
  for (int i = 0; i < s.rows(); ++i)
    for (int j = i + 1; j < s.cols(); ++j) s(j, i) = s(i, j);
  return SquareMatrix(std::move(s), SpaceKind::symmetric);
}

void MinorSpec::validate(int n) const {
  if (rows.empty() || rows.size() != cols.size())
    throw std::invalid_argument("MinorSpec: rows and cols must be non-empty and of equal size");
  auto check = [n](const std::vector<int>& idx, const char* what) {
    for (size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 1 || idx[i] > n)
        throw std::invalid_argument(std::string("MinorSpec: ") + what + " index out of range 1..n");
      if (i > 0 && idx[i] <= idx[i - 1])
        throw std::invalid_argument(std::string("MinorSpec: ") + what +
                                    " indices must be strictly increasing");
    }
  };
  check(rows, "row");
  check(cols, "col");
}

bool MinorSpec::is_full(int n) const {
  if (order() != n) return false;
  for (int i = 0; i < n; ++i)
    if (rows[i] != i + 1 || cols[i] != i + 1) return false;
  return true;
}

std::string MinorSpec::label() const {
  std::ostringstream os;
  for (size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i];
  os << "|";
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  return os.str();
}

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Index sets of size s from {1..n} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(s);
  for (int i = 0; i < s; ++i) c[i] = i + 1;
  while (true) {
    out.push_back(c);
    int i = s - 1;
    while (i >= 0 && c[i] == n - (s - 1 - i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

}  // namespace

long MinorVector::length(int n) {
  long total = 0;
  for (int s = 1; s <= n; ++s) total += binomial(n, s) * binomial(n, s);
  return total;
}

std::vector<MinorSpec> minor_specs_of_order(int n, int s) {
  std::vector<MinorSpec> out;
  const auto sets = combinations(n, s);
  for (const auto& r : sets)
    for (const auto& c : sets) out.push_back(MinorSpec{r, c});
  return out;
}

const std::vector<MinorSpec>& minor_basis(int n) {
  static std::map<int, std::vector<MinorSpec>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<MinorSpec> basis;
    for (int s = 1; s <= n; ++s) {
      auto specs = minor_specs_of_order(n, s);
      basis.insert(basis.end(), specs.begin(), specs.end());
    }
    it = cache.emplace(n, std::move(basis)).first;
  }
  return it->second;
}

double determinant(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  switch (A.rows()) {
    case 1:
      return A(0, 0);
    case 2:
      return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    case 3:
      return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
             A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
             A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    default:
      return Eigen::MatrixXd(A).determinant();
  }
}

double minor(const Eigen::Ref<const Eigen::MatrixXd>& A, const MinorSpec& spec) {
  const int n = static_cast<int>(A.rows());
  spec.validate(n);
  const int s = spec.order();
  if (s == 1) return A(spec.rows[0] - 1, spec.cols[0] - 1);
  Eigen::MatrixXd sub(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) sub(i, j) = A(spec.rows[i] - 1, spec.cols[j] - 1);
  return determinant(sub);
}

MinorVector all_minors(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  const int n = static_cast<int>(A.rows());
  const auto& basis = minor_basis(n);
  MinorVector mv;
  mv.n = n;
  mv.values.resize(static_cast<long>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) mv.values[static_cast<long>(i)] = minor(A, basis[i]);
  return mv;
}

Eigen::MatrixXd SignedSvd::reconstruct() const {
  return left * sigma.asDiagonal() * right;
}

SignedSvd signed_svd(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || n < 1) throw std::invalid_argument("signed_svd: square matrix required");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SignedSvd out;
  out.left = svd.matrixU();
  out.right = svd.matrixV().transpose();
  out.sigma = svd.singularValues();
  // Push any reflection into the last singular value; afterwards
  // sign(sigma_n) = sign(det A) and both factors are rotations.
  if (out.left.determinant() < 0) {
    out.left.col(n - 1) = -out.left.col(n - 1);
    out.sigma[n - 1] = -out.sigma[n - 1];
  }
  if (out.right.determinant() < 0) {
    out.right.row(n - 1) = -out.right.row(n - 1);
    out.sigma[n - 1] = -out.sigma[n - 1];
  }
  return out;
}

ConformalSplit conformal_split(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  if (A.rows() != 2 || A.cols() != 2)
    throw std::invalid_argument("conformal_split: 2x2 matrix required");
  const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
  ConformalSplit s;
  const double p = 0.5 * (a + d), q = 0.5 * (c - b);
  const double r = 0.5 * (a - d), t = 0.5 * (b + c);
  s.plus << p, -q, q, p;
  s.minus << r, t, t, -r;
  return s;
}

ComplexPair to_complex_pair(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  if (A.rows() != 2 || A.cols() != 2)
    throw std::invalid_argument("to_complex_pair: 2x2 matrix required");
  const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
  return ComplexPair{{a + d, c - b}, {a - d, b + c}};
}

Eigen::Matrix2d from_complex_pair(const ComplexPair& p) {
  const double zr = p.z.real(), zi = p.z.imag();
  const double wr = p.w.real(), wi = p.w.imag();
  Eigen::Matrix2d m;
  m << 0.5 * (zr + wr), 0.5 * (wi - zi), 0.5 * (zi + wi), 0.5 * (zr - wr);
  return m;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 1) return A.col(0);
  if (n == 2) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es;
    es.computeDirect(A, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  if (n == 3) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
    es.computeDirect(A, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::optional<int> index_of(const Eigen::Ref<const Eigen::MatrixXd>& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("index_of: square matrix required");
  const double scale = 1.0 + A.norm();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(A(i, j) - A(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("index_of: symmetric matrix required");
  const Eigen::VectorXd eig = symmetric_eigenvalues(0.5 * (A + A.transpose()));
  const double eps = 1e-10 * scale;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(eig[i]) <= eps) return std::nullopt;
    if (eig[i] < -eps) ++count;
  }
  return count;
}

std::optional<int> index_of(const SquareMatrix& A) {
  if (A.tag() != SpaceKind::symmetric)
    throw std::invalid_argument("index_of: matrix must be tagged symmetric");
  return index_of(A.mat());
}

}  // namespace r1c
