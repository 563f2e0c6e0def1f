#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace r1c {

enum class SpaceKind { full, symmetric, complex_pair };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& s);

/// Dense square matrix carrying its space tag. Symmetric-tagged matrices are
/// validated entrywise (exact equality) at construction; use symmetrized()
/// for data that is symmetric only up to rounding.
class SquareMatrix {
 public:
  explicit SquareMatrix(Eigen::MatrixXd entries, SpaceKind tag = SpaceKind::full);
  static SquareMatrix symmetrized(const Eigen::MatrixXd& entries);

  int n() const { return static_cast<int>(mat_.rows()); }
  SpaceKind tag() const { return tag_; }
  const Eigen::MatrixXd& mat() const { return mat_; }

 private:
  Eigen::MatrixXd mat_;
  SpaceKind tag_;
};

/// Row/column index sets (1-based, strictly increasing) selecting a square
/// submatrix.
struct MinorSpec {
  std::vector<int> rows;
  std::vector<int> cols;

  int order() const { return static_cast<int>(rows.size()); }
  void validate(int n) const;  // throws std::invalid_argument
  bool is_full(int n) const;
  std::string label() const;  // "1,2|1,3"
};

/// Values of all minors in canonical order: ascending order s, then
/// lexicographic on (rows, cols). Length is sum_j C(n,j)^2 = C(2n,n) - 1;
/// an affine constant term is never stored here.
struct MinorVector {
  int n = 0;
  Eigen::VectorXd values;

  static long length(int n);
};

/// Canonical enumeration backing MinorVector, cached per dimension.
const std::vector<MinorSpec>& minor_basis(int n);
std::vector<MinorSpec> minor_specs_of_order(int n, int s);

/// Determinant of the submatrix selected by spec; no cofactor sign.
double minor(const Eigen::Ref<const Eigen::MatrixXd>& A, const MinorSpec& spec);
MinorVector all_minors(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// Determinant with closed forms for n <= 3. Every integrand in the library
/// funnels through this helper so pointwise identities cancel exactly.
double determinant(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// A = left * sigma.asDiagonal() * right with left, right in SO(n),
/// sigma_1 >= ... >= sigma_{n-1} >= |sigma_n| and sign(sigma_n) = sign(det A).
struct SignedSvd {
  Eigen::MatrixXd left;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd right;

  Eigen::MatrixXd reconstruct() const;
};

SignedSvd signed_svd(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// Conformal-anticonformal parts of a 2x2 matrix: A = plus + minus with
/// plus = [[p,-q],[q,p]], minus = [[r,s],[s,-r]] and
/// 2 det A = |plus|^2 - |minus|^2 in Frobenius norms.
struct ConformalSplit {
  Eigen::Matrix2d plus;
  Eigen::Matrix2d minus;
};

ConformalSplit conformal_split(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// A 2x2 matrix [[a,b],[c,d]] seen as the point of C^2 with
/// z = (a+d) + i(c-b), w = (a-d) + i(b+c); |z|^2 = 2|A+|^2, |w|^2 = 2|A-|^2.
struct ComplexPair {
  std::complex<double> z;
  std::complex<double> w;
};

ComplexPair to_complex_pair(const Eigen::Ref<const Eigen::MatrixXd>& A);
Eigen::Matrix2d from_complex_pair(const ComplexPair& p);

/// Eigenvalues of a symmetric matrix, ascending. Closed-form solvers for
/// n <= 3, iterative beyond.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& A);

/// Number of eigenvalues below -eps where eps = 1e-10 * (1 + |A|_F).
/// Returns nullopt (the "singular" signal) when some eigenvalue lies in
/// [-eps, eps]. Throws std::invalid_argument on non-symmetric input.
std::optional<int> index_of(const Eigen::Ref<const Eigen::MatrixXd>& A);
std::optional<int> index_of(const SquareMatrix& A);

}  // namespace r1c
