#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace r1c {

/// Deterministic 64-bit random stream (splitmix64). All sampling in the
/// library goes through this type so that seeded runs are reproducible
/// regardless of platform or standard-library version.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53 bits of mantissa.
  double uniform01();
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (two uniforms per value).
  double gaussian();

 private:
  std::uint64_t state_;
};

/// Derives an independent sub-stream seed. Parallel scan workers seed their
/// streams with derive_seed(master, pair_index) so serial and parallel runs
/// produce identical output.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

Eigen::VectorXd sample_unit_vector(RandomStream& rs, int dim);

/// Entries i.i.d. uniform in (-radius, radius).
Eigen::MatrixXd sample_box_matrix(RandomStream& rs, int n, double radius);
Eigen::MatrixXd sample_box_symmetric(RandomStream& rs, int n, double radius);

/// Roughly Haar-distributed rotation in SO(n).
Eigen::MatrixXd sample_rotation(RandomStream& rs, int n);

}  // namespace r1c
