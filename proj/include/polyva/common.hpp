#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace polyva {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Uniform doubles in [0,1) from the top 53 bits of a mt19937_64 draw, so
// streams are bit-identical across standard libraries (std::uniform_real_
// distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::mt19937_64 engine_;
};

// Stable derivation of per-task seeds (sweep points, resample rounds, row
// selection) from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(const std::string& what, Index column)
      : std::runtime_error(what), column_(column) {}
  Index column() const { return column_; }

 private:
  Index column_;
};

}  // namespace polyva
