#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace symred {

/// Counter-based generator: the n-th draw is a pure function of (key, n).
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  /// Independent stream derived from a base seed and a label.
  static Rng stream(std::uint64_t seed, std::string_view label);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  Eigen::VectorXd normal_vector(int n);
  Eigen::VectorXd uniform_vector(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

  /// Child stream keyed by label; does not depend on or advance the counter.
  Rng split(std::string_view label);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t hash_label(std::string_view label);
std::uint64_t mix64(std::uint64_t x);

}  // namespace symred
