#pragma once

#include <array>
#include <cstdint>

namespace sodbench {

/// Exact sum of non-negative finite doubles.
///
/// Every addend is placed into a fixed-point big integer whose unit is the
/// smallest subnormal, so the sum carries no rounding error and does not
/// depend on the order of additions. mean() rounds the exact quotient once.
class ExactSum {
 public:
  /// Throws std::invalid_argument for negative, NaN or infinite input.
  void add(double x);
  void merge(const ExactSum& other);

  std::uint64_t count() const { return count_; }

  /// Correctly rounded sum / divisor. Throws std::invalid_argument if divisor is 0.
  double quotient(std::uint64_t divisor) const;
  double mean() const { return quotient(count_); }
  double sum() const { return quotient(1); }

  friend bool operator==(const ExactSum&, const ExactSum&) = default;

 private:
  // 2^-1074 .. beyond 2^1024 plus headroom for 2^64 addends.
  static constexpr int kLimbs = 36;
  std::array<std::uint64_t, kLimbs> limbs_{};
  std::uint64_t count_ = 0;
};

}  // namespace sodbench
