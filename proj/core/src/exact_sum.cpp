#include "sodbench/exact_sum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace sodbench {
namespace {

constexpr int kMinExponent = -1074;
__extension__ typedef unsigned __int128 u128;

}  // namespace

void ExactSum::add(double x) {
  if (!(x >= 0.0) || std::isinf(x)) {
    throw std::invalid_argument("ExactSum accepts only finite non-negative values");
  }
  ++count_;
  if (x == 0.0) return;

  int exp = 0;
  std::frexp(x, &exp);
  const int e = std::max(exp - 53, kMinExponent);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(x, -e));
  const int offset = e - kMinExponent;

  auto limb = static_cast<std::size_t>(offset / 64);
  const int shift = offset % 64;
  const u128 wide = static_cast<u128>(mantissa) << shift;
  u128 carry = static_cast<u128>(limbs_[limb]) + static_cast<std::uint64_t>(wide);
  limbs_[limb] = static_cast<std::uint64_t>(carry);
  carry = (carry >> 64) + static_cast<std::uint64_t>(wide >> 64);
  while (carry != 0) {
    ++limb;
    if (limb >= limbs_.size()) throw std::overflow_error("ExactSum overflow");
    carry += limbs_[limb];
    limbs_[limb] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
}

void ExactSum::merge(const ExactSum& other) {
  u128 carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    carry += static_cast<u128>(limbs_[i]) + other.limbs_[i];
    limbs_[i] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
  if (carry != 0) throw std::overflow_error("ExactSum overflow");
  count_ += other.count_;
}

double ExactSum::quotient(std::uint64_t divisor) const {
  if (divisor == 0) throw std::invalid_argument("ExactSum::quotient by zero");

  // Long division with one extra limb of fraction bits below 2^-1074.
  constexpr int kWide = kLimbs + 1;
  std::array<std::uint64_t, kWide> q{};
  u128 rem = 0;
  for (int i = kWide - 1; i >= 0; --i) {
    const std::uint64_t limb = i == 0 ? 0 : limbs_[static_cast<std::size_t>(i - 1)];
    const u128 cur = (rem << 64) | limb;
    q[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(cur / divisor);
    rem = cur % divisor;
  }

  int top = kWide - 1;
  while (top >= 0 && q[static_cast<std::size_t>(top)] == 0) --top;
  if (top < 0) return 0.0;

  // Gather the 64 most significant bits of q plus a sticky flag for the rest.
  const auto hi = q[static_cast<std::size_t>(top)];
  const int lead = 63 - std::countl_zero(hi);  // bit index of the MSB within limb `top`
  const int msb = top * 64 + lead;
  std::uint64_t bits = 0;
  bool sticky = rem != 0;
  const int low = msb - 63;  // bit index of the least significant gathered bit
  for (int b = 0; b < 64; ++b) {
    const int pos = low + b;
    if (pos < 0) continue;
    const auto word = q[static_cast<std::size_t>(pos / 64)];
    if ((word >> (pos % 64)) & 1U) bits |= std::uint64_t{1} << b;
  }
  for (int pos = 0; pos < low && !sticky; ++pos) {
    if ((q[static_cast<std::size_t>(pos / 64)] >> (pos % 64)) & 1U) sticky = true;
  }

  std::uint64_t mantissa = bits >> 11;
  const std::uint64_t round_bits = bits & 0x7FF;
  constexpr std::uint64_t kHalf = 0x400;
  if (round_bits > kHalf || (round_bits == kHalf && (sticky || (mantissa & 1U)))) ++mantissa;

  // q carries 64 fraction bits below the 2^-1074 unit.
  const int exponent = low + 11 + kMinExponent - 64;
  return std::ldexp(static_cast<double>(mantissa), exponent);
}

}  // namespace sodbench
