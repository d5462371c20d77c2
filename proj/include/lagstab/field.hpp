#pragma once

#include <cstdint>

namespace lagstab {

/// The prime field F_p. Elements are stored reduced in [0, p-1].
class PrimeField {
 public:
  /// Throws InvalidArgument unless p is a prime below 2^31.
  explicit PrimeField(std::uint32_t p = 2);

  std::uint32_t characteristic() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t reduce(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace lagstab
