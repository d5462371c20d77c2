#include "lagstab/field.hpp"

#include <string>

#include "lagstab/errors.hpp"

namespace lagstab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw InvalidArgument("characteristic " + std::to_string(p) + " is not a supported prime");
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw InvalidArgument("inverse of zero in F_p");
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0);
}

}  // namespace lagstab
