#pragma once

#include <stdexcept>
#include <string>

namespace lagstab {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 2 (validation) except where noted.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("singular matrix: determinant is zero") {}
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NonGenericXi : public Error {
 public:
  NonGenericXi() : Error("non-generic xi: some xi_i - xi_j is an integer") {}
};

class NonZeroIndex : public Error {
 public:
  explicit NonZeroIndex(long index)
      : Error("lattice has index " + std::to_string(index) + ", expected 0") {}
};

class NotInShell : public Error {
 public:
  NotInShell() : Error("lattice is not in the shell X_n") {}
};

class FormDimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class XiOutOfWindow : public Error {
 public:
  XiOutOfWindow() : Error("xi outside the torus window: some x_i <= 0") {}
};

class NotAdjacent : public Error {
 public:
  NotAdjacent() : Error("permutations are not adjacent") {}
};

class NotNested : public Error {
 public:
  NotNested() : Error("parabolic flags are not nested") {}
};

class NotUnipotentForP : public Error {
 public:
  NotUnipotentForP() : Error("matrix is not in the unipotent radical of P") {}
};

/// Raised when a lattice matches zero or several strata. Signals a bug or a
/// non-generic xi that slipped past validation.
class PartitionViolation : public Error {
 public:
  using Error::Error;
};

class OrderExceeded : public Error {
 public:
  using Error::Error;
};

class InsufficientPrimes : public Error {
 public:
  using Error::Error;
};

/// The free action of T/Z_G forces (p-1)^{d-1} to divide the stable count.
class NonIntegralQuotient : public Error {
 public:
  using Error::Error;
};

}  // namespace lagstab
