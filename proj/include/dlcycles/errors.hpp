#pragma once

#include <stdexcept>
#include <string>

namespace dlc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain (p < 5, range too large to tabulate, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPrime : public DomainError {
 public:
  explicit NotPrime(unsigned long long n)
      : DomainError(std::to_string(n) + " is not prime") {}
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// The unit-solution count requires gcd(a,q) == gcd(b,q).
class GcdMismatch : public Error {
 public:
  using Error::Error;
};

/// recover_g called on a pair that does not satisfy h^(h/d) == a^(a/d).
class NotACollision : public Error {
 public:
  using Error::Error;
};

class NotSquarefree : public Error {
 public:
  using Error::Error;
};

class UnknownConstant : public Error {
 public:
  using Error::Error;
};

class UnknownTable : public Error {
 public:
  using Error::Error;
};

/// A value bucket exceeded the configured pairwise-enumeration cap.
class BucketOverflow : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

class CacheVersionMismatch : public CacheError {
 public:
  using CacheError::CacheError;
};

}  // namespace dlc
