#pragma once

#include <stdexcept>
#include <string>

namespace kpell {

// Argument outside the mathematical domain of an operation (index too small,
// q = 0, n outside an identity's range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A stated precondition of a lemma or formula does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enclosure was too wide to decide a sign or exclude zero. Callers that
// own the precision retry at higher precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root isolation or conjugate bounds could not be certified.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Continued fraction expansion ran out of precision before reaching the
// requested depth.
class InsufficientPrecision : public std::runtime_error {
 public:
  InsufficientPrecision(const std::string& what, int achieved_depth)
      : std::runtime_error(what), achieved_depth_(achieved_depth) {}
  int achieved_depth() const noexcept { return achieved_depth_; }

 private:
  int achieved_depth_;
};

// Internal inconsistency between two computations that must agree.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kpell
