#pragma once

#include <stdexcept>
#include <string>

namespace permclust {

// Malformed text input (permutations, pattern specs, cache keys).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the range where an event or formula is defined.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed form was requested for a pattern class it does not cover.
class ApplicabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Probability over an empty avoider class.
class UndefinedProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permclust
