#pragma once

#include <stdexcept>
#include <string>

namespace ordlab {

// Violated precondition or argument outside the mathematical domain.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine could not reach its accuracy or stability target
// (failed embedding, factorization breakdown, refinement cap hit).
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ordlab
