#pragma once

#include <stdexcept>
#include <string>

namespace tcrcalc {

// Malformed input: ring specs, group specs, fixture files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation declined because a hypothesis fails or a resource bound is hit.
class Refusal : public std::runtime_error {
 public:
  Refusal(std::string hypothesis, const std::string& detail)
      : std::runtime_error(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

// Ill-typed algebra: incompatible shapes, d∘d != 0, a map that is not a homomorphism.
class AlgebraError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("cancelled") {}
};

}  // namespace tcrcalc
