#pragma once

#include <stdexcept>
#include <string>

namespace proxevi {

// Bad inputs supplied by a caller (dimension mismatch, unknown name, ...).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Operation requested on an object in the wrong state (missing obstacle,
// scalar-output net asked for a multiplier, empty tape, ...).
class StateError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Training failure surfaced with the epoch it happened at.
class TrainingError : public std::runtime_error {
  public:
    TrainingError(const std::string& what, long epoch)
        : std::runtime_error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

    long epoch() const { return epoch_; }

  private:
    long epoch_;
};

}  // namespace proxevi
