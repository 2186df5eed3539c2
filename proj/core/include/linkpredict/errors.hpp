// SPDX-License-Identifier: Apache-2.0
// Error hierarchy for the linkpredict library.
//
// Two branches: InputError for malformed or unusable user data (CLI exit
// code 2) and NumericError for failures of the numerical machinery itself
// (CLI exit code 3).

#pragma once

#include <stdexcept>
#include <string>

namespace linkpredict {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public Error {
public:
  using Error::Error;
};

class NumericError : public Error {
public:
  using Error::Error;
};

// -- Input errors -----------------------------------------------------------

class MalformedRow : public InputError {
public:
  MalformedRow(std::size_t row, const std::string& why)
      : InputError("row " + std::to_string(row) + ": " + why), row_(row) {}
  std::size_t row() const { return row_; }

private:
  std::size_t row_;
};

class NonMonotonicTimestamp : public InputError {
public:
  explicit NonMonotonicTimestamp(std::size_t row)
      : InputError("row " + std::to_string(row) +
                   ": timestamp not strictly increasing") {}
};

class NonMonotonicSequence : public InputError {
public:
  explicit NonMonotonicSequence(std::size_t row)
      : InputError("row " + std::to_string(row) +
                   ": sequence number decreased") {}
};

class EmptyInput : public InputError {
public:
  explicit EmptyInput(const std::string& what)
      : InputError("empty input: " + what) {}
};

class InvalidWindow : public InputError {
public:
  explicit InvalidWindow(const std::string& why)
      : InputError("invalid window: " + why) {}
};

class NoOverlap : public InputError {
public:
  NoOverlap() : InputError("alignment produced zero pairs") {}
};

class DegenerateChannel : public InputError {
public:
  explicit DegenerateChannel(const std::string& channel)
      : InputError("channel '" + channel + "' is constant (max == min)") {}
};

class UnknownChannel : public InputError {
public:
  explicit UnknownChannel(const std::string& name)
      : InputError("unknown channel '" + name + "'") {}
};

class SeriesTooShort : public InputError {
public:
  explicit SeriesTooShort(const std::string& why)
      : InputError("series too short: " + why) {}
};

class EmptyLevels : public InputError {
public:
  EmptyLevels() : InputError("quantile levels list is empty") {}
};

class TooFewPoints : public InputError {
public:
  explicit TooFewPoints(const std::string& why)
      : InputError("too few points: " + why) {}
};

class NonPositiveDistance : public InputError {
public:
  explicit NonPositiveDistance(double d)
      : InputError("distance must be > 0, got " + std::to_string(d)) {}
};

class ThresholdBelowSensitivity : public InputError {
public:
  ThresholdBelowSensitivity(double threshold, double sensitivity)
      : InputError("threshold " + std::to_string(threshold) +
                   " dBm below radio sensitivity " +
                   std::to_string(sensitivity) + " dBm") {}
};

class InvalidConfig : public InputError {
public:
  explicit InvalidConfig(const std::string& why)
      : InputError("invalid config: " + why) {}
};

class IoError : public InputError {
public:
  explicit IoError(const std::string& why) : InputError(why) {}
};

// -- Numeric errors ---------------------------------------------------------

class SingularSystem : public NumericError {
public:
  explicit SingularSystem(const std::string& why)
      : NumericError("singular system: " + why) {}
};

class NonPositiveVariance : public NumericError {
public:
  explicit NonPositiveVariance(double v)
      : NumericError("variance must be > 0, got " + std::to_string(v)) {}
};

}  // namespace linkpredict
