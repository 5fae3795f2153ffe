#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qha {

/// Base of all domain failures reported by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFiniteDimensional : public Error {
 public:
  NotFiniteDimensional(int cap, std::vector<std::string> surviving);
  [[nodiscard]] int cap() const { return cap_; }
  [[nodiscard]] const std::vector<std::string>& surviving_paths() const { return surviving_; }

 private:
  int cap_;
  std::vector<std::string> surviving_;
};

class Degree0NotSemisimple : public Error {
 public:
  using Error::Error;
};

class InvalidCombination : public Error {
 public:
  using Error::Error;
};

class IdempotentLiftDiverged : public Error {
 public:
  using Error::Error;
};

class NotQuasiHereditary : public Error {
 public:
  using Error::Error;
};

/// A resolution did not terminate within the requested length.
class CapExceeded : public Error {
 public:
  CapExceeded(int cap, std::string last_syzygy);
  [[nodiscard]] int cap() const { return cap_; }

 private:
  int cap_;
};

class ApproximationFailed : public Error {
 public:
  using Error::Error;
};

class UnrecognizedSummand : public Error {
 public:
  using Error::Error;
};

class ComponentsNotSelfOrthogonal : public Error {
 public:
  using Error::Error;
};

}  // namespace qha
