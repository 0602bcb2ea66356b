#pragma once

#include <stdexcept>
#include <string>

namespace fidelity {

/// Base of every error raised by the evaluator. The CLI maps each subclass to
/// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or missing configuration. `key()` names the offending YAML key when
/// there is one.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::string key, const std::string& what = {})
      : Error(what.empty() ? "invalid configuration key: " + key : what),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace fidelity
