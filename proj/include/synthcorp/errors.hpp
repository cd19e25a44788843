#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace synthcorp {

// Root of every error the library throws on bad input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate concept id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class ReferentialError : public Error {
 public:
  explicit ReferentialError(std::vector<std::string> offenders);
  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ExhaustionError : public Error {
 public:
  using Error::Error;
};

class UnresolvedDependencyError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  explicit AlignmentError(std::vector<std::string> unmatched);
  const std::vector<std::string>& unmatched() const { return unmatched_; }

 private:
  std::vector<std::string> unmatched_;
};

class StageDependencyError : public Error {
 public:
  explicit StageDependencyError(const std::string& missing_file)
      : Error("missing upstream artifact: " + missing_file), file_(missing_file) {}
  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

// Raised by backends when a request could not be delivered; the runner retries these.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace synthcorp
