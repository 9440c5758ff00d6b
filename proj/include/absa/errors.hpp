#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace absa {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unusable configuration, detected before any data is touched. CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad input data. CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class MalformedLineError : public DataError {
 public:
  MalformedLineError(const std::string& path, std::size_t line_no, const std::string& why)
      : DataError(path + ":" + std::to_string(line_no) + ": " + why), line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class DuplicateIdError : public DataError {
 public:
  explicit DuplicateIdError(const std::string& id)
      : DataError("duplicate sample id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class UnknownSentimentError : public DataError {
 public:
  explicit UnknownSentimentError(const std::string& value)
      : DataError("unknown sentiment label '" + value + "'"), value_(value) {}
  const std::string& value() const { return value_; }

 private:
  std::string value_;
};

class UnknownDomainError : public DataError {
 public:
  explicit UnknownDomainError(const std::string& domain)
      : DataError("no taxonomy for domain '" + domain + "'"), domain_(domain) {}
  const std::string& domain() const { return domain_; }

 private:
  std::string domain_;
};

class MissingPlaceholderError : public ConfigError {
 public:
  explicit MissingPlaceholderError(const std::string& name)
      : ConfigError("template is missing the {" + name + "} placeholder"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class MissingTemplateError : public ConfigError {
 public:
  explicit MissingTemplateError(const std::string& language)
      : ConfigError("no prompt template for language '" + language + "'"),
        language_(language) {}
  const std::string& language() const { return language_; }

 private:
  std::string language_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& cause)
      : Error(path + ": " + cause), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class EmptyPredictionError : public Error {
 public:
  EmptyPredictionError() : Error("cannot align an empty prediction") {}
};

}  // namespace absa
