#pragma once

#include <stdexcept>
#include <string>

namespace dsfa {

enum class ErrorKind {
  InvalidParameter,
  InsufficientData,
  NumericalDomain,
  RankDeficiency,
  DegenerateSignal,
  Io,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind lets
/// callers (the CLI, sweep drivers) map failures to exit codes or error rows
/// without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error(ErrorKind::InvalidParameter, what) {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& what) : Error(ErrorKind::InsufficientData, what) {}
};

class NumericalDomain : public Error {
 public:
  explicit NumericalDomain(const std::string& what) : Error(ErrorKind::NumericalDomain, what) {}
};

class RankDeficiency : public Error {
 public:
  RankDeficiency(const std::string& what, long retained_rank)
      : Error(ErrorKind::RankDeficiency, what), retained_rank_(retained_rank) {}
  long retained_rank() const noexcept { return retained_rank_; }

 private:
  long retained_rank_;
};

class DegenerateSignal : public Error {
 public:
  explicit DegenerateSignal(const std::string& what) : Error(ErrorKind::DegenerateSignal, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(ErrorKind::Parse, what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace dsfa
