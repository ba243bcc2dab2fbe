#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bideval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// One violated invariant, located by bidder and/or item where applicable.
struct Issue
{
  std::string code;
  std::string bidder;
  std::string item;
  std::string message;

  bool operator==(Issue const &) const = default;
};

std::string to_string(Issue const &issue);

/// A tender (or configuration) failed validation. Carries every issue found,
/// not just the first.
class ValidationError : public Error
{
public:
  explicit ValidationError(std::vector<Issue> issues);

  std::vector<Issue> const &issues() const noexcept { return issues_; }

private:
  std::vector<Issue> issues_;
};

/// Input text could not be parsed (precedence expressions, money literals,
/// tender files). `where` is a line:column or JSON-pointer coordinate.
class ParseError : public Error
{
public:
  ParseError(std::string where, std::string const &what);

  std::string const &where() const noexcept { return where_; }

private:
  std::string where_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

/// A numeric routine was asked for something it cannot deliver
/// (degenerate interval, singular system, non-positive standard price).
class NumericError : public Error
{
public:
  using Error::Error;
};

}  // namespace bideval
