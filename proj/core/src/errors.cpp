#include "bideval/errors.hpp"

namespace bideval {

std::string to_string(Issue const &issue)
{
  std::string out = issue.code;
  if (!issue.bidder.empty())
  {
    out += " bidder=" + issue.bidder;
  }
  if (!issue.item.empty())
  {
    out += " item=" + issue.item;
  }
  if (!issue.message.empty())
  {
    out += ": " + issue.message;
  }
  return out;
}

namespace {

std::string join_issues(std::vector<Issue> const &issues)
{
  std::string out = "validation failed";
  for (auto const &issue : issues)
  {
    out += "\n  " + to_string(issue);
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
  : Error(join_issues(issues))
  , issues_(std::move(issues))
{}

ParseError::ParseError(std::string where, std::string const &what)
  : Error(where.empty() ? what : where + ": " + what)
  , where_(std::move(where))
{}

}  // namespace bideval
