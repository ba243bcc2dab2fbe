#include "bideval/model.hpp"

#include <algorithm>

namespace bideval {

namespace {

constexpr std::string_view kSucc   = "\xE2\x89\xBB";  // U+227B
constexpr std::string_view kApprox = "\xE2\x89\x88";  // U+2248

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string replace_all(std::string text, std::string_view from, std::string_view to)
{
  for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
  {
    text.replace(pos, from.size(), to);
  }
  return text;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
  std::vector<std::string_view> parts;
  std::size_t                   start = 0;
  for (;;)
  {
    auto const pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos)
    {
      return parts;
    }
    start = pos + 1;
  }
}

}  // namespace

std::size_t ItemPrecedence::tier_of(std::string_view item) const
{
  for (std::size_t t = 0; t < tiers.size(); ++t)
  {
    if (std::find(tiers[t].begin(), tiers[t].end(), item) != tiers[t].end())
    {
      return t;
    }
  }
  throw ValidationError({Issue{"unknown-item-in-precedence", "", std::string(item), "item has no precedence tier"}});
}

std::string ItemPrecedence::to_string() const
{
  std::string out;
  for (std::size_t t = 0; t < tiers.size(); ++t)
  {
    if (t)
    {
      out += " > ";
    }
    for (std::size_t i = 0; i < tiers[t].size(); ++i)
    {
      if (i)
      {
        out += " ~ ";
      }
      out += tiers[t][i];
    }
  }
  return out;
}

ItemPrecedence parse_precedence(std::string_view expr, std::vector<std::string> const &items)
{
  std::string const normalised = replace_all(replace_all(std::string(expr), kSucc, ">"), kApprox, "~");
  if (trim(normalised).empty())
  {
    throw ParseError("precedence", "empty expression");
  }

  auto position = [&](std::string_view name) {
    return static_cast<std::size_t>(std::find(items.begin(), items.end(), name) - items.begin());
  };

  ItemPrecedence        result;
  std::set<std::string> seen;
  for (auto tier_text : split(normalised, '>'))
  {
    std::vector<std::string> tier;
    for (auto token : split(tier_text, '~'))
    {
      auto const name = trim(token);
      if (name.empty())
      {
        throw ParseError("precedence", "missing item name in '" + std::string(expr) + "'");
      }
      if (position(name) == items.size())
      {
        throw ParseError("precedence", "unknown item '" + std::string(name) + "'");
      }
      if (!seen.insert(std::string(name)).second)
      {
        throw ParseError("precedence", "item '" + std::string(name) + "' repeated");
      }
      tier.emplace_back(name);
    }
    std::sort(tier.begin(), tier.end(), [&](auto const &a, auto const &b) { return position(a) < position(b); });
    result.tiers.push_back(std::move(tier));
  }
  for (auto const &item : items)
  {
    if (!seen.count(item))
    {
      throw ParseError("precedence", "item '" + item + "' is not ranked");
    }
  }
  return result;
}

}  // namespace bideval
