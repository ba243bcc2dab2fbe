#include "bideval/model.hpp"

#include <algorithm>
#include <cmath>

namespace bideval {

ResponseKind kind_of(ResponseValue const &value) noexcept
{
  return static_cast<ResponseKind>(value.index());
}

std::string_view to_string(ResponseKind kind) noexcept
{
  switch (kind)
  {
  case ResponseKind::Price:
    return "price";
  case ResponseKind::Quantity:
    return "quantity";
  case ResponseKind::Rank:
    return "rank";
  case ResponseKind::Committee:
    return "committee";
  case ResponseKind::Qualification:
    return "qualification";
  }
  return "?";
}

std::optional<ResponseKind> parse_response_kind(std::string_view text) noexcept
{
  for (auto kind : {ResponseKind::Price, ResponseKind::Quantity, ResponseKind::Rank, ResponseKind::Committee,
                    ResponseKind::Qualification})
  {
    if (to_string(kind) == text)
    {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<long double> numeric_value(ResponseValue const &value) noexcept
{
  if (auto const *price = std::get_if<Price>(&value))
  {
    return price->amount.to_long_double();
  }
  if (auto const *quantity = std::get_if<Quantity>(&value))
  {
    return static_cast<long double>(quantity->amount);
  }
  return std::nullopt;
}

std::string_view to_string(Direction direction) noexcept
{
  switch (direction)
  {
  case Direction::LowerBetter:
    return "lower-better";
  case Direction::HigherBetter:
    return "higher-better";
  case Direction::OrdinalScale:
    return "ordinal-scale";
  case Direction::Committee:
    return "committee";
  }
  return "?";
}

std::optional<Direction> parse_direction(std::string_view text) noexcept
{
  for (auto d : {Direction::LowerBetter, Direction::HigherBetter, Direction::OrdinalScale, Direction::Committee})
  {
    if (to_string(d) == text)
    {
      return d;
    }
  }
  return std::nullopt;
}

ResponseValue const &Bid::response(std::string const &item) const
{
  auto it = responses.find(item);
  if (it == responses.end())
  {
    throw ValidationError({Issue{"missing-response", bidder, item, "bid has no response for this item"}});
  }
  return it->second;
}

EvaluationItem const *Tender::find_item(std::string_view name) const noexcept
{
  auto it = std::find_if(items.begin(), items.end(), [&](auto const &i) { return i.name == name; });
  return it == items.end() ? nullptr : &*it;
}

EvaluationItem const &Tender::item(std::string_view name) const
{
  if (auto const *found = find_item(name))
  {
    return *found;
  }
  throw ValidationError({Issue{"unknown-item", "", std::string(name), "no such evaluation item"}});
}

Bid const *Tender::find_bid(std::string_view bidder) const noexcept
{
  auto it = std::find_if(bids.begin(), bids.end(), [&](auto const &b) { return b.bidder == bidder; });
  return it == bids.end() ? nullptr : &*it;
}

std::vector<std::string> Tender::item_names() const
{
  std::vector<std::string> names;
  names.reserve(items.size());
  for (auto const &i : items)
  {
    names.push_back(i.name);
  }
  return names;
}

std::vector<std::string> Tender::bidder_names() const
{
  std::vector<std::string> names;
  names.reserve(bids.size());
  for (auto const &b : bids)
  {
    names.push_back(b.bidder);
  }
  return names;
}

namespace {

bool direction_fits(ResponseKind kind, Direction direction)
{
  switch (kind)
  {
  case ResponseKind::Price:
  case ResponseKind::Quantity:
  case ResponseKind::Qualification:
    return direction == Direction::LowerBetter || direction == Direction::HigherBetter;
  case ResponseKind::Rank:
    return direction == Direction::OrdinalScale;
  case ResponseKind::Committee:
    return direction == Direction::Committee;
  }
  return false;
}

void check_items(Tender const &tender, std::vector<Issue> &issues)
{
  if (tender.items.empty())
  {
    issues.push_back({"no-items", "", "", "tender has no evaluation items"});
  }
  std::set<std::string> seen;
  for (auto const &item : tender.items)
  {
    if (item.name.empty())
    {
      issues.push_back({"empty-item-name", "", "", "evaluation item with an empty name"});
      continue;
    }
    if (!seen.insert(item.name).second)
    {
      issues.push_back({"duplicate-item", "", item.name, "item name used more than once"});
    }
    std::set<std::string> indexes;
    for (auto const &index : item.indexes)
    {
      if (index.empty() || !indexes.insert(index).second)
      {
        issues.push_back({"bad-index", "", item.name, "index names must be unique and non-empty ('" + index + "')"});
      }
    }
    auto const &cmp = item.comparator;
    if (!std::isfinite(cmp.tolerance) || cmp.tolerance < 0.0)
    {
      issues.push_back({"bad-tolerance", "", item.name, "tolerance must be finite and >= 0"});
    }
    if (!direction_fits(item.kind, cmp.direction))
    {
      issues.push_back({"bad-direction", "", item.name,
                        std::string(to_string(cmp.direction)) + " does not apply to " +
                            std::string(to_string(item.kind)) + " responses"});
    }
    if (item.kind == ResponseKind::Rank)
    {
      std::set<std::string> labels(cmp.scale.begin(), cmp.scale.end());
      if (cmp.scale.empty() || labels.size() != cmp.scale.size() || labels.count(""))
      {
        issues.push_back({"bad-scale", "", item.name, "rank scale must be non-empty with unique labels"});
      }
    }
  }
}

void check_precedence(Tender const &tender, std::vector<Issue> &issues)
{
  std::map<std::string, int> uses;
  for (auto const &tier : tender.precedence.tiers)
  {
    if (tier.empty())
    {
      issues.push_back({"empty-tier", "", "", "precedence contains an empty tier"});
    }
    for (auto const &name : tier)
    {
      ++uses[name];
      if (!tender.find_item(name))
      {
        issues.push_back({"unknown-item-in-precedence", "", name, "precedence names an item the tender lacks"});
      }
    }
  }
  for (auto const &[name, count] : uses)
  {
    if (count > 1)
    {
      issues.push_back({"repeated-item-in-precedence", "", name, "item appears in more than one place"});
    }
  }
  for (auto const &item : tender.items)
  {
    if (!item.name.empty() && !uses.count(item.name))
    {
      issues.push_back({"item-missing-from-precedence", "", item.name, "precedence does not rank this item"});
    }
  }
}

void check_response(EvaluationItem const &item, Bid const &bid, ResponseValue const &value, std::vector<Issue> &issues)
{
  if (kind_of(value) != item.kind)
  {
    issues.push_back({"kind-mismatch", bid.bidder, item.name,
                      "expected a " + std::string(to_string(item.kind)) + " response, got " +
                          std::string(to_string(kind_of(value)))});
    return;
  }
  if (auto const *q = std::get_if<Quantity>(&value))
  {
    if (std::isnan(q->amount) || q->amount < 0.0)
    {
      issues.push_back({"bad-quantity", bid.bidder, item.name, "quantity must be >= 0 (or +inf)"});
    }
  }
  else if (auto const *r = std::get_if<Rank>(&value))
  {
    auto const &scale = item.comparator.scale;
    if (std::find(scale.begin(), scale.end(), r->grade) == scale.end())
    {
      issues.push_back({"grade-outside-scale", bid.bidder, item.name, "grade '" + r->grade + "' is not on the scale"});
    }
  }
  else if (auto const *c = std::get_if<CommitteeOrdinal>(&value))
  {
    if (c->position < 1)
    {
      issues.push_back({"bad-committee-position", bid.bidder, item.name, "committee positions start at 1"});
    }
  }
}

void check_bids(Tender const &tender, std::vector<Issue> &issues)
{
  if (tender.bids.empty())
  {
    issues.push_back({"no-bidders", "", "", "no bidders"});
  }
  std::set<std::string> names;
  std::set<std::size_t> submissions;
  for (auto const &bid : tender.bids)
  {
    if (bid.bidder.empty())
    {
      issues.push_back({"empty-bidder-name", "", "", "bid with an empty bidder name"});
    }
    else if (!names.insert(bid.bidder).second)
    {
      issues.push_back({"duplicate-bidder", bid.bidder, "", "bidder appears more than once"});
    }
    if (!submissions.insert(bid.submission_index).second)
    {
      issues.push_back({"duplicate-submission-index", bid.bidder, "",
                        "submission index " + std::to_string(bid.submission_index) + " reused"});
    }
    for (auto const &item : tender.items)
    {
      auto it = bid.responses.find(item.name);
      if (it == bid.responses.end())
      {
        issues.push_back({"missing-response", bid.bidder, item.name, "bid has no response for this item"});
        continue;
      }
      check_response(item, bid, it->second, issues);
    }
    for (auto const &[name, value] : bid.responses)
    {
      if (!tender.find_item(name))
      {
        issues.push_back({"unknown-item", bid.bidder, name, "response for an item the tender lacks"});
      }
    }
    for (auto const &[name, grades] : bid.index_grades)
    {
      auto const *item = tender.find_item(name);
      if (!item)
      {
        issues.push_back({"unknown-item", bid.bidder, name, "index grades for an item the tender lacks"});
        continue;
      }
      for (auto const &[index, grade] : grades)
      {
        if (std::find(item->indexes.begin(), item->indexes.end(), index) == item->indexes.end())
        {
          issues.push_back({"unknown-index", bid.bidder, name, "index '" + index + "' is not declared"});
        }
      }
    }
  }
}

}  // namespace

std::vector<Issue> check_tender(Tender const &tender)
{
  std::vector<Issue> issues;
  check_items(tender, issues);
  check_precedence(tender, issues);
  check_bids(tender, issues);
  return issues;
}

Tender validate_tender(Tender tender)
{
  auto issues = check_tender(tender);
  if (!issues.empty())
  {
    throw ValidationError(std::move(issues));
  }
  return tender;
}

}  // namespace bideval
