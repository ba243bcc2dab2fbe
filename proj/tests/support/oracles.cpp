#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bideval::testing {

namespace {

struct Point
{
  std::string name;
  long double value;  // larger is better after orientation
};

long double as_number(ResponseValue const &v)
{
  if (auto const *p = std::get_if<Price>(&v))
  {
    switch (p->amount.kind())
    {
    case Money::Kind::NegInf:
      return -std::numeric_limits<long double>::infinity();
    case Money::Kind::PosInf:
      return std::numeric_limits<long double>::infinity();
    case Money::Kind::Finite:
      return static_cast<long double>(p->amount.cents());
    }
  }
  return static_cast<long double>(std::get<Quantity>(v).amount);
}

std::size_t class_index(ClassSets const &classes, std::string const &bidder)
{
  for (std::size_t c = 0; c < classes.size(); ++c)
  {
    if (classes[c].count(bidder))
    {
      return c;
    }
  }
  return classes.size();
}

}  // namespace

ClassSets oracle_classes(Tender const &tender, EvaluationItem const &item)
{
  ClassSets out;
  auto const dir = item.comparator.direction;

  if (item.kind == ResponseKind::Price || item.kind == ResponseKind::Quantity)
  {
    // Prices are compared in cents, so the tolerance is converted too.
    long double const limit = item.kind == ResponseKind::Price
                                  ? std::floor(static_cast<long double>(item.comparator.tolerance) * 100 + 1e-7L)
                                  : static_cast<long double>(item.comparator.tolerance);
    std::vector<Point> pts;
    for (auto const &bid : tender.bids)
    {
      long double v = as_number(bid.response(item.name));
      pts.push_back({bid.bidder, dir == Direction::LowerBetter ? -v : v});
    }
    std::stable_sort(pts.begin(), pts.end(), [](Point const &a, Point const &b) { return a.value > b.value; });
    long double anchor = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
      bool join = false;
      if (i > 0)
      {
        if (std::isinf(anchor) || std::isinf(pts[i].value))
        {
          join = anchor == pts[i].value;
        }
        else
        {
          join = anchor - pts[i].value <= limit;
        }
      }
      if (!join)
      {
        out.emplace_back();
        anchor = pts[i].value;
      }
      out.back().insert(pts[i].name);
    }
    return out;
  }

  std::map<long, std::set<std::string>> groups;
  for (auto const &bid : tender.bids)
  {
    auto const &v   = bid.response(item.name);
    long        key = 0;
    if (auto const *r = std::get_if<Rank>(&v))
    {
      auto const &scale = item.comparator.scale;
      key               = std::find(scale.begin(), scale.end(), r->grade) - scale.begin();
    }
    else if (auto const *c = std::get_if<CommitteeOrdinal>(&v))
    {
      key = static_cast<long>(c->position);
    }
    else
    {
      bool const pass = std::get<Qualification>(v).pass;
      key             = (dir == Direction::LowerBetter) == pass ? 1 : 0;
    }
    groups[key].insert(bid.bidder);
  }
  for (auto &[key, members] : groups)
  {
    out.push_back(std::move(members));
  }
  return out;
}

ClassSets as_sets(ItemClassification const &classification)
{
  ClassSets out;
  for (auto const &cls : classification.classes)
  {
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

LexOrder oracle_compare(Tender const &tender, std::string const &a, std::string const &b)
{
  for (auto const &tier : tender.precedence.tiers)
  {
    std::size_t sa = 0;
    std::size_t sb = 0;
    for (auto const &name : tier)
    {
      auto const classes = oracle_classes(tender, tender.item(name));
      sa += class_index(classes, a);
      sb += class_index(classes, b);
    }
    if (sa != sb)
    {
      return sa < sb ? LexOrder::Prec : LexOrder::Succ;
    }
  }
  return LexOrder::Equiv;
}

bool oracle_before(Tender const &tender, TieBreakPolicy const &policy, std::string const &a, std::string const &b)
{
  auto const rel = oracle_compare(tender, a, b);
  if (rel != LexOrder::Equiv)
  {
    return rel == LexOrder::Prec;
  }
  Bid const &ba = *tender.find_bid(a);
  Bid const &bb = *tender.find_bid(b);
  if (policy.kind == TieBreakPolicy::Kind::LowerPriceFirst)
  {
    auto const pa = std::get<Price>(ba.response(policy.price_item)).amount;
    auto const pb = std::get<Price>(bb.response(policy.price_item)).amount;
    if (pa != pb)
    {
      return pa < pb;
    }
  }
  return ba.submission_index < bb.submission_index;
}

std::vector<std::vector<std::string>> brute_force_orders(Tender const &tender, TieBreakPolicy const &policy)
{
  auto names = tender.bidder_names();
  std::sort(names.begin(), names.end());
  std::vector<std::vector<std::string>> found;
  do
  {
    bool ok = true;
    for (std::size_t i = 0; ok && i < names.size(); ++i)
    {
      for (std::size_t j = i + 1; ok && j < names.size(); ++j)
      {
        ok = !oracle_before(tender, policy, names[j], names[i]);
      }
    }
    if (ok)
    {
      found.push_back(names);
    }
  } while (std::next_permutation(names.begin(), names.end()));
  return found;
}

long double lagrange(std::span<double const> nodes, std::span<double const> values, long double x)
{
  long double sum = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
  {
    long double basis = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j)
    {
      if (j != i)
      {
        basis *= (x - nodes[j]) / (static_cast<long double>(nodes[i]) - nodes[j]);
      }
    }
    sum += basis * values[i];
  }
  return sum;
}

long double oracle_price_mark(long double price, long double standard, long double t_above, long double t_below)
{
  long double const t = price > standard ? t_above : t_below;
  return 100 - t * std::fabs((price - standard) / standard) * 100;
}

}  // namespace bideval::testing
