#include "bideval/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bideval {

std::size_t ItemClassification::class_of(std::string_view bidder) const
{
  for (std::size_t c = 0; c < classes.size(); ++c)
  {
    if (std::find(classes[c].begin(), classes[c].end(), bidder) != classes[c].end())
    {
      return c;
    }
  }
  throw ValidationError({Issue{"unclassified-bidder", std::string(bidder), item, "bidder missing from classification"}});
}

std::string_view to_string(LexOrder order) noexcept
{
  switch (order)
  {
  case LexOrder::Prec:
    return "prec";
  case LexOrder::Equiv:
    return "equiv";
  case LexOrder::Succ:
    return "succ";
  }
  return "?";
}

std::string_view to_string(TieBreakRule rule) noexcept
{
  return rule == TieBreakRule::LowerPrice ? "lower-price" : "submission-index";
}

namespace {

// Sort best first, then sweep: join the open class while within tolerance of
// its anchor.
template <class Entry, class Better, class Within>
std::vector<std::vector<std::string>> anchor_clusters(std::vector<Entry> entries, Better better, Within within)
{
  std::sort(entries.begin(), entries.end(), [&](Entry const &a, Entry const &b) {
    if (better(a, b))
    {
      return true;
    }
    if (better(b, a))
    {
      return false;
    }
    return a.submission_index < b.submission_index;
  });

  std::vector<std::vector<std::string>> classes;
  Entry const                          *anchor = nullptr;
  for (auto const &entry : entries)
  {
    if (anchor == nullptr || !within(*anchor, entry))
    {
      classes.emplace_back();
      anchor = &entry;
    }
    classes.back().push_back(entry.bidder);
  }
  return classes;
}

struct PricedBidder
{
  std::string bidder;
  std::size_t submission_index = 0;
  Money       amount;
};

std::vector<std::vector<std::string>> cluster_prices(std::vector<PricedBidder> entries, Direction direction,
                                                     double tolerance)
{
  // Tolerances are compared in whole hundredths; the epsilon absorbs binary
  // representation error in values like 0.3.
  long double const   scaled     = std::floor(static_cast<long double>(tolerance) * 100.0L + 1e-7L);
  std::int64_t const limit =
      scaled >= static_cast<long double>(std::numeric_limits<std::int64_t>::max())
          ? std::numeric_limits<std::int64_t>::max()
          : static_cast<std::int64_t>(scaled);

  auto better = [direction](PricedBidder const &a, PricedBidder const &b) {
    return direction == Direction::HigherBetter ? a.amount > b.amount : a.amount < b.amount;
  };
  auto within = [limit](PricedBidder const &anchor, PricedBidder const &v) {
    if (!anchor.amount.is_finite() || !v.amount.is_finite())
    {
      return anchor.amount == v.amount;
    }
    // Both finite: compare the exact distance without overflowing.
    std::int64_t const a = anchor.amount.cents();
    std::int64_t const b = v.amount.cents();
    std::uint64_t const distance =
        a > b ? static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b)
              : static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
    return distance <= static_cast<std::uint64_t>(limit);
  };
  return anchor_clusters(std::move(entries), better, within);
}

template <class Key>
std::vector<std::vector<std::string>> group_by_key(std::span<Bid const> bids, Key key)
{
  std::vector<std::pair<std::size_t, Bid const *>> keyed;
  keyed.reserve(bids.size());
  for (auto const &bid : bids)
  {
    keyed.emplace_back(key(bid), &bid);
  }
  std::sort(keyed.begin(), keyed.end(), [](auto const &a, auto const &b) {
    return a.first != b.first ? a.first < b.first : a.second->submission_index < b.second->submission_index;
  });
  std::vector<std::vector<std::string>> classes;
  for (std::size_t i = 0; i < keyed.size(); ++i)
  {
    if (i == 0 || keyed[i].first != keyed[i - 1].first)
    {
      classes.emplace_back();
    }
    classes.back().push_back(keyed[i].second->bidder);
  }
  return classes;
}

}  // namespace

std::vector<std::vector<std::string>> cluster_by_anchor(std::vector<ScoredBidder> entries, Direction direction,
                                                        long double tolerance)
{
  if (direction != Direction::LowerBetter && direction != Direction::HigherBetter)
  {
    throw ValidationError({Issue{"bad-direction", "", "", "anchor clustering needs a numeric direction"}});
  }
  for (auto const &e : entries)
  {
    if (std::isnan(e.value))
    {
      throw ValidationError({Issue{"nan-value", e.bidder, "", "cannot cluster NaN"}});
    }
  }
  auto better = [direction](ScoredBidder const &a, ScoredBidder const &b) {
    return direction == Direction::HigherBetter ? a.value > b.value : a.value < b.value;
  };
  auto within = [tolerance](ScoredBidder const &anchor, ScoredBidder const &v) {
    if (std::isinf(anchor.value) || std::isinf(v.value))
    {
      return anchor.value == v.value;
    }
    return std::fabs(v.value - anchor.value) <= tolerance;
  };
  return anchor_clusters(std::move(entries), better, within);
}

ItemClassification classify_item(EvaluationItem const &item, std::span<Bid const> bids)
{
  ItemClassification result{item.name, {}};
  if (bids.empty())
  {
    return result;
  }

  for (auto const &bid : bids)
  {
    auto const &value = bid.response(item.name);
    if (kind_of(value) != kind_of(bids.front().response(item.name)))
    {
      throw ValidationError({Issue{"mixed-responses", bid.bidder, item.name, "responses on one item must share a type"}});
    }
  }
  auto const  kind      = kind_of(bids.front().response(item.name));
  auto const &cmp       = item.comparator;
  auto const  direction = cmp.direction;

  switch (kind)
  {
  case ResponseKind::Price: {
    std::vector<PricedBidder> entries;
    for (auto const &bid : bids)
    {
      entries.push_back({bid.bidder, bid.submission_index, std::get<Price>(bid.response(item.name)).amount});
    }
    result.classes = cluster_prices(std::move(entries), direction, cmp.tolerance);
    break;
  }
  case ResponseKind::Quantity: {
    std::vector<ScoredBidder> entries;
    for (auto const &bid : bids)
    {
      entries.push_back({bid.bidder, bid.submission_index,
                         static_cast<long double>(std::get<Quantity>(bid.response(item.name)).amount)});
    }
    result.classes = cluster_by_anchor(std::move(entries), direction, cmp.tolerance);
    break;
  }
  case ResponseKind::Rank:
    result.classes = group_by_key(bids, [&](Bid const &bid) {
      auto const &grade = std::get<Rank>(bid.response(item.name)).grade;
      auto const  it    = std::find(cmp.scale.begin(), cmp.scale.end(), grade);
      if (it == cmp.scale.end())
      {
        throw ValidationError({Issue{"grade-outside-scale", bid.bidder, item.name, "grade '" + grade + "'"}});
      }
      return static_cast<std::size_t>(it - cmp.scale.begin());
    });
    break;
  case ResponseKind::Committee:
    result.classes = group_by_key(
        bids, [&](Bid const &bid) { return std::size_t{std::get<CommitteeOrdinal>(bid.response(item.name)).position}; });
    break;
  case ResponseKind::Qualification:
    result.classes = group_by_key(bids, [&](Bid const &bid) {
      bool const pass = std::get<Qualification>(bid.response(item.name)).pass;
      bool const best = direction != Direction::LowerBetter;
      return std::size_t{pass == best ? 0u : 1u};
    });
    break;
  }
  return result;
}

Classifications classify_all(Tender const &tender)
{
  Classifications out;
  for (auto const &item : tender.items)
  {
    out.emplace(item.name, classify_item(item, tender.bids));
  }
  return out;
}

std::vector<std::size_t> tier_profile(std::string_view bidder, Classifications const &classifications,
                                      ItemPrecedence const &precedence)
{
  std::vector<std::size_t> profile;
  profile.reserve(precedence.tiers.size());
  for (auto const &tier : precedence.tiers)
  {
    std::size_t standing = 0;
    for (auto const &item : tier)
    {
      auto it = classifications.find(item);
      if (it == classifications.end())
      {
        throw ValidationError({Issue{"missing-classification", "", item, "no classification for item"}});
      }
      standing += it->second.class_of(bidder);
    }
    profile.push_back(standing);
  }
  return profile;
}

LexOrder compare_lex(std::string_view a, std::string_view b, Classifications const &classifications,
                     ItemPrecedence const &precedence)
{
  auto const pa = tier_profile(a, classifications, precedence);
  auto const pb = tier_profile(b, classifications, precedence);
  for (std::size_t t = 0; t < pa.size(); ++t)
  {
    if (pa[t] != pb[t])
    {
      return pa[t] < pb[t] ? LexOrder::Prec : LexOrder::Succ;
    }
  }
  return LexOrder::Equiv;
}

void check_policy(Tender const &tender, TieBreakPolicy const &policy)
{
  if (policy.kind != TieBreakPolicy::Kind::LowerPriceFirst)
  {
    return;
  }
  auto const *item = tender.find_item(policy.price_item);
  if (item == nullptr)
  {
    throw ValidationError({Issue{"bad-tiebreak", "", policy.price_item, "tie-break item does not exist"}});
  }
  if (item->kind != ResponseKind::Price)
  {
    throw ValidationError({Issue{"bad-tiebreak", "", policy.price_item, "lower-price tie-break needs a price item"}});
  }
}

OrderedSequence merge_lexicographic(Tender const &tender, Classifications const &classifications,
                                    ItemPrecedence const &precedence, TieBreakPolicy const &policy)
{
  check_policy(tender, policy);
  bool const by_price = policy.kind == TieBreakPolicy::Kind::LowerPriceFirst;

  struct Row
  {
    Bid const               *bid;
    std::vector<std::size_t> profile;
    Money                    price;
  };
  std::vector<Row> rows;
  rows.reserve(tender.bids.size());
  for (auto const &bid : tender.bids)
  {
    Row row{&bid, tier_profile(bid.bidder, classifications, precedence), {}};
    if (by_price)
    {
      row.price = std::get<Price>(bid.response(policy.price_item)).amount;
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [&](Row const &a, Row const &b) {
    if (a.profile != b.profile)
    {
      return a.profile < b.profile;
    }
    if (by_price && a.price != b.price)
    {
      return a.price < b.price;
    }
    return a.bid->submission_index < b.bid->submission_index;
  });

  OrderedSequence seq;
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    seq.order.push_back(rows[i].bid->bidder);
    if (i == 0 || rows[i].profile != rows[i - 1].profile)
    {
      seq.equiv_groups.emplace_back();
    }
    else
    {
      auto const rule =
          by_price && rows[i].price != rows[i - 1].price ? TieBreakRule::LowerPrice : TieBreakRule::SubmissionIndex;
      seq.tiebreak_log.push_back({rows[i - 1].bid->bidder, rows[i].bid->bidder, rule});
    }
    seq.equiv_groups.back().push_back(rows[i].bid->bidder);
  }
  return seq;
}

OrderedSequence order_bids(Tender const &tender, TieBreakPolicy const &policy)
{
  return merge_lexicographic(tender, classify_all(tender), tender.precedence, policy);
}

std::vector<std::string> pre_successful(OrderedSequence const &sequence, std::size_t n)
{
  if (n < 1)
  {
    throw ValidationError({Issue{"bad-top-n", "", "", "number of pre-successful bidders must be >= 1"}});
  }
  auto const count = std::min(n, sequence.order.size());
  return {sequence.order.begin(), sequence.order.begin() + static_cast<std::ptrdiff_t>(count)};
}

}  // namespace bideval
