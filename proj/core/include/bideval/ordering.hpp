#pragma once

#include "bideval/model.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bideval {

/// Bidders of one item grouped into equivalence classes, best class first.
/// Within a class, members are listed best value first, then by submission.
struct ItemClassification
{
  std::string                           item;
  std::vector<std::vector<std::string>> classes;

  /// Index of the class holding `bidder`; throws ValidationError if absent.
  std::size_t class_of(std::string_view bidder) const;

  bool operator==(ItemClassification const &) const = default;
};

using Classifications = std::map<std::string, ItemClassification, std::less<>>;

/// A scalar score attached to a bidder, for anchor clustering.
struct ScoredBidder
{
  std::string bidder;
  std::size_t submission_index = 0;
  long double value            = 0.0L;
};

/// Greedy anchor clustering in sorted order.
///
/// Entries are sorted best first (`direction` must be LowerBetter or
/// HigherBetter; value ties go to the lower submission index). The first
/// entry anchors a class; each later entry joins the current class iff its
/// distance from that class's anchor is <= tolerance, otherwise it anchors a
/// new class. Equal infinities have distance 0, any other pair involving an
/// infinity is infinitely far apart.
std::vector<std::vector<std::string>> cluster_by_anchor(std::vector<ScoredBidder> entries, Direction direction,
                                                        long double tolerance);

/// Partition `bids` into ordered equivalence classes on `item`.
///
/// Price and quantity items use anchor clustering with the comparator's
/// tolerance (prices are compared in exact hundredths). Rank items group by
/// grade in scale order, committee items by position ascending, and
/// qualification items put passes ahead of failures under higher-better.
ItemClassification classify_item(EvaluationItem const &item, std::span<Bid const> bids);

Classifications classify_all(Tender const &tender);

enum class LexOrder
{
  Prec,   ///< a is preferred to b
  Equiv,  ///< no tier separates a and b
  Succ,   ///< b is preferred to a
};

std::string_view to_string(LexOrder order) noexcept;

/// Per-tier standing of a bidder: the class index for single-item tiers, the
/// sum of class indices for equal-priority tiers. Lower is better.
std::vector<std::size_t> tier_profile(std::string_view bidder, Classifications const &classifications,
                                      ItemPrecedence const &precedence);

/// Lexicographic comparison across precedence tiers, best tier first. The
/// first tier whose standings differ decides; equal standings fall through.
LexOrder compare_lex(std::string_view a, std::string_view b, Classifications const &classifications,
                     ItemPrecedence const &precedence);

struct TieBreakPolicy
{
  enum class Kind
  {
    LowerPriceFirst,
    SubmissionIndex,
  };

  Kind        kind = Kind::SubmissionIndex;
  std::string price_item;

  static TieBreakPolicy lower_price_first(std::string item) { return {Kind::LowerPriceFirst, std::move(item)}; }
  static TieBreakPolicy submission_index() { return {Kind::SubmissionIndex, {}}; }

  bool operator==(TieBreakPolicy const &) const = default;
};

enum class TieBreakRule
{
  LowerPrice,
  SubmissionIndex,
};

std::string_view to_string(TieBreakRule rule) noexcept;

/// `first` was placed immediately ahead of the equivalent `second` by `rule`.
struct TieBreakEntry
{
  std::string  first;
  std::string  second;
  TieBreakRule rule = TieBreakRule::SubmissionIndex;

  bool operator==(TieBreakEntry const &) const = default;
};

struct OrderedSequence
{
  std::vector<std::string>              order;
  std::vector<std::vector<std::string>> equiv_groups;
  std::vector<TieBreakEntry>            tiebreak_log;

  bool operator==(OrderedSequence const &) const = default;
};

/// Throws ValidationError unless the policy can be applied to `tender`.
void check_policy(Tender const &tender, TieBreakPolicy const &policy);

/// Sort `tender.bids` by tier profile, group equivalent bidders, and order
/// each group by `policy`. Residual ties always fall back to submission order.
OrderedSequence merge_lexicographic(Tender const &tender, Classifications const &classifications,
                                    ItemPrecedence const &precedence, TieBreakPolicy const &policy);

/// Full lexicographic evaluation of a validated tender.
OrderedSequence order_bids(Tender const &tender, TieBreakPolicy const &policy);

/// The first min(n, k) bidders; n must be >= 1.
std::vector<std::string> pre_successful(OrderedSequence const &sequence, std::size_t n = 3);

}  // namespace bideval
