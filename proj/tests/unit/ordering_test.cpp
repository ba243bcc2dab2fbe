#include "bideval/ordering.hpp"

#include "oracles.hpp"
#include "worked_tenders.hpp"
#include "random_tender.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace bt = bideval::testing;
using namespace bideval;

namespace {

using Classes = std::vector<std::vector<std::string>>;

std::vector<ScoredBidder> scored(std::vector<long double> const &values)
{
  std::vector<ScoredBidder> out;
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    out.push_back({"b" + std::to_string(i), i, values[i]});
  }
  return out;
}

}  // namespace

TEST(Classify, FourBidderPrices)
{
  auto const t = bt::four_bidder_tender();
  EXPECT_EQ(bt::as_sets(classify_item(t.item("A1"), t.bids)), (bt::ClassSets{{"R2", "R3"}, {"R1", "R4"}}));
}

TEST(Classify, FourBidderRanks)
{
  auto const t = bt::four_bidder_tender();
  EXPECT_EQ(bt::as_sets(classify_item(t.item("A2"), t.bids)), (bt::ClassSets{{"R2", "R3"}, {"R1"}, {"R4"}}));
}

TEST(Classify, FourBidderAreaFollowsTolerance)
{
  // 250806 - 210208 = 40598 exceeds the 40000 tolerance, so R1 and R2 split.
  auto const t = bt::four_bidder_tender();
  EXPECT_EQ(bt::as_sets(classify_item(t.item("A3"), t.bids)), (bt::ClassSets{{"R3", "R4"}, {"R1"}, {"R2"}}));
}

TEST(Classify, AnchorRuleIgnoresChaining)
{
  auto const classes = cluster_by_anchor(scored({100, 200, 300}), Direction::LowerBetter, 150);
  EXPECT_EQ(classes, (Classes{{"b0", "b1"}, {"b2"}}));
}

TEST(Classify, IdenticalResponsesFormOneClass)
{
  auto const classes = cluster_by_anchor(scored({7, 7, 7, 7}), Direction::HigherBetter, 0);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0].size(), 4u);
}

TEST(Classify, InfinitiesAreStrictlyApartFromFiniteValues)
{
  auto const inf     = std::numeric_limits<long double>::infinity();
  auto const classes = cluster_by_anchor(scored({inf, 1e30L, inf, -inf}), Direction::HigherBetter, 1e40L);
  EXPECT_EQ(classes, (Classes{{"b0", "b2"}, {"b1"}, {"b3"}}));
}

TEST(Classify, PriceToleranceIsExactInCents)
{
  auto t                          = bt::price_tender({Money::parse("100.00"), Money::parse("100.10"),
                                                      Money::parse("100.11")});
  t.items[0].comparator.tolerance = 0.1;
  EXPECT_EQ(bt::as_sets(classify_item(t.items[0], t.bids)), (bt::ClassSets{{"R1", "R2"}, {"R3"}}));
}

TEST(Classify, QualificationPassComesFirst)
{
  auto const t = bt::design_tender();
  auto const c = classify_item(t.item("staff"), t.bids);
  ASSERT_EQ(c.classes.size(), 2u);
  EXPECT_EQ(c.classes[1], std::vector<std::string>{"R5"});
}

TEST(Classify, RejectsMixedResponses)
{
  auto t                    = bt::four_bidder_tender();
  t.bids[0].responses["A1"] = Quantity{3};
  EXPECT_THROW(classify_item(t.item("A1"), t.bids), ValidationError);
}

TEST(Classify, MatchesOracleOnRandomTenders)
{
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i)
  {
    auto const t = bt::random_tender(rng);
    for (auto const &item : t.items)
    {
      auto const got = classify_item(item, t.bids);
      EXPECT_EQ(bt::as_sets(got), bt::oracle_classes(t, item)) << item.name;
      for (std::size_t c = 0; c < got.classes.size(); ++c)
      {
        for (auto const &b : got.classes[c])
        {
          EXPECT_EQ(got.class_of(b), c);
        }
      }
    }
  }
}

TEST(CompareLex, FourBidderSecondTierSeparatesR3AndR2)
{
  auto const t = bt::four_bidder_tender();
  auto const c = classify_all(t);
  EXPECT_EQ(compare_lex("R3", "R2", c, t.precedence), LexOrder::Prec);
  EXPECT_EQ(compare_lex("R2", "R3", c, t.precedence), LexOrder::Succ);
  EXPECT_EQ(compare_lex("R4", "R4", c, t.precedence), LexOrder::Equiv);
}

TEST(CompareLex, IdenticalBidsAreEquivalent)
{
  auto t          = bt::four_bidder_tender();
  auto clone      = t.bids[0];
  clone.bidder    = "R1b";
  clone.submission_index = 9;
  t.bids.push_back(clone);
  auto const c = classify_all(t);
  EXPECT_EQ(compare_lex("R1", "R1b", c, t.precedence), LexOrder::Equiv);
}

TEST(CompareLex, EqualPriorityTierRespectsDominance)
{
  // On an equal-priority tier a bidder no worse on every item and better on
  // one is preferred.
  Tender t;
  t.id = "tier";
  for (auto const *name : {"X", "Y"})
  {
    EvaluationItem item;
    item.name                 = name;
    item.kind                 = ResponseKind::Committee;
    item.comparator.direction = Direction::Committee;
    t.items.push_back(item);
  }
  t.precedence = parse_precedence("X ~ Y", t.item_names());
  auto add     = [&](std::string name, unsigned x, unsigned y) {
    t.bids.push_back(Bid{name, t.bids.size(), {{"X", CommitteeOrdinal{x}}, {"Y", CommitteeOrdinal{y}}}, {}});
  };
  add("a", 1, 1);
  add("b", 1, 2);
  add("c", 2, 1);
  t            = validate_tender(t);
  auto const c = classify_all(t);
  EXPECT_EQ(compare_lex("a", "b", c, t.precedence), LexOrder::Prec);
  EXPECT_EQ(compare_lex("a", "c", c, t.precedence), LexOrder::Prec);
  EXPECT_EQ(compare_lex("b", "c", c, t.precedence), LexOrder::Equiv);
}

TEST(CompareLex, MatchesOracleOnRandomTenders)
{
  std::mt19937_64 rng(33);
  bt::RandomTenderShape shape;
  shape.min_bidders = 4;
  shape.max_bidders = 4;
  shape.min_items   = 3;
  shape.max_items   = 3;
  for (int i = 0; i < 200; ++i)
  {
    auto const t = bt::random_tender(rng, shape);
    auto const c = classify_all(t);
    for (auto const &a : t.bidder_names())
    {
      for (auto const &b : t.bidder_names())
      {
        EXPECT_EQ(compare_lex(a, b, c, t.precedence), bt::oracle_compare(t, a, b));
      }
    }
  }
}

TEST(OrderBids, FourBidder)
{
  auto const seq = order_bids(bt::four_bidder_tender(), TieBreakPolicy::lower_price_first("A1"));
  EXPECT_EQ(seq.order, (std::vector<std::string>{"R3", "R2", "R4", "R1"}));
  EXPECT_TRUE(seq.tiebreak_log.empty());
  EXPECT_EQ(pre_successful(seq), (std::vector<std::string>{"R3", "R2", "R4"}));
  EXPECT_EQ(pre_successful(seq, 1), (std::vector<std::string>{"R3"}));
  EXPECT_EQ(pre_successful(seq, 10), seq.order);
  EXPECT_THROW(pre_successful(seq, 0), ValidationError);
}

TEST(OrderBids, SingleBidder)
{
  auto t = bt::four_bidder_tender();
  t.bids.resize(1);
  auto const seq = order_bids(t, TieBreakPolicy::submission_index());
  EXPECT_EQ(seq.order, std::vector<std::string>{"R1"});
  EXPECT_TRUE(seq.tiebreak_log.empty());
}

TEST(OrderBids, TieBreakLogsRuleApplied)
{
  auto t = bt::price_tender({Money::from_units(10), Money::from_units(12), Money::from_units(10)});
  t.items[0].comparator.tolerance = 5;
  auto const lpf = order_bids(t, TieBreakPolicy::lower_price_first("A1"));
  EXPECT_EQ(lpf.order, (std::vector<std::string>{"R1", "R3", "R2"}));
  EXPECT_EQ(lpf.tiebreak_log, (std::vector<TieBreakEntry>{{"R1", "R3", TieBreakRule::SubmissionIndex},
                                                          {"R3", "R2", TieBreakRule::LowerPrice}}));
  EXPECT_EQ(lpf.equiv_groups.size(), 1u);

  auto const sub = order_bids(t, TieBreakPolicy::submission_index());
  EXPECT_EQ(sub.order, (std::vector<std::string>{"R1", "R2", "R3"}));
}

TEST(OrderBids, RejectsNonPricePolicy)
{
  EXPECT_THROW(order_bids(bt::four_bidder_tender(), TieBreakPolicy::lower_price_first("A2")), ValidationError);
  EXPECT_THROW(order_bids(bt::four_bidder_tender(), TieBreakPolicy::lower_price_first("nope")), ValidationError);
}

TEST(OrderBids, ExactToleranceAndDistinctValuesGiveStrictOrder)
{
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i)
  {
    auto const prices = bt::random_distinct_prices(rng, 6, 100, 200);
    auto const seq    = order_bids(bt::price_tender(prices), TieBreakPolicy::submission_index());
    EXPECT_TRUE(seq.tiebreak_log.empty());
    EXPECT_EQ(seq.equiv_groups.size(), prices.size());
  }
}

TEST(OrderBids, EqualsUniqueBruteForceOrder)
{
  std::mt19937_64 rng(77);
  bt::RandomTenderShape shape;
  shape.max_bidders = 5;
  for (int i = 0; i < 150; ++i)
  {
    auto const t      = bt::random_tender(rng, shape);
    auto const policy = bt::random_policy(rng, t);
    auto const all    = bt::brute_force_orders(t, policy);
    ASSERT_EQ(all.size(), 1u);
    EXPECT_EQ(order_bids(t, policy).order, all.front());
  }
}

TEST(OrderBids, GroupsAreContiguousAndPartitionBidders)
{
  std::mt19937_64 rng(90);
  for (int i = 0; i < 200; ++i)
  {
    auto const t   = bt::random_tender(rng);
    auto const seq = order_bids(t, bt::random_policy(rng, t));
    std::vector<std::string> flat;
    for (auto const &g : seq.equiv_groups)
    {
      flat.insert(flat.end(), g.begin(), g.end());
    }
    EXPECT_EQ(flat, seq.order);
    auto names = t.bidder_names();
    auto order = seq.order;
    std::sort(names.begin(), names.end());
    std::sort(order.begin(), order.end());
    EXPECT_EQ(order, names);
    std::size_t within_group_pairs = 0;
    for (auto const &g : seq.equiv_groups)
    {
      within_group_pairs += g.size() - 1;
    }
    EXPECT_EQ(seq.tiebreak_log.size(), within_group_pairs);
  }
}

TEST(OrderBids, HeadIsNeverDominated)
{
  std::mt19937_64 rng(91);
  for (int i = 0; i < 200; ++i)
  {
    auto const t   = bt::random_tender(rng);
    auto const c   = classify_all(t);
    auto const seq = order_bids(t, bt::random_policy(rng, t));
    for (auto const &other : seq.order)
    {
      EXPECT_NE(compare_lex(seq.order.front(), other, c, t.precedence), LexOrder::Succ);
    }
  }
}
