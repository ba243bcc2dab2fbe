#include "bideval/graph.hpp"

#include "oracles.hpp"
#include "worked_tenders.hpp"
#include "random_tender.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace bt = bideval::testing;
using namespace bideval;

namespace {

TenderGraph graph_of(Tender const &t)
{
  return build_graph(t, classify_all(t), t.precedence);
}

std::set<DirectedEdge> e1_on(TenderGraph const &g, std::string const &item)
{
  std::set<DirectedEdge> out;
  for (auto const &e : g.e1)
  {
    if (e.from.item == item)
    {
      out.insert(e);
    }
  }
  return out;
}

DirectedEdge arc(std::string a, std::string b, std::string const &item)
{
  return {{std::move(a), item}, {std::move(b), item}};
}

}  // namespace

TEST(BuildGraph, FourBidderCounts)
{
  auto const g = graph_of(bt::four_bidder_tender());
  EXPECT_EQ(g.vertices.size(), 12u);
  EXPECT_EQ(g.e3.size(), 8u);
}

TEST(BuildGraph, FourBidderPriceEdges)
{
  auto const g = graph_of(bt::four_bidder_tender());
  EXPECT_EQ(e1_on(g, "A1"), (std::set<DirectedEdge>{arc("R2", "R4", "A1"), arc("R2", "R1", "A1"),
                                                     arc("R3", "R4", "A1"), arc("R3", "R1", "A1")}));
  std::set<UndirectedEdge> e2_a1;
  for (auto const &e : g.e2)
  {
    if (e.a.item == "A1")
    {
      e2_a1.insert(e);
    }
  }
  EXPECT_EQ(e2_a1, (std::set<UndirectedEdge>{UndirectedEdge::make({"R3", "A1"}, {"R2", "A1"}),
                                              UndirectedEdge::make({"R1", "A1"}, {"R4", "A1"})}));
}

TEST(BuildGraph, SingleVertex)
{
  auto t = bt::four_bidder_tender();
  t.items.resize(1);
  t.precedence = ItemPrecedence{{{"A1"}}};
  t.bids.resize(1);
  t.bids[0].responses.erase("A2");
  t.bids[0].responses.erase("A3");
  auto const g = graph_of(validate_tender(t));
  EXPECT_EQ(g.vertices.size(), 1u);
  EXPECT_TRUE(g.e1.empty() && g.e2.empty() && g.e3.empty());
  EXPECT_EQ(export_edges(g), "V R1@A1\n");
}

TEST(BuildGraph, StructuralInvariantsOnRandomTenders)
{
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i)
  {
    auto const t = bt::random_tender(rng);
    auto const c = classify_all(t);
    auto const g = build_graph(t, c, t.precedence);
    EXPECT_EQ(g.vertices.size(), t.bids.size() * t.items.size());
    for (auto const &e : g.e1)
    {
      // Edges join adjacent classes of one item only.
      ASSERT_EQ(e.from.item, e.to.item);
      auto const &cls = c.at(e.from.item);
      EXPECT_EQ(cls.class_of(e.to.bidder), cls.class_of(e.from.bidder) + 1);
    }
    for (auto const &e : g.e2)
    {
      EXPECT_LT(e.a.label(), e.b.label());
      EXPECT_EQ(c.at(e.a.item).class_of(e.a.bidder), c.at(e.b.item).class_of(e.b.bidder));
    }
    for (auto const &e : g.e3)
    {
      EXPECT_EQ(e.from.bidder, e.to.bidder);
      EXPECT_EQ(t.precedence.tier_of(e.to.item), t.precedence.tier_of(e.from.item) + 1);
    }
    std::size_t expected_e1 = 0;
    for (auto const &[name, cls] : c)
    {
      for (std::size_t k = 0; k + 1 < cls.classes.size(); ++k)
      {
        expected_e1 += cls.classes[k].size() * cls.classes[k + 1].size();
      }
    }
    EXPECT_EQ(g.e1.size(), expected_e1);
  }
}

TEST(RecoverGraph, RoundTripsClassificationsAndPrecedence)
{
  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i)
  {
    auto const t = bt::random_tender(rng);
    auto const c = classify_all(t);
    auto const g = build_graph(t, c, t.precedence);
    auto const r = recover_classifications(g);
    ASSERT_EQ(r.size(), c.size());
    for (auto const &[name, cls] : c)
    {
      EXPECT_EQ(bt::as_sets(r.at(name)), bt::as_sets(cls)) << name;
    }
    auto recovered = recover_precedence(g);
    auto expected  = t.precedence;
    for (auto *p : {&recovered, &expected})
    {
      for (auto &tier : p->tiers)
      {
        std::sort(tier.begin(), tier.end());
      }
    }
    EXPECT_EQ(recovered, expected);
  }
}

TEST(ExtractOrder, FourBidder)
{
  auto const t = bt::four_bidder_tender();
  auto const seq = extract_order(graph_of(t), t, TieBreakPolicy::lower_price_first("A1"));
  EXPECT_EQ(seq.order, (std::vector<std::string>{"R3", "R2", "R4", "R1"}));
}

TEST(ExtractOrder, SingleClassFallsBackToTieBreak)
{
  auto t = bt::price_tender({Money::from_units(12), Money::from_units(10), Money::from_units(11)});
  t.items[0].comparator.tolerance = 100;
  auto const seq = extract_order(graph_of(t), t, TieBreakPolicy::lower_price_first("A1"));
  EXPECT_EQ(seq.order, (std::vector<std::string>{"R2", "R3", "R1"}));
  EXPECT_EQ(seq.tiebreak_log.size(), 2u);
}

TEST(ExtractOrder, RejectsGraphOfAnotherTender)
{
  auto const t = bt::four_bidder_tender();
  auto       g = graph_of(t);
  g.vertices.erase(Vertex{"R4", "A2"});
  EXPECT_THROW(extract_order(g, t, TieBreakPolicy::submission_index()), ValidationError);
  auto other = t;
  other.bids.pop_back();
  EXPECT_THROW(extract_order(graph_of(t), validate_tender(other), TieBreakPolicy::submission_index()),
               ValidationError);
}

TEST(ExtractOrder, AgreesWithOrderBids)
{
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i)
  {
    auto const t      = bt::random_tender(rng);
    auto const policy = bt::random_policy(rng, t);
    EXPECT_EQ(extract_order(graph_of(t), t, policy), order_bids(t, policy));
  }
}

TEST(ExportEdges, FourBidderListing)
{
  auto const text = export_edges(graph_of(bt::four_bidder_tender()));
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
  {
    lines.push_back(line);
  }
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
  EXPECT_EQ(std::count_if(lines.begin(), lines.end(), [](auto const &l) { return l.rfind("V ", 0) == 0; }), 12);
  EXPECT_NE(std::find(lines.begin(), lines.end(), "E3 R1@A1 -> R1@A3"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "E2 R2@A1 -- R3@A1"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "E1 R3@A1 -> R1@A1"), lines.end());
  EXPECT_EQ(text, export_edges(graph_of(bt::four_bidder_tender())));
}
