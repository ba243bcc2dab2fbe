#include "bideval/graph.hpp"
#include "bideval/ordering.hpp"
#include "bideval/weights.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace bideval;

// Price, two quantities and a ranked item in three tiers, with coarse values
// so that equivalence classes and tie-breaks actually occur.
Tender synthetic_tender(std::size_t bidders, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  Tender t;
  t.id = "bench";
  t.items = {
      {"P", ResponseKind::Price, {Direction::LowerBetter, 0.0, {}}, {}, ""},
      {"Q1", ResponseKind::Quantity, {Direction::HigherBetter, 5.0, {}}, {}, ""},
      {"Q2", ResponseKind::Quantity, {Direction::LowerBetter, 0.0, {}}, {}, ""},
      {"G", ResponseKind::Rank, {Direction::OrdinalScale, 0.0, {"A", "B", "C", "D"}}, {}, ""},
  };
  t.precedence = ItemPrecedence{{{"G"}, {"P", "Q1"}, {"Q2"}}};
  std::uniform_int_distribution<int> price(3000, 3100);
  std::uniform_int_distribution<int> qty(0, 100);
  std::uniform_int_distribution<int> grade(0, 3);
  for (std::size_t b = 0; b < bidders; ++b)
  {
    Bid bid;
    bid.bidder           = "R" + std::to_string(b + 1);
    bid.submission_index = b;
    bid.responses["P"]   = Price{Money::from_units(price(rng))};
    bid.responses["Q1"]  = Quantity{static_cast<double>(qty(rng))};
    bid.responses["Q2"]  = Quantity{static_cast<double>(qty(rng) / 10)};
    bid.responses["G"]   = Rank{std::string(1, static_cast<char>('A' + grade(rng)))};
    t.bids.push_back(std::move(bid));
  }
  return validate_tender(std::move(t));
}

void BM_OrderBids(benchmark::State &state)
{
  auto const tender = synthetic_tender(static_cast<std::size_t>(state.range(0)), 1);
  auto const policy = TieBreakPolicy::lower_price_first("P");
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(order_bids(tender, policy));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OrderBids)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void BM_BuildGraph(benchmark::State &state)
{
  auto const tender  = synthetic_tender(static_cast<std::size_t>(state.range(0)), 2);
  auto const classes = classify_all(tender);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(build_graph(tender, classes, tender.precedence));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGraph)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_ExtractOrder(benchmark::State &state)
{
  auto const tender = synthetic_tender(static_cast<std::size_t>(state.range(0)), 3);
  auto const graph  = build_graph(tender, classify_all(tender), tender.precedence);
  auto const policy = TieBreakPolicy::lower_price_first("P");
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(extract_order(graph, tender, policy));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtractOrder)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_PolyFit(benchmark::State &state)
{
  auto const          n = static_cast<std::size_t>(state.range(0));
  std::vector<double> values(n);
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    values[i] = 3000.0 + 37.0 * static_cast<double>(i);
    nodes[i]  = static_cast<double>(n - i);
  }
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(poly_fit(values, nodes));
  }
}
BENCHMARK(BM_PolyFit)->DenseRange(2, 10, 2);

}  // namespace
BENCHMARK_MAIN();
