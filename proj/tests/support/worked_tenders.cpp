#include "worked_tenders.hpp"

namespace bideval::testing {

namespace {

EvaluationItem make_item(std::string name, ResponseKind kind, Direction dir, double tolerance = 0.0,
                         std::vector<std::string> scale = {})
{
  EvaluationItem item;
  item.name                 = std::move(name);
  item.kind                 = kind;
  item.comparator.direction = dir;
  item.comparator.tolerance = tolerance;
  item.comparator.scale     = std::move(scale);
  return item;
}

Bid make_bid(std::string bidder, std::size_t index, std::map<std::string, ResponseValue> responses)
{
  Bid bid;
  bid.bidder           = std::move(bidder);
  bid.submission_index = index;
  bid.responses        = std::move(responses);
  return bid;
}

}  // namespace

Tender four_bidder_tender()
{
  Tender t;
  t.id    = "four-bidder-lex";
  t.items = {
      make_item("A1", ResponseKind::Price, Direction::LowerBetter, 150),
      make_item("A2", ResponseKind::Rank, Direction::OrdinalScale, 0, {"A", "B", "C", "D"}),
      make_item("A3", ResponseKind::Quantity, Direction::HigherBetter, 40000),
  };
  t.precedence = parse_precedence("A1 > A3 > A2", t.item_names());

  struct Row
  {
    char const *bidder;
    int         price;
    char const *rank;
    double      area;
  };
  Row const rows[] = {{"R1", 3526, "B", 250806}, {"R2", 3166, "A", 210208}, {"R3", 3280, "A", 290108},
                      {"R4", 3486, "C", 300105}};
  std::size_t index = 0;
  for (auto const &r : rows)
  {
    t.bids.push_back(make_bid(r.bidder, index++,
                              {{"A1", Price{Money::from_units(r.price)}}, {"A2", Rank{r.rank}}, {"A3", Quantity{r.area}}}));
  }
  return validate_tender(std::move(t));
}

Tender design_tender()
{
  Tender t;
  t.id    = "design-qualified";
  t.items = {
      make_item("design", ResponseKind::Rank, Direction::OrdinalScale, 0, {"A", "B", "C", "D", "E"}),
      make_item("price", ResponseKind::Price, Direction::LowerBetter),
      make_item("staff", ResponseKind::Qualification, Direction::HigherBetter),
      make_item("period", ResponseKind::Qualification, Direction::HigherBetter),
      make_item("fee_norm", ResponseKind::Qualification, Direction::HigherBetter),
  };
  t.precedence = parse_precedence("design > price > staff ~ period ~ fee_norm", t.item_names());

  struct Row
  {
    char const *bidder;
    int         price;
    char const *design;
    bool        staff;
  };
  Row const rows[] = {{"R1", 251, "B", true}, {"R2", 304, "C", true}, {"R3", 268, "A", true},
                      {"R4", 265, "E", true}, {"R5", 272, "E", false}, {"R6", 283, "A", true},
                      {"R7", 278, "D", true}, {"R8", 296, "C", true}};
  std::size_t index = 0;
  for (auto const &r : rows)
  {
    t.bids.push_back(make_bid(r.bidder, index++,
                              {{"design", Rank{r.design}},
                               {"price", Price{Money::from_units(r.price)}},
                               {"staff", Qualification{r.staff}},
                               {"period", Qualification{true}},
                               {"fee_norm", Qualification{true}}}));
  }
  return validate_tender(std::move(t));
}

Tender price_mark_tender()
{
  Tender t;
  t.id    = "price-marks";
  t.items = {
      make_item("A1", ResponseKind::Price, Direction::LowerBetter),
      make_item("qualifications", ResponseKind::Qualification, Direction::HigherBetter),
      make_item("management", ResponseKind::Qualification, Direction::HigherBetter),
      make_item("equipment", ResponseKind::Qualification, Direction::HigherBetter),
  };
  t.precedence = parse_precedence("A1 > qualifications ~ management ~ equipment", t.item_names());

  int const prices[] = {3518, 3448, 3682, 3652, 3490, 3731, 3436};
  for (std::size_t j = 0; j < std::size(prices); ++j)
  {
    t.bids.push_back(make_bid("R" + std::to_string(j + 1), j,
                              {{"A1", Price{Money::from_units(prices[j])}},
                               {"qualifications", Qualification{true}},
                               {"management", Qualification{true}},
                               {"equipment", Qualification{true}}}));
  }
  return validate_tender(std::move(t));
}

RankTable programming_table()
{
  return RankTable({"A", "B", "C", "D"}, {
                                             {"a21", {{"A", 4}, {"B", 3}, {"C", 2}, {"D", 1}}},
                                             {"a22", {{"A", 2}, {"B", 1.5}, {"C", 1}, {"D", 0.5}}},
                                             {"a23", {{"A", 2}, {"B", 1.5}, {"C", 1}, {"D", 0.5}}},
                                             {"a24", {{"A", 1}, {"B", 0.8}, {"C", 0.5}, {"D", 0.3}}},
                                         });
}

}  // namespace bideval::testing
