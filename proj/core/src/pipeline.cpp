#include "bideval/pipeline.hpp"

#include <algorithm>

namespace bideval {

std::string_view to_string(Method method) noexcept
{
  switch (method)
  {
  case Method::Lex:
    return "lex";
  case Method::Graph:
    return "graph";
  case Method::SingleObjective:
    return "single-objective";
  case Method::HundredMarks:
    return "hundred-marks";
  case Method::LowestEvaluatedPrice:
    return "lowest-evaluated-price";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) noexcept
{
  for (auto m : {Method::Lex, Method::Graph, Method::SingleObjective, Method::HundredMarks,
                 Method::LowestEvaluatedPrice})
  {
    if (to_string(m) == text)
    {
      return m;
    }
  }
  return std::nullopt;
}

namespace {

constexpr char kTotalKey[] = "total-marks";

void expect_kind(Tender const &tender, std::string const &item, ResponseKind kind, std::string const &what,
                 std::vector<Issue> &issues)
{
  auto const *found = tender.find_item(item);
  if (found == nullptr)
  {
    issues.push_back({"unknown-item", "", item, what + " names an item the tender lacks"});
  }
  else if (found->kind != kind)
  {
    issues.push_back({"bad-item-type", "", item,
                      what + " needs a " + std::string(to_string(kind)) + " item, found " +
                          std::string(to_string(found->kind))});
  }
}

void check_component(Tender const &tender, MarkComponent const &component, std::vector<Issue> &issues)
{
  std::string const what = "component '" + component.name + "'";
  std::visit(
      [&](auto const &source) {
        using S = std::decay_t<decltype(source)>;
        if constexpr (std::is_same_v<S, PriceWeightSource> || std::is_same_v<S, PriceMarkSource>)
        {
          expect_kind(tender, component.item, ResponseKind::Price, what, issues);
        }
        else if constexpr (std::is_same_v<S, RankMarksSource>)
        {
          expect_kind(tender, component.item, ResponseKind::Rank, what, issues);
          if (auto const *item = tender.find_item(component.item))
          {
            for (auto const &label : item->comparator.scale)
            {
              if (!source.marks.count(label))
              {
                issues.push_back({"missing-rank-mark", "", component.item, what + " has no mark for '" + label + "'"});
              }
            }
          }
        }
        else if constexpr (std::is_same_v<S, ProgrammingSource>)
        {
          auto const *item = tender.find_item(component.item);
          if (item == nullptr)
          {
            issues.push_back({"unknown-item", "", component.item, what + " names an item the tender lacks"});
          }
          else if (item->indexes.empty())
          {
            issues.push_back({"no-indexes", "", component.item, what + " needs an item with evaluation indexes"});
          }
        }
        else
        {
          expect_kind(tender, component.item, ResponseKind::Quantity, what, issues);
        }
      },
      component.source);
}

}  // namespace

std::vector<Issue> check_config(Tender const &tender, EvaluationConfig const &config)
{
  std::vector<Issue> issues;
  if (config.top_n < 1)
  {
    issues.push_back({"bad-top-n", "", "", "top_n must be >= 1"});
  }
  try
  {
    check_policy(tender, config.tiebreak);
  }
  catch (ValidationError const &e)
  {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }

  switch (config.method)
  {
  case Method::Lex:
  case Method::Graph:
    break;
  case Method::SingleObjective:
    if (!config.single_objective)
    {
      issues.push_back({"missing-parameters", "", "", "single-objective needs an objective"});
      break;
    }
    if (!tender.find_item(config.single_objective->objective))
    {
      issues.push_back({"unknown-item", "", config.single_objective->objective, "objective item does not exist"});
    }
    else if (config.single_objective->price_marks)
    {
      expect_kind(tender, config.single_objective->objective, ResponseKind::Price, "price-mark objective", issues);
    }
    for (auto const &gate : config.single_objective->qualification.gated_items)
    {
      expect_kind(tender, gate, ResponseKind::Qualification, "qualification gate", issues);
    }
    break;
  case Method::HundredMarks: {
    if (!config.hundred_marks || config.hundred_marks->components.empty())
    {
      issues.push_back({"missing-parameters", "", "", "hundred-marks needs at least one component"});
      break;
    }
    auto const &components = config.hundred_marks->components;
    auto const  declared   = std::count_if(components.begin(), components.end(),
                                           [](auto const &c) { return c.max_marks.has_value(); });
    if (declared != 0 && static_cast<std::size_t>(declared) != components.size())
    {
      issues.push_back({"partial-scale", "", "", "declare max marks on every component or on none"});
    }
    for (auto const &component : components)
    {
      check_component(tender, component, issues);
    }
    break;
  }
  case Method::LowestEvaluatedPrice:
    if (!config.lowest_evaluated_price)
    {
      issues.push_back({"missing-parameters", "", "", "lowest-evaluated-price needs a price item and conversions"});
      break;
    }
    expect_kind(tender, config.lowest_evaluated_price->price_item, ResponseKind::Price, "evaluated price", issues);
    break;
  }
  return issues;
}

TenderGraph tender_graph(Tender const &tender)
{
  return build_graph(tender, classify_all(tender), tender.precedence);
}

CrossCheckResult cross_check(Tender const &tender, TieBreakPolicy const &policy)
{
  return {order_bids(tender, policy), extract_order(tender_graph(tender), tender, policy)};
}

namespace {

std::vector<double> component_column(Tender const &tender, MarkComponent const &component)
{
  std::vector<Money> prices;
  auto const        &item = tender.item(component.item);
  if (item.kind == ResponseKind::Price)
  {
    for (auto const &bid : tender.bids)
    {
      prices.push_back(std::get<Price>(bid.response(item.name)).amount);
    }
  }

  std::vector<double> column;
  column.reserve(tender.bids.size());
  std::optional<Money> standard;
  for (std::size_t b = 0; b < tender.bids.size(); ++b)
  {
    auto const &bid = tender.bids[b];
    column.push_back(std::visit(
        [&](auto const &source) -> double {
          using S = std::decay_t<decltype(source)>;
          if constexpr (std::is_same_v<S, PriceWeightSource>)
          {
            return evaluate_weight(source.weight, prices[b], prices);
          }
          else if constexpr (std::is_same_v<S, PriceMarkSource>)
          {
            if (!standard)
            {
              standard = standard_price(prices, source.standard);
            }
            return price_mark(prices[b], *standard, source.params) * source.factor;
          }
          else if constexpr (std::is_same_v<S, RankMarksSource>)
          {
            return source.marks.at(std::get<Rank>(bid.response(item.name)).grade);
          }
          else if constexpr (std::is_same_v<S, ProgrammingSource>)
          {
            auto it = bid.index_grades.find(item.name);
            if (it == bid.index_grades.end())
            {
              throw ValidationError({Issue{"missing-index-grades", bid.bidder, item.name,
                                           "bid has no per-index grades for this item"}});
            }
            return programming_weight(it->second, source.table);
          }
          else
          {
            return std::get<Quantity>(bid.response(item.name)).amount;
          }
        },
        component.source));
  }
  return column;
}

}  // namespace

EvaluationReport run_evaluate(Tender const &tender, EvaluationConfig const &config)
{
  if (auto issues = check_config(tender, config); !issues.empty())
  {
    throw ValidationError(std::move(issues));
  }

  EvaluationReport report;
  report.tender_id  = tender.id;
  report.money_unit = tender.money_unit;
  report.method     = config.method;
  report.top_n      = config.top_n;

  switch (config.method)
  {
  case Method::Lex:
    report.sequence = order_bids(tender, config.tiebreak);
    break;
  case Method::Graph:
    report.sequence = extract_order(tender_graph(tender), tender, config.tiebreak);
    break;
  case Method::SingleObjective: {
    auto const &so  = *config.single_objective;
    auto        res = order_single_objective(tender, so.qualification, so.objective, config.tiebreak, so.price_marks);
    report.sequence          = std::move(res.sequence);
    report.disqualifications = std::move(res.disqualified);
    report.standard_price    = res.standard;
    report.marks             = std::move(res.marks);
    break;
  }
  case Method::HundredMarks: {
    auto const &hm = *config.hundred_marks;
    std::vector<std::vector<double>> rows(tender.bids.size());
    std::vector<double>              maxima;
    for (auto const &component : hm.components)
    {
      report.component_names.push_back(component.name);
      if (component.max_marks)
      {
        maxima.push_back(*component.max_marks);
      }
      auto const column = component_column(tender, component);
      for (std::size_t b = 0; b < rows.size(); ++b)
      {
        rows[b].push_back(column[b]);
      }
    }
    auto const totals = hundred_marks(rows, maxima);

    std::vector<ScoredBidder> scored;
    for (std::size_t b = 0; b < tender.bids.size(); ++b)
    {
      auto const &bid = tender.bids[b];
      report.marks[bid.bidder]           = totals[b];
      report.component_marks[bid.bidder] = rows[b];
      scored.push_back({bid.bidder, bid.submission_index, totals[b]});
    }
    Classifications classes;
    classes.emplace(kTotalKey,
                    ItemClassification{kTotalKey, cluster_by_anchor(std::move(scored), Direction::HigherBetter,
                                                                    hm.tolerance)});
    report.sequence = merge_lexicographic(tender, classes, ItemPrecedence{{{kTotalKey}}}, config.tiebreak);
    break;
  }
  case Method::LowestEvaluatedPrice: {
    auto res = lowest_evaluated_price(tender, *config.lowest_evaluated_price, config.tiebreak);
    report.sequence         = std::move(res.sequence);
    report.evaluated_prices = std::move(res.evaluated);
    break;
  }
  }

  report.pre_successful = pre_successful(report.sequence, config.top_n);
  return report;
}

}  // namespace bideval
