#include "bideval/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace bideval {

namespace {

__extension__ using Wide = __int128;

// num / den rounded to nearest, halves away from zero. den > 0.
std::int64_t div_round(Wide num, Wide den)
{
  Wide const q = num / den;
  Wide const r = num % den;
  Wide const twice = (r < 0 ? -r : r) * 2;
  if (twice >= den)
  {
    return static_cast<std::int64_t>(num < 0 ? q - 1 : q + 1);
  }
  return static_cast<std::int64_t>(q);
}

Money round_to_money(long double value)
{
  if (std::isnan(value))
  {
    throw NumericError("amount is NaN");
  }
  return Money::from_double(static_cast<double>(value));
}

void require_finite(std::span<Money const> prices)
{
  for (auto const &p : prices)
  {
    if (!p.is_finite())
    {
      throw NumericError("standard price needs finite prices");
    }
  }
}

Wide sum_cents(std::span<Money const> prices)
{
  Wide total = 0;
  for (auto const &p : prices)
  {
    total += p.cents();
  }
  return total;
}

constexpr char kEvaluatedKey[] = "evaluated-price";

}  // namespace

QualificationResult qualification_filter(Tender const &tender, QualificationRule const &rule)
{
  for (auto const &name : rule.gated_items)
  {
    if (tender.item(name).kind != ResponseKind::Qualification)
    {
      throw ValidationError({Issue{"bad-gate", "", name, "gated item must carry qualification responses"}});
    }
  }

  QualificationResult result;
  for (auto const &bid : tender.bids)
  {
    std::optional<std::string> failed;
    for (auto const &name : rule.gated_items)
    {
      auto const *q = std::get_if<Qualification>(&bid.response(name));
      if (q == nullptr)
      {
        throw ValidationError({Issue{"bad-gate", bid.bidder, name, "response is not a qualification"}});
      }
      if (!q->pass)
      {
        failed = name;
        break;
      }
    }
    if (failed)
    {
      auto const &label = tender.item(*failed).label;
      result.disqualified.push_back(
          {bid.bidder, *failed, "failed qualification on " + (label.empty() ? *failed : label)});
    }
    else
    {
      result.qualified.push_back(bid);
    }
  }
  return result;
}

Money standard_price(std::span<Money const> prices, StandardPriceSpec const &spec)
{
  if (prices.empty())
  {
    throw NumericError("standard price of an empty price list");
  }
  require_finite(prices);
  auto const k = static_cast<Wide>(prices.size());

  if (std::holds_alternative<PlainMean>(spec))
  {
    return Money::from_cents(div_round(sum_cents(prices), k));
  }
  if (std::holds_alternative<TrimmedMean>(spec))
  {
    if (prices.size() < 3)
    {
      throw NumericError("trimmed mean needs at least 3 prices");
    }
    if (prices.size() <= 4)
    {
      return Money::from_cents(div_round(sum_cents(prices), k));
    }
    auto const [lo, hi] = std::minmax_element(prices.begin(), prices.end());
    return Money::from_cents(div_round(sum_cents(prices) - lo->cents() - hi->cents(), k - 2));
  }

  auto const &blend = std::get<Blended>(spec);
  if (!blend.pre_price.is_finite() || blend.pre_price <= Money{})
  {
    throw NumericError("blended standard price needs a positive pre-price");
  }
  if (!(blend.a_pct >= 0.0 && blend.a_pct <= 100.0))
  {
    throw NumericError("blended standard price needs 0 <= A% <= 100");
  }
  long double const share = static_cast<long double>(blend.a_pct) / 100.0L;
  long double const mean  = static_cast<long double>(sum_cents(prices)) / static_cast<long double>(k) / 100.0L;
  return round_to_money(blend.pre_price.to_long_double() * share + mean * (1.0L - share));
}

double price_mark(Money price, Money standard, PriceMarkParams const &params)
{
  if (!standard.is_finite() || standard <= Money{})
  {
    throw NumericError("price mark needs a positive standard price");
  }
  if (!price.is_finite())
  {
    throw NumericError("price mark needs a finite price");
  }
  if (!(params.t_above > 0.0) || !(params.t_below > 0.0))
  {
    throw NumericError("price mark coefficients must be positive");
  }
  auto const diff = price.cents() - standard.cents();
  if (diff == 0)
  {
    return 100.0;
  }
  long double const deviation = static_cast<long double>(diff) / static_cast<long double>(standard.cents());
  long double const t         = diff > 0 ? params.t_above : params.t_below;
  return static_cast<double>(100.0L - t * std::fabs(deviation) * 100.0L);
}

SingleObjectiveResult order_single_objective(Tender const &tender, QualificationRule const &rule,
                                             std::string const &objective, TieBreakPolicy const &policy,
                                             std::optional<PriceMarkScoring> const &scoring)
{
  auto const &item = tender.item(objective);
  check_policy(tender, policy);

  auto gate = qualification_filter(tender, rule);

  SingleObjectiveResult result;
  result.disqualified = std::move(gate.disqualified);

  Tender qualified = tender;
  qualified.bids   = std::move(gate.qualified);

  if (scoring)
  {
    if (item.kind != ResponseKind::Price)
    {
      throw ValidationError({Issue{"bad-objective", "", objective, "price-mark scoring needs a price item"}});
    }
    if (!qualified.bids.empty())
    {
      std::vector<Money> prices;
      for (auto const &bid : qualified.bids)
      {
        prices.push_back(std::get<Price>(bid.response(objective)).amount);
      }
      result.standard = standard_price(prices, scoring->standard);

      std::vector<ScoredBidder> scored;
      for (auto const &bid : qualified.bids)
      {
        double const mark =
            price_mark(std::get<Price>(bid.response(objective)).amount, *result.standard, scoring->params);
        result.marks[bid.bidder] = mark;
        scored.push_back({bid.bidder, bid.submission_index, mark});
      }
      result.classification = {objective, cluster_by_anchor(std::move(scored), Direction::HigherBetter,
                                                            scoring->mark_tolerance)};
    }
    else
    {
      result.classification = {objective, {}};
    }
  }
  else
  {
    result.classification = classify_item(item, qualified.bids);
  }

  Classifications classes;
  classes.emplace(objective, result.classification);
  result.sequence = merge_lexicographic(qualified, classes, ItemPrecedence{{{objective}}}, policy);
  return result;
}

std::vector<double> hundred_marks(std::span<std::vector<double> const> component_marks,
                                  std::span<double const>              declared_maxima)
{
  if (!declared_maxima.empty())
  {
    double scale = 0.0;
    for (double m : declared_maxima)
    {
      if (!std::isfinite(m) || m < 0.0)
      {
        throw ValidationError({Issue{"bad-scale", "", "", "declared component maxima must be finite and >= 0"}});
      }
      scale += m;
    }
    if (scale > kMarksCeiling + kMarksEpsilon)
    {
      throw ValidationError({Issue{"scale-exceeds-100", "", "",
                                   "declared component maxima sum to more than 100"}});
    }
  }

  std::vector<double> totals;
  totals.reserve(component_marks.size());
  for (std::size_t b = 0; b < component_marks.size(); ++b)
  {
    auto const &marks = component_marks[b];
    if (!declared_maxima.empty() && marks.size() != declared_maxima.size())
    {
      throw ValidationError({Issue{"bad-components", std::to_string(b), "", "component count differs from scale"}});
    }
    double total = 0.0;
    for (std::size_t c = 0; c < marks.size(); ++c)
    {
      if (!std::isfinite(marks[c]) || marks[c] < 0.0)
      {
        throw ValidationError({Issue{"negative-component", std::to_string(b), std::to_string(c),
                                     "component marks must be finite and >= 0"}});
      }
      if (!declared_maxima.empty() && marks[c] > declared_maxima[c] + kMarksEpsilon)
      {
        throw ValidationError({Issue{"component-exceeds-max", std::to_string(b), std::to_string(c),
                                     "component mark above its declared maximum"}});
      }
      total += marks[c];
    }
    if (total > kMarksCeiling + kMarksEpsilon)
    {
      throw ValidationError({Issue{"total-exceeds-100", std::to_string(b), "", "total marks above 100"}});
    }
    totals.push_back(total);
  }
  return totals;
}

LowestEvaluatedPriceResult lowest_evaluated_price(Tender const &tender, UnitConversion const &conversion,
                                                  TieBreakPolicy const &policy)
{
  auto const &price_item = tender.item(conversion.price_item);
  if (price_item.kind != ResponseKind::Price)
  {
    throw ValidationError({Issue{"bad-price-item", "", price_item.name, "evaluated price needs a price item"}});
  }
  check_policy(tender, policy);

  std::vector<Issue> issues;
  for (auto const &item : tender.items)
  {
    if (item.kind == ResponseKind::Quantity && !conversion.entries.count(item.name))
    {
      issues.push_back({"missing-conversion", "", item.name, "quantity item has no conversion entry"});
    }
  }
  for (auto const &[name, entry] : conversion.entries)
  {
    auto const *item = tender.find_item(name);
    if (item == nullptr || item->kind != ResponseKind::Quantity)
    {
      issues.push_back({"bad-conversion", "", name, "conversion entries apply to quantity items only"});
    }
    if (!entry.unit_value.is_finite() || !std::isfinite(entry.standard_line))
    {
      issues.push_back({"bad-conversion", "", name, "standard line and unit value must be finite"});
    }
  }
  if (!issues.empty())
  {
    throw ValidationError(std::move(issues));
  }

  LowestEvaluatedPriceResult result;
  std::vector<std::pair<Money, Bid const *>> evaluated;
  for (auto const &bid : tender.bids)
  {
    Money const price = std::get<Price>(bid.response(price_item.name)).amount;
    long double adjustment = 0.0L;
    for (auto const &[name, entry] : conversion.entries)
    {
      long double const response = std::get<Quantity>(bid.response(name)).amount;
      long double const sign     = entry.sense == DeviationSense::AboveIsWorse ? 1.0L : -1.0L;
      adjustment += sign * (response - entry.standard_line) * entry.unit_value.to_long_double();
    }
    if (std::isnan(adjustment))
    {
      throw NumericError("evaluated price of " + bid.bidder + " is undefined");
    }
    Money value;
    if (!price.is_finite() || std::isinf(adjustment))
    {
      long double const total = price.to_long_double() + adjustment;
      if (std::isnan(total))
      {
        throw NumericError("evaluated price of " + bid.bidder + " is undefined");
      }
      value = total > 0 ? Money::infinity() : Money::neg_infinity();
    }
    else
    {
      value = price + round_to_money(adjustment);
    }
    result.evaluated[bid.bidder] = value;
    evaluated.emplace_back(value, &bid);
  }

  std::stable_sort(evaluated.begin(), evaluated.end(), [](auto const &a, auto const &b) {
    return a.first != b.first ? a.first < b.first : a.second->submission_index < b.second->submission_index;
  });
  ItemClassification cls{kEvaluatedKey, {}};
  for (std::size_t i = 0; i < evaluated.size(); ++i)
  {
    if (i == 0 || evaluated[i].first != evaluated[i - 1].first)
    {
      cls.classes.emplace_back();
    }
    cls.classes.back().push_back(evaluated[i].second->bidder);
  }

  Classifications classes;
  classes.emplace(kEvaluatedKey, std::move(cls));
  result.sequence = merge_lexicographic(tender, classes, ItemPrecedence{{{kEvaluatedKey}}}, policy);
  return result;
}

}  // namespace bideval
