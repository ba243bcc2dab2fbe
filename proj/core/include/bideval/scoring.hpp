#pragma once

#include "bideval/ordering.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bideval {

// ---------------------------------------------------------------------------
// Qualification gating
// ---------------------------------------------------------------------------

struct QualificationRule
{
  std::vector<std::string> gated_items;
};

struct Disqualification
{
  std::string bidder;
  std::string item;
  std::string reason;

  bool operator==(Disqualification const &) const = default;
};

struct QualificationResult
{
  std::vector<Bid>              qualified;
  std::vector<Disqualification> disqualified;
};

/// A bid qualifies iff it passes every gated item; the reason names the first
/// gated item (in rule order) it fails. Gated items must be qualification items.
QualificationResult qualification_filter(Tender const &tender, QualificationRule const &rule);

// ---------------------------------------------------------------------------
// Standard price and price marks
// ---------------------------------------------------------------------------

struct PlainMean
{};

/// Drops the highest and lowest price when there are at least 5 bids; plain
/// mean for 3 or 4 bids.
struct TrimmedMean
{};

/// pre_price * a_pct% + mean * (1 - a_pct%).
struct Blended
{
  Money  pre_price;
  double a_pct = 0.0;
};

using StandardPriceSpec = std::variant<PlainMean, TrimmedMean, Blended>;

/// Rounded to the nearest hundredth (halves away from zero); the trimmed and
/// plain means are computed exactly in hundredths before rounding.
Money standard_price(std::span<Money const> prices, StandardPriceSpec const &spec);

struct PriceMarkParams
{
  double t_above = 6.0;
  double t_below = 3.0;
};

/// 100 - t * |price - S| / S * 100, with t = t_above above S and t_below
/// below it. Not clamped; S must be positive.
double price_mark(Money price, Money standard, PriceMarkParams const &params = {});

/// Settings for scoring the objective item through price marks instead of
/// classifying it by its own comparator.
struct PriceMarkScoring
{
  StandardPriceSpec standard = TrimmedMean{};
  PriceMarkParams   params;
  /// Marks within this distance of a class anchor are equivalent.
  double mark_tolerance = 0.0;
};

// ---------------------------------------------------------------------------
// Single objective
// ---------------------------------------------------------------------------

struct SingleObjectiveResult
{
  OrderedSequence               sequence;
  std::vector<Disqualification> disqualified;
  ItemClassification            classification;
  /// Present when the objective was scored by price marks.
  std::optional<Money>          standard;
  std::map<std::string, double> marks;
};

/// Gate by `rule`, then order the qualified bids on `objective` alone, with
/// `policy` breaking ties inside equivalent classes.
SingleObjectiveResult order_single_objective(Tender const &tender, QualificationRule const &rule,
                                             std::string const &objective, TieBreakPolicy const &policy,
                                             std::optional<PriceMarkScoring> const &scoring = std::nullopt);

// ---------------------------------------------------------------------------
// 100 marks
// ---------------------------------------------------------------------------

inline constexpr double kMarksCeiling = 100.0;
inline constexpr double kMarksEpsilon = 1e-9;

/// Sum of each bidder's component marks. Components must be >= 0. When
/// `declared_maxima` is given it describes the marking scale: its sum must not
/// exceed 100 and no component may exceed its declared maximum. Any total
/// above 100 is a configuration fault. Violations throw ValidationError.
std::vector<double> hundred_marks(std::span<std::vector<double> const> component_marks,
                                  std::span<double const>              declared_maxima = {});

// ---------------------------------------------------------------------------
// Lowest evaluated price
// ---------------------------------------------------------------------------

enum class DeviationSense
{
  AboveIsWorse,
  AboveIsBetter,
};

struct ConversionEntry
{
  double         standard_line = 0.0;
  Money          unit_value;
  DeviationSense sense = DeviationSense::AboveIsWorse;
};

/// Monetises deviations from per-item standard lines onto the bid price.
struct UnitConversion
{
  std::string                            price_item;
  std::map<std::string, ConversionEntry> entries;
};

struct LowestEvaluatedPriceResult
{
  std::map<std::string, Money> evaluated;
  OrderedSequence              sequence;
};

/// E = price + sum over quantity items of +/-(response - standard_line) *
/// unit_value, signed so that worse-than-standard raises E. The adjustment is
/// rounded to hundredths. Bids are ordered by ascending E; exact ties go to
/// `policy`.
LowestEvaluatedPriceResult lowest_evaluated_price(Tender const &tender, UnitConversion const &conversion,
                                                  TieBreakPolicy const &policy);

}  // namespace bideval
