#pragma once

#include "bideval/errors.hpp"
#include "bideval/money.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bideval {

// ---------------------------------------------------------------------------
// Responses
// ---------------------------------------------------------------------------

struct Price
{
  Money amount;
  bool  operator==(Price const &) const = default;
};

/// Real amount in the item's declared unit; +/-infinity allowed.
struct Quantity
{
  double amount = 0.0;
  bool   operator==(Quantity const &) const = default;
};

/// Grade drawn from the item's declared scale.
struct Rank
{
  std::string grade;
  bool        operator==(Rank const &) const = default;
};

/// Committee placing; 1 is best, equal positions are equivalent.
struct CommitteeOrdinal
{
  unsigned position = 1;
  bool     operator==(CommitteeOrdinal const &) const = default;
};

struct Qualification
{
  bool pass = true;
  bool operator==(Qualification const &) const = default;
};

using ResponseValue = std::variant<Price, Quantity, Rank, CommitteeOrdinal, Qualification>;

enum class ResponseKind
{
  Price,
  Quantity,
  Rank,
  Committee,
  Qualification,
};

ResponseKind     kind_of(ResponseValue const &value) noexcept;
std::string_view to_string(ResponseKind kind) noexcept;
std::optional<ResponseKind> parse_response_kind(std::string_view text) noexcept;

/// Numeric view of a Price or Quantity response; nullopt for the others.
std::optional<long double> numeric_value(ResponseValue const &value) noexcept;

// ---------------------------------------------------------------------------
// Items and comparators
// ---------------------------------------------------------------------------

enum class Direction
{
  LowerBetter,
  HigherBetter,
  OrdinalScale,
  Committee,
};

std::string_view         to_string(Direction direction) noexcept;
std::optional<Direction> parse_direction(std::string_view text) noexcept;

/// How responses on one item are ordered, and when two of them count as
/// equivalent. `tolerance` applies to numeric directions only; 0 means exact
/// equality. `scale` lists ordinal labels best first.
struct Comparator
{
  Direction                direction = Direction::LowerBetter;
  double                   tolerance = 0.0;
  std::vector<std::string> scale;

  bool operator==(Comparator const &) const = default;
};

struct EvaluationItem
{
  std::string              name;
  ResponseKind             kind = ResponseKind::Price;
  Comparator               comparator;
  std::vector<std::string> indexes;
  std::string              label;

  bool operator==(EvaluationItem const &) const = default;
};

/// Tiers of equal-priority items, most important tier first.
struct ItemPrecedence
{
  std::vector<std::vector<std::string>> tiers;

  std::size_t tier_of(std::string_view item) const;
  std::string to_string() const;

  bool operator==(ItemPrecedence const &) const = default;
};

/// Parses "A1 > A2 ~ A3 > A4". `>` separates tiers (strict precedence), `~`
/// joins equal-priority items; the typographic forms U+227B and U+2248 are
/// accepted too. Item order inside a tier is normalised to `items` order.
ItemPrecedence parse_precedence(std::string_view expr, std::vector<std::string> const &items);

// ---------------------------------------------------------------------------
// Bids and tenders
// ---------------------------------------------------------------------------

struct Bid
{
  std::string                          bidder;
  std::size_t                          submission_index = 0;
  std::map<std::string, ResponseValue> responses;
  /// Per-index grades for items evaluated index by index
  /// (item -> index -> grade).
  std::map<std::string, std::map<std::string, std::string>> index_grades;

  ResponseValue const &response(std::string const &item) const;

  bool operator==(Bid const &) const = default;
};

struct Tender
{
  std::string                 id;
  std::string                 money_unit;
  std::vector<EvaluationItem> items;
  ItemPrecedence              precedence;
  std::vector<Bid>            bids;

  EvaluationItem const *find_item(std::string_view name) const noexcept;
  EvaluationItem const &item(std::string_view name) const;
  Bid const            *find_bid(std::string_view bidder) const noexcept;
  std::vector<std::string> item_names() const;
  std::vector<std::string> bidder_names() const;

  bool operator==(Tender const &) const = default;
};

/// Every invariant violation in `tender`, in a stable order. Empty means valid.
std::vector<Issue> check_tender(Tender const &tender);

/// Returns `tender` unchanged if it is valid, otherwise throws ValidationError
/// listing all violations.
Tender validate_tender(Tender tender);

}  // namespace bideval
