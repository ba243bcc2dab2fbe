#pragma once

#include "bideval/graph.hpp"
#include "bideval/ordering.hpp"
#include "bideval/scoring.hpp"
#include "bideval/weights.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bideval {

enum class Method
{
  Lex,
  Graph,
  SingleObjective,
  HundredMarks,
  LowestEvaluatedPrice,
};

std::string_view      to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view text) noexcept;

struct SingleObjectiveConfig
{
  std::string                     objective;
  QualificationRule               qualification;
  std::optional<PriceMarkScoring> price_marks;
};

// Sources for one column of a 100-marks evaluation.

/// A price weight function evaluated over the tender's prices on the item.
struct PriceWeightSource
{
  WeightFunctionSpec weight;
};

/// price_mark against the standard price, times `factor`.
struct PriceMarkSource
{
  StandardPriceSpec standard = TrimmedMean{};
  PriceMarkParams   params;
  double            factor = 1.0;
};

/// Fixed marks per grade of a rank item.
struct RankMarksSource
{
  std::map<std::string, double> marks;
};

/// Per-index grades summed through a rank table.
struct ProgrammingSource
{
  RankTable table;
};

/// The quantity response taken as a mark.
struct DirectSource
{};

using MarkSource = std::variant<PriceWeightSource, PriceMarkSource, RankMarksSource, ProgrammingSource, DirectSource>;

struct MarkComponent
{
  std::string           name;
  std::string           item;
  MarkSource            source;
  std::optional<double> max_marks;
};

struct HundredMarksConfig
{
  std::vector<MarkComponent> components;
  /// Totals within this distance of a class anchor are equivalent.
  double tolerance = 0.0;
};

struct EvaluationConfig
{
  Method         method = Method::Lex;
  TieBreakPolicy tiebreak;
  std::size_t    top_n = 3;

  std::optional<SingleObjectiveConfig> single_objective;
  std::optional<HundredMarksConfig>    hundred_marks;
  std::optional<UnitConversion>        lowest_evaluated_price;
};

/// Every reason `config` cannot run against `tender` (missing method
/// parameters, unknown items, wrong item types). Empty means runnable.
std::vector<Issue> check_config(Tender const &tender, EvaluationConfig const &config);

struct EvaluationReport
{
  std::string tender_id;
  std::string money_unit;
  Method      method = Method::Lex;
  std::size_t top_n  = 3;

  OrderedSequence               sequence;
  std::vector<std::string>      pre_successful;
  std::vector<Disqualification> disqualifications;

  std::optional<Money>          standard_price;
  std::map<std::string, double> marks;
  std::map<std::string, Money>  evaluated_prices;

  std::vector<std::string>                    component_names;
  std::map<std::string, std::vector<double>> component_marks;
};

/// Runs the configured method. Deterministic for fixed inputs.
EvaluationReport run_evaluate(Tender const &tender, EvaluationConfig const &config);

struct CrossCheckResult
{
  OrderedSequence lex;
  OrderedSequence graph;

  bool agree() const { return lex == graph; }
};

/// Orders the tender both lexicographically and through its graph.
CrossCheckResult cross_check(Tender const &tender, TieBreakPolicy const &policy);

/// The tender's graph under its own classifications and precedence.
TenderGraph tender_graph(Tender const &tender);

enum class ReportFormat
{
  Text,
  Machine,
};

/// Text: fixed section order, reals to 2 decimals, empty sections omitted.
/// Machine: JSON with sorted keys, money as decimal strings, reals at full
/// round-trip precision. Both end in a newline.
std::string emit_report(EvaluationReport const &report, ReportFormat format);

}  // namespace bideval
