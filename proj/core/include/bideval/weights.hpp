#pragma once

#include "bideval/ordering.hpp"
#include "bideval/scoring.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bideval {

// ---------------------------------------------------------------------------
// Price weight families
// ---------------------------------------------------------------------------

/// -varsigma * (price - S) / S + zeta, S taken from `standard`.
struct CommonPractice
{
  double            varsigma = 1.0;
  double            zeta     = 0.0;
  StandardPriceSpec standard = PlainMean{};
};

/// -p * (price - N) / (M - N) + q over the bid interval [N, M].
struct LinearNM
{
  double p = 1.0;
  double q = 0.0;
};

enum class NonlinearCenter
{
  Arithmetic,
  Geometric,
  Quadratic,
};

/// -p * (price - C) / C + q, C a mean of the bid prices and the pre-price.
struct Nonlinear
{
  NonlinearCenter center = NonlinearCenter::Arithmetic;
  double          p      = 1.0;
  double          q      = 0.0;
  Money           pre_price;
};

/// The interpolating polynomial through the sorted prices and pre-price.
/// A price's weight is the node at which the curve passes through it, so the
/// lowest price gets the largest node. Prices within `difference_bound` of a
/// lower price's node anchor share that node. Empty `nodes` means n, n-1, ... 1.
struct PolynomialWeight
{
  Money               pre_price;
  std::vector<double> nodes;
  double              difference_bound = 0.0;
};

using WeightFunctionSpec = std::variant<CommonPractice, LinearNM, Nonlinear, PolynomialWeight>;

double w_common(Money price, std::span<Money const> prices, CommonPractice const &spec);
double w_linear(Money price, std::span<Money const> prices, double p, double q);
long double nonlinear_center(std::span<Money const> prices, NonlinearCenter center, Money pre_price);
double w_nonlinear(Money price, std::span<Money const> prices, NonlinearCenter center, double p, double q,
                   Money pre_price);
double w_polynomial(Money price, std::span<Money const> prices, PolynomialWeight const &spec);

/// Dispatch over the variant.
double evaluate_weight(WeightFunctionSpec const &spec, Money price, std::span<Money const> prices);

// ---------------------------------------------------------------------------
// Polynomial fitting
// ---------------------------------------------------------------------------

/// coeffs[i] multiplies x^i.
struct PolyCoefficients
{
  std::vector<double> coeffs;
  std::vector<double> nodes;
};

/// n, n-1, ..., 1.
std::vector<double> default_nodes(std::size_t count);

inline constexpr double kPolyResidualTolerance = 1e-9;

/// Solves the Vandermonde system sum_j a_j c_i^j = v_i by Gaussian elimination
/// with partial pivoting (plus one refinement step). Nodes must be strictly
/// decreasing and positive. Throws NumericError if the system is singular or
/// a node residual exceeds kPolyResidualTolerance * max|v|.
PolyCoefficients poly_fit(std::span<double const> values, std::span<double const> nodes);

double poly_eval(PolyCoefficients const &poly, double x);

// ---------------------------------------------------------------------------
// Programming (rank-table) weights
// ---------------------------------------------------------------------------

/// Marks per evaluation index and rank label. Every row must list every label
/// and strictly decrease from the best label to the worst.
class RankTable
{
public:
  RankTable(std::vector<std::string> labels, std::map<std::string, std::map<std::string, double>> rows);

  std::vector<std::string> const &labels() const noexcept { return labels_; }
  std::map<std::string, std::map<std::string, double>> const &rows() const noexcept { return rows_; }

  double mark(std::string const &index, std::string const &label) const;

private:
  std::vector<std::string>                             labels_;
  std::map<std::string, std::map<std::string, double>> rows_;
};

/// Sum of the table marks for each graded index.
double programming_weight(std::map<std::string, std::string> const &grades, RankTable const &table);

// ---------------------------------------------------------------------------
// Validity checks
// ---------------------------------------------------------------------------

inline constexpr double kWeightEqualityTolerance = 1e-9;

struct WeightViolation
{
  std::string better;  ///< preferred (or, for Equiv, first by submission) bidder
  std::string worse;
  LexOrder    relation = LexOrder::Prec;
  double      better_weight = 0.0;
  double      worse_weight  = 0.0;
};

struct WeightValidity
{
  std::vector<WeightViolation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

/// Checks on the tender's actual responses to price item `item` that the
/// weight strictly increases along the item's order and is constant (to
/// kWeightEqualityTolerance, relative) inside each equivalence class. Every
/// violating pair is reported.
WeightValidity validate_weight_function(WeightFunctionSpec const &spec, Tender const &tender,
                                        std::string const &item);

struct UnimodalCheck
{
  bool                                 unimodal = true;
  std::optional<std::array<double, 3>> counterexample;  ///< peak, valley, rise
};

/// Samples `f` at `grid` evenly spaced points of [a, b] and reports the first
/// rise that follows a fall. A necessary condition for a single maximum.
UnimodalCheck check_unimodal(std::function<double(double)> const &f, double a, double b, std::size_t grid);

}  // namespace bideval
