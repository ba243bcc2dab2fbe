#include "bideval/weights.hpp"

#include <algorithm>
#include <cmath>

namespace bideval {

namespace {

void require_finite_price(Money price)
{
  if (!price.is_finite())
  {
    throw NumericError("weight functions need finite prices");
  }
}

void require_finite_prices(std::span<Money const> prices)
{
  if (prices.empty())
  {
    throw NumericError("weight functions need at least one price");
  }
  for (auto const &p : prices)
  {
    require_finite_price(p);
  }
}

}  // namespace

double w_common(Money price, std::span<Money const> prices, CommonPractice const &spec)
{
  require_finite_price(price);
  Money const s = standard_price(prices, spec.standard);
  if (s <= Money{})
  {
    throw NumericError("standard price must be positive");
  }
  long double const rel = (price - s).to_long_double() / s.to_long_double();
  return static_cast<double>(-spec.varsigma * rel + spec.zeta);
}

double w_linear(Money price, std::span<Money const> prices, double p, double q)
{
  require_finite_price(price);
  require_finite_prices(prices);
  auto const [lo, hi] = std::minmax_element(prices.begin(), prices.end());
  if (*lo == *hi)
  {
    throw NumericError("linear weight needs distinct maximum and minimum prices");
  }
  long double const span = (*hi - *lo).to_long_double();
  return static_cast<double>(-p * (price - *lo).to_long_double() / span + q);
}

long double nonlinear_center(std::span<Money const> prices, NonlinearCenter center, Money pre_price)
{
  require_finite_prices(prices);
  require_finite_price(pre_price);
  if (pre_price <= Money{})
  {
    throw NumericError("pre-price must be positive");
  }
  long double const n = static_cast<long double>(prices.size() + 1);
  switch (center)
  {
  case NonlinearCenter::Arithmetic: {
    long double sum = pre_price.to_long_double();
    for (auto const &p : prices)
    {
      sum += p.to_long_double();
    }
    return sum / n;
  }
  case NonlinearCenter::Geometric: {
    long double logs = std::log(pre_price.to_long_double());
    for (auto const &p : prices)
    {
      if (p <= Money{})
      {
        throw NumericError("geometric centre needs positive prices");
      }
      logs += std::log(p.to_long_double());
    }
    return std::exp(logs / n);
  }
  case NonlinearCenter::Quadratic: {
    long double const t   = pre_price.to_long_double();
    long double       sum = t * t;
    for (auto const &p : prices)
    {
      sum += p.to_long_double() * p.to_long_double();
    }
    return std::sqrt(sum / n);
  }
  }
  throw NumericError("unknown nonlinear centre");
}

double w_nonlinear(Money price, std::span<Money const> prices, NonlinearCenter center, double p, double q,
                   Money pre_price)
{
  require_finite_price(price);
  long double const c = nonlinear_center(prices, center, pre_price);
  return static_cast<double>(-p * (price.to_long_double() - c) / c + q);
}

double w_polynomial(Money price, std::span<Money const> prices, PolynomialWeight const &spec)
{
  require_finite_price(price);
  require_finite_prices(prices);
  require_finite_price(spec.pre_price);

  std::vector<ScoredBidder> entries;
  entries.reserve(prices.size() + 1);
  for (std::size_t i = 0; i < prices.size(); ++i)
  {
    entries.push_back({std::to_string(i), i, prices[i].to_long_double()});
  }
  entries.push_back({"T", prices.size(), spec.pre_price.to_long_double()});
  std::stable_sort(entries.begin(), entries.end(), [](auto const &a, auto const &b) { return a.value < b.value; });

  std::vector<double> values;
  for (auto const &e : entries)
  {
    values.push_back(static_cast<double>(e.value));
  }
  auto const nodes = spec.nodes.empty() ? default_nodes(values.size()) : spec.nodes;
  auto const poly  = poly_fit(values, nodes);

  // Map each sorted position to the node of its class anchor.
  auto const classes = cluster_by_anchor(entries, Direction::LowerBetter, spec.difference_bound);
  std::size_t position = 0;
  for (auto const &cls : classes)
  {
    double const anchor_node = poly.nodes[position];
    for (std::size_t i = 0; i < cls.size(); ++i, ++position)
    {
      if (values[position] == price.to_double())
      {
        return anchor_node;
      }
    }
  }
  throw NumericError("price " + price.to_string() + " is not one of the fitted prices");
}

double evaluate_weight(WeightFunctionSpec const &spec, Money price, std::span<Money const> prices)
{
  return std::visit(
      [&](auto const &w) -> double {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, CommonPractice>)
        {
          return w_common(price, prices, w);
        }
        else if constexpr (std::is_same_v<W, LinearNM>)
        {
          return w_linear(price, prices, w.p, w.q);
        }
        else if constexpr (std::is_same_v<W, Nonlinear>)
        {
          return w_nonlinear(price, prices, w.center, w.p, w.q, w.pre_price);
        }
        else
        {
          return w_polynomial(price, prices, w);
        }
      },
      spec);
}

std::vector<double> default_nodes(std::size_t count)
{
  std::vector<double> nodes;
  nodes.reserve(count);
  for (std::size_t c = count; c >= 1; --c)
  {
    nodes.push_back(static_cast<double>(c));
  }
  return nodes;
}

PolyCoefficients poly_fit(std::span<double const> values, std::span<double const> nodes)
{
  std::size_t const n = values.size();
  if (n == 0 || nodes.size() != n)
  {
    throw NumericError("polynomial fit needs one node per value");
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    if (!std::isfinite(nodes[i]) || !std::isfinite(values[i]))
    {
      throw NumericError("polynomial fit needs finite nodes and values");
    }
    if (nodes[i] <= 0.0)
    {
      throw NumericError("polynomial nodes must be positive");
    }
    if (i > 0 && !(nodes[i] < nodes[i - 1]))
    {
      throw NumericError(nodes[i] == nodes[i - 1] ? "duplicate polynomial nodes"
                                                  : "polynomial nodes must be strictly decreasing");
    }
  }

  using Real = long double;
  std::vector<std::vector<Real>> vandermonde(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i)
  {
    Real power = 1.0L;
    for (std::size_t j = 0; j < n; ++j)
    {
      vandermonde[i][j] = power;
      power *= nodes[i];
    }
  }

  // LU with partial pivoting, reused for the refinement solve.
  auto lu = vandermonde;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    perm[i] = i;
  }
  Real scale = 0.0L;
  for (auto const &row : lu)
  {
    for (Real x : row)
    {
      scale = std::max(scale, std::fabs(x));
    }
  }
  Real const pivot_floor = scale * 1e-30L;
  for (std::size_t col = 0; col < n; ++col)
  {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
    {
      if (std::fabs(lu[r][col]) > std::fabs(lu[best][col]))
      {
        best = r;
      }
    }
    if (std::fabs(lu[best][col]) <= pivot_floor)
    {
      throw NumericError("polynomial system is singular");
    }
    std::swap(lu[col], lu[best]);
    std::swap(perm[col], perm[best]);
    for (std::size_t r = col + 1; r < n; ++r)
    {
      lu[r][col] /= lu[col][col];
      for (std::size_t c = col + 1; c < n; ++c)
      {
        lu[r][c] -= lu[r][col] * lu[col][c];
      }
    }
  }
  auto solve = [&](std::vector<Real> const &rhs) {
    std::vector<Real> x(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      Real sum = rhs[perm[i]];
      for (std::size_t j = 0; j < i; ++j)
      {
        sum -= lu[i][j] * x[j];
      }
      x[i] = sum;
    }
    for (std::size_t i = n; i-- > 0;)
    {
      Real sum = x[i];
      for (std::size_t j = i + 1; j < n; ++j)
      {
        sum -= lu[i][j] * x[j];
      }
      x[i] = sum / lu[i][i];
    }
    return x;
  };

  std::vector<Real> rhs(values.begin(), values.end());
  auto              coeffs = solve(rhs);
  std::vector<Real> residual(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    Real fitted = 0.0L;
    for (std::size_t j = 0; j < n; ++j)
    {
      fitted += vandermonde[i][j] * coeffs[j];
    }
    residual[i] = rhs[i] - fitted;
  }
  auto const correction = solve(residual);
  for (std::size_t j = 0; j < n; ++j)
  {
    coeffs[j] += correction[j];
  }

  PolyCoefficients poly;
  poly.nodes.assign(nodes.begin(), nodes.end());
  for (Real c : coeffs)
  {
    poly.coeffs.push_back(static_cast<double>(c));
  }

  double max_abs = 0.0;
  for (double v : values)
  {
    max_abs = std::max(max_abs, std::fabs(v));
  }
  double const limit = kPolyResidualTolerance * std::max(max_abs, 1.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (std::fabs(poly_eval(poly, nodes[i]) - values[i]) > limit)
    {
      throw NumericError("polynomial fit is ill-conditioned: node residual above tolerance");
    }
  }
  return poly;
}

double poly_eval(PolyCoefficients const &poly, double x)
{
  long double acc = 0.0L;
  for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it)
  {
    acc = acc * x + *it;
  }
  return static_cast<double>(acc);
}

RankTable::RankTable(std::vector<std::string> labels, std::map<std::string, std::map<std::string, double>> rows)
  : labels_(std::move(labels))
  , rows_(std::move(rows))
{
  if (labels_.empty())
  {
    throw ValidationError({Issue{"bad-rank-table", "", "", "rank table needs at least one label"}});
  }
  for (auto const &[index, marks] : rows_)
  {
    if (marks.size() != labels_.size())
    {
      throw ValidationError({Issue{"bad-rank-table", "", index, "row must give a mark for every label"}});
    }
    for (std::size_t i = 0; i < labels_.size(); ++i)
    {
      auto it = marks.find(labels_[i]);
      if (it == marks.end())
      {
        throw ValidationError({Issue{"bad-rank-table", "", index, "row has no mark for '" + labels_[i] + "'"}});
      }
      if (!std::isfinite(it->second) || it->second < 0.0)
      {
        throw ValidationError({Issue{"bad-rank-table", "", index, "marks must be finite and >= 0"}});
      }
      if (i > 0 && !(it->second < marks.at(labels_[i - 1])))
      {
        throw ValidationError({Issue{"bad-rank-table", "", index, "marks must strictly decrease from best to worst"}});
      }
    }
  }
}

double RankTable::mark(std::string const &index, std::string const &label) const
{
  auto row = rows_.find(index);
  if (row == rows_.end())
  {
    throw ValidationError({Issue{"unknown-index", "", index, "index not in rank table"}});
  }
  auto cell = row->second.find(label);
  if (cell == row->second.end())
  {
    throw ValidationError({Issue{"unknown-rank", "", index, "rank '" + label + "' not in rank table"}});
  }
  return cell->second;
}

double programming_weight(std::map<std::string, std::string> const &grades, RankTable const &table)
{
  double total = 0.0;
  for (auto const &[index, label] : grades)
  {
    total += table.mark(index, label);
  }
  return total;
}

WeightValidity validate_weight_function(WeightFunctionSpec const &spec, Tender const &tender,
                                        std::string const &item_name)
{
  auto const &item = tender.item(item_name);
  if (item.kind != ResponseKind::Price)
  {
    throw ValidationError({Issue{"bad-weight-item", "", item_name, "price weights apply to price items"}});
  }

  std::vector<Money> prices;
  for (auto const &bid : tender.bids)
  {
    prices.push_back(std::get<Price>(bid.response(item_name)).amount);
  }
  std::map<std::string, double> weight;
  for (std::size_t i = 0; i < tender.bids.size(); ++i)
  {
    weight[tender.bids[i].bidder] = evaluate_weight(spec, prices[i], prices);
  }

  auto const cls = classify_item(item, tender.bids);

  WeightValidity out;
  for (auto const &l : tender.bids)
  {
    for (auto const &s : tender.bids)
    {
      if (l.bidder == s.bidder)
      {
        continue;
      }
      auto const   cl = cls.class_of(l.bidder);
      auto const   cs = cls.class_of(s.bidder);
      double const wl = weight[l.bidder];
      double const ws = weight[s.bidder];
      if (cl < cs && !(wl > ws))
      {
        out.violations.push_back({l.bidder, s.bidder, LexOrder::Prec, wl, ws});
      }
      else if (cl == cs && l.submission_index < s.submission_index)
      {
        double const scale = std::max({std::fabs(wl), std::fabs(ws), 1.0});
        if (std::fabs(wl - ws) > kWeightEqualityTolerance * scale)
        {
          out.violations.push_back({l.bidder, s.bidder, LexOrder::Equiv, wl, ws});
        }
      }
    }
  }
  return out;
}

UnimodalCheck check_unimodal(std::function<double(double)> const &f, double a, double b, std::size_t grid)
{
  if (!(b > a) || grid < 3)
  {
    throw NumericError("unimodality check needs b > a and at least 3 grid points");
  }
  std::vector<double> xs(grid);
  std::vector<double> ys(grid);
  for (std::size_t i = 0; i < grid; ++i)
  {
    xs[i] = i + 1 == grid ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(grid - 1);
    ys[i] = f(xs[i]);
  }

  std::optional<std::size_t> peak;
  for (std::size_t i = 1; i < grid; ++i)
  {
    if (ys[i] < ys[i - 1] && !peak)
    {
      peak = i - 1;
    }
    else if (ys[i] > ys[i - 1] && peak)
    {
      return {false, std::array<double, 3>{xs[*peak], xs[i - 1], xs[i]}};
    }
  }
  return {};
}

}  // namespace bideval
