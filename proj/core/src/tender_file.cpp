#include "bideval/tender_file.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace bideval {

namespace {

using nlohmann::json;

class Reader
{
public:
  explicit Reader(std::string source)
    : source_(std::move(source))
  {}

  [[noreturn]] void fail(std::string const &path, std::string const &what) const
  {
    throw ParseError(source_ + ":" + (path.empty() ? "/" : path), what);
  }

  json const &require(json const &obj, char const *key, std::string const &path) const
  {
    if (!obj.is_object())
    {
      fail(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end())
    {
      fail(path + "/" + key, "required field is missing");
    }
    return *it;
  }

  json const *optional(json const &obj, char const *key) const
  {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  void allow_only(json const &obj, std::initializer_list<std::string_view> keys, std::string const &path) const
  {
    if (!obj.is_object())
    {
      fail(path, "expected an object");
    }
    for (auto const &[key, value] : obj.items())
    {
      if (key == "note")
      {
        continue;
      }
      bool known = false;
      for (auto k : keys)
      {
        known = known || k == key;
      }
      if (!known)
      {
        fail(path + "/" + key, "unknown field");
      }
    }
  }

  std::string string(json const &v, std::string const &path) const
  {
    if (!v.is_string())
    {
      fail(path, "expected a string");
    }
    return v.get<std::string>();
  }

  double number(json const &v, std::string const &path) const
  {
    if (v.is_number())
    {
      return v.get<double>();
    }
    if (v.is_string())
    {
      auto const s = v.get<std::string>();
      if (s == "inf" || s == "+inf")
      {
        return std::numeric_limits<double>::infinity();
      }
      if (s == "-inf")
      {
        return -std::numeric_limits<double>::infinity();
      }
    }
    fail(path, "expected a number");
  }

  std::size_t natural(json const &v, std::string const &path) const
  {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    {
      fail(path, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  Money money(json const &v, std::string const &path) const
  {
    try
    {
      if (v.is_number_integer())
      {
        return Money::parse(std::to_string(v.get<std::int64_t>()));
      }
      if (v.is_number_float())
      {
        return Money::from_double(v.get<double>());
      }
      if (v.is_string())
      {
        return Money::parse(v.get<std::string>());
      }
    }
    catch (ParseError const &e)
    {
      fail(path, e.what());
    }
    fail(path, "expected a money amount (number or decimal string)");
  }

  std::vector<std::string> strings(json const &v, std::string const &path) const
  {
    if (!v.is_array())
    {
      fail(path, "expected an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      out.push_back(string(v[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

private:
  std::string source_;
};

Direction default_direction(ResponseKind kind)
{
  switch (kind)
  {
  case ResponseKind::Price:
    return Direction::LowerBetter;
  case ResponseKind::Rank:
    return Direction::OrdinalScale;
  case ResponseKind::Committee:
    return Direction::Committee;
  case ResponseKind::Quantity:
  case ResponseKind::Qualification:
    break;
  }
  return Direction::HigherBetter;
}

EvaluationItem read_item(Reader const &rd, json const &j, std::string const &path)
{
  rd.allow_only(j, {"name", "label", "type", "direction", "tolerance", "scale", "indexes", "unit"}, path);
  EvaluationItem item;
  item.name = rd.string(rd.require(j, "name", path), path + "/name");
  auto const type = rd.string(rd.require(j, "type", path), path + "/type");
  auto const kind = parse_response_kind(type);
  if (!kind)
  {
    rd.fail(path + "/type", "unknown item type '" + type + "'");
  }
  item.kind                 = *kind;
  item.comparator.direction = default_direction(*kind);
  if (auto const *d = rd.optional(j, "direction"))
  {
    auto const text = rd.string(*d, path + "/direction");
    auto const dir  = parse_direction(text);
    if (!dir)
    {
      rd.fail(path + "/direction", "unknown direction '" + text + "'");
    }
    item.comparator.direction = *dir;
  }
  if (auto const *t = rd.optional(j, "tolerance"))
  {
    item.comparator.tolerance = rd.number(*t, path + "/tolerance");
  }
  if (auto const *s = rd.optional(j, "scale"))
  {
    item.comparator.scale = rd.strings(*s, path + "/scale");
  }
  if (auto const *x = rd.optional(j, "indexes"))
  {
    item.indexes = rd.strings(*x, path + "/indexes");
  }
  if (auto const *l = rd.optional(j, "label"))
  {
    item.label = rd.string(*l, path + "/label");
  }
  return item;
}

ResponseValue read_response(Reader const &rd, EvaluationItem const &item, json const &v, std::string const &path)
{
  switch (item.kind)
  {
  case ResponseKind::Price:
    return Price{rd.money(v, path)};
  case ResponseKind::Quantity:
    return Quantity{rd.number(v, path)};
  case ResponseKind::Rank:
    return Rank{rd.string(v, path)};
  case ResponseKind::Committee:
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
        v.get<std::int64_t>() > std::numeric_limits<unsigned>::max())
    {
      rd.fail(path, "expected a committee position >= 1");
    }
    return CommitteeOrdinal{v.get<unsigned>()};
  case ResponseKind::Qualification:
    if (!v.is_boolean())
    {
      rd.fail(path, "expected true (pass) or false (fail)");
    }
    return Qualification{v.get<bool>()};
  }
  rd.fail(path, "unsupported response type");
}

Bid read_bid(Reader const &rd, Tender const &tender, json const &j, std::size_t position, std::string const &path)
{
  rd.allow_only(j, {"bidder", "submission_index", "responses", "index_grades"}, path);
  Bid bid;
  bid.bidder           = rd.string(rd.require(j, "bidder", path), path + "/bidder");
  bid.submission_index = position;
  if (auto const *s = rd.optional(j, "submission_index"))
  {
    bid.submission_index = rd.natural(*s, path + "/submission_index");
  }
  auto const &responses = rd.require(j, "responses", path);
  if (!responses.is_object())
  {
    rd.fail(path + "/responses", "expected an object keyed by item name");
  }
  for (auto const &[name, value] : responses.items())
  {
    auto const  where = path + "/responses/" + name;
    auto const *item  = tender.find_item(name);
    if (item == nullptr)
    {
      rd.fail(where, "response for unknown item '" + name + "'");
    }
    bid.responses.emplace(name, read_response(rd, *item, value, where));
  }
  if (auto const *g = rd.optional(j, "index_grades"))
  {
    if (!g->is_object())
    {
      rd.fail(path + "/index_grades", "expected an object");
    }
    for (auto const &[item, grades] : g->items())
    {
      auto const where = path + "/index_grades/" + item;
      if (!grades.is_object())
      {
        rd.fail(where, "expected an object of index -> grade");
      }
      for (auto const &[index, grade] : grades.items())
      {
        bid.index_grades[item][index] = rd.string(grade, where + "/" + index);
      }
    }
  }
  return bid;
}

StandardPriceSpec read_standard(Reader const &rd, json const &j, std::string const &path)
{
  if (j.is_string())
  {
    auto const kind = j.get<std::string>();
    if (kind == "mean")
    {
      return PlainMean{};
    }
    if (kind == "trimmed-mean")
    {
      return TrimmedMean{};
    }
    rd.fail(path, "unknown standard price '" + kind + "' (mean, trimmed-mean, or a blended object)");
  }
  rd.allow_only(j, {"kind", "pre_price", "a_pct"}, path);
  auto const kind = rd.string(rd.require(j, "kind", path), path + "/kind");
  if (kind != "blended")
  {
    rd.fail(path + "/kind", "only 'blended' takes parameters");
  }
  return Blended{rd.money(rd.require(j, "pre_price", path), path + "/pre_price"),
                 rd.number(rd.require(j, "a_pct", path), path + "/a_pct")};
}

TieBreakPolicy read_tiebreak(Reader const &rd, json const &j, std::string const &path)
{
  if (j.is_string())
  {
    if (j.get<std::string>() == "submission-index")
    {
      return TieBreakPolicy::submission_index();
    }
    rd.fail(path, "expected 'submission-index' or {\"rule\": \"lower-price-first\", \"item\": ...}");
  }
  rd.allow_only(j, {"rule", "item"}, path);
  auto const rule = rd.string(rd.require(j, "rule", path), path + "/rule");
  if (rule == "submission-index")
  {
    return TieBreakPolicy::submission_index();
  }
  if (rule == "lower-price-first")
  {
    return TieBreakPolicy::lower_price_first(rd.string(rd.require(j, "item", path), path + "/item"));
  }
  rd.fail(path + "/rule", "unknown tie-break rule '" + rule + "'");
}

PriceMarkParams read_mark_params(Reader const &rd, json const &j, std::string const &path)
{
  PriceMarkParams params;
  if (auto const *a = rd.optional(j, "t_above"))
  {
    params.t_above = rd.number(*a, path + "/t_above");
  }
  if (auto const *b = rd.optional(j, "t_below"))
  {
    params.t_below = rd.number(*b, path + "/t_below");
  }
  return params;
}

WeightFunctionSpec read_weight(Reader const &rd, json const &j, std::string const &path)
{
  rd.allow_only(j, {"kind", "varsigma", "zeta", "standard_price", "p", "q", "pre_price", "nodes", "difference_bound"},
                path);
  auto const kind = rd.string(rd.require(j, "kind", path), path + "/kind");
  auto num        = [&](char const *key) { return rd.number(rd.require(j, key, path), path + "/" + key); };

  if (kind == "common")
  {
    CommonPractice w{num("varsigma"), num("zeta"), PlainMean{}};
    if (auto const *s = rd.optional(j, "standard_price"))
    {
      w.standard = read_standard(rd, *s, path + "/standard_price");
    }
    return w;
  }
  if (kind == "linear")
  {
    return LinearNM{num("p"), num("q")};
  }
  for (auto const &[name, center] : {std::pair{"nonlinear-arithmetic", NonlinearCenter::Arithmetic},
                                     std::pair{"nonlinear-geometric", NonlinearCenter::Geometric},
                                     std::pair{"nonlinear-quadratic", NonlinearCenter::Quadratic}})
  {
    if (kind == name)
    {
      return Nonlinear{center, num("p"), num("q"), rd.money(rd.require(j, "pre_price", path), path + "/pre_price")};
    }
  }
  if (kind == "polynomial")
  {
    PolynomialWeight w;
    w.pre_price = rd.money(rd.require(j, "pre_price", path), path + "/pre_price");
    if (auto const *n = rd.optional(j, "nodes"))
    {
      if (!n->is_array())
      {
        rd.fail(path + "/nodes", "expected an array of numbers");
      }
      for (std::size_t i = 0; i < n->size(); ++i)
      {
        w.nodes.push_back(rd.number((*n)[i], path + "/nodes/" + std::to_string(i)));
      }
    }
    if (auto const *b = rd.optional(j, "difference_bound"))
    {
      w.difference_bound = rd.number(*b, path + "/difference_bound");
    }
    return w;
  }
  rd.fail(path + "/kind", "unknown weight function '" + kind + "'");
}

MarkComponent read_component(Reader const &rd, json const &j, std::string const &path)
{
  rd.allow_only(j, {"name", "item", "source", "max", "weight", "standard_price", "t_above", "t_below", "factor",
                    "marks", "labels", "table"},
                path);
  MarkComponent c;
  c.item = rd.string(rd.require(j, "item", path), path + "/item");
  c.name = c.item;
  if (auto const *n = rd.optional(j, "name"))
  {
    c.name = rd.string(*n, path + "/name");
  }
  if (auto const *m = rd.optional(j, "max"))
  {
    c.max_marks = rd.number(*m, path + "/max");
  }
  auto const source = rd.string(rd.require(j, "source", path), path + "/source");
  if (source == "price-weight")
  {
    c.source = PriceWeightSource{read_weight(rd, rd.require(j, "weight", path), path + "/weight")};
  }
  else if (source == "price-mark")
  {
    PriceMarkSource s;
    if (auto const *sp = rd.optional(j, "standard_price"))
    {
      s.standard = read_standard(rd, *sp, path + "/standard_price");
    }
    s.params = read_mark_params(rd, j, path);
    if (auto const *f = rd.optional(j, "factor"))
    {
      s.factor = rd.number(*f, path + "/factor");
    }
    c.source = s;
  }
  else if (source == "rank-marks")
  {
    auto const &marks = rd.require(j, "marks", path);
    if (!marks.is_object())
    {
      rd.fail(path + "/marks", "expected an object of grade -> mark");
    }
    RankMarksSource s;
    for (auto const &[label, value] : marks.items())
    {
      s.marks[label] = rd.number(value, path + "/marks/" + label);
    }
    c.source = s;
  }
  else if (source == "programming")
  {
    auto const  labels = rd.strings(rd.require(j, "labels", path), path + "/labels");
    auto const &table  = rd.require(j, "table", path);
    if (!table.is_object())
    {
      rd.fail(path + "/table", "expected an object of index -> {grade: mark}");
    }
    std::map<std::string, std::map<std::string, double>> rows;
    for (auto const &[index, row] : table.items())
    {
      if (!row.is_object())
      {
        rd.fail(path + "/table/" + index, "expected an object of grade -> mark");
      }
      for (auto const &[label, value] : row.items())
      {
        rows[index][label] = rd.number(value, path + "/table/" + index + "/" + label);
      }
    }
    c.source = ProgrammingSource{RankTable(labels, std::move(rows))};
  }
  else if (source == "direct")
  {
    c.source = DirectSource{};
  }
  else
  {
    rd.fail(path + "/source", "unknown component source '" + source + "'");
  }
  return c;
}

EvaluationConfig read_evaluation(Reader const &rd, json const &j, std::string const &path)
{
  rd.allow_only(j, {"method", "tiebreak", "top_n", "objective", "qualification", "price_marks", "components",
                    "tolerance", "price_item", "conversions"},
                path);
  EvaluationConfig cfg;
  if (auto const *m = rd.optional(j, "method"))
  {
    auto const text   = rd.string(*m, path + "/method");
    auto const method = parse_method(text);
    if (!method)
    {
      rd.fail(path + "/method", "unknown method '" + text + "'");
    }
    cfg.method = *method;
  }
  if (auto const *t = rd.optional(j, "tiebreak"))
  {
    cfg.tiebreak = read_tiebreak(rd, *t, path + "/tiebreak");
  }
  if (auto const *n = rd.optional(j, "top_n"))
  {
    cfg.top_n = rd.natural(*n, path + "/top_n");
  }

  if (auto const *o = rd.optional(j, "objective"))
  {
    SingleObjectiveConfig so;
    so.objective = rd.string(*o, path + "/objective");
    if (auto const *q = rd.optional(j, "qualification"))
    {
      so.qualification.gated_items = rd.strings(*q, path + "/qualification");
    }
    if (auto const *pm = rd.optional(j, "price_marks"))
    {
      auto const where = path + "/price_marks";
      rd.allow_only(*pm, {"standard_price", "t_above", "t_below", "tolerance"}, where);
      PriceMarkScoring scoring;
      if (auto const *sp = rd.optional(*pm, "standard_price"))
      {
        scoring.standard = read_standard(rd, *sp, where + "/standard_price");
      }
      scoring.params = read_mark_params(rd, *pm, where);
      if (auto const *tol = rd.optional(*pm, "tolerance"))
      {
        scoring.mark_tolerance = rd.number(*tol, where + "/tolerance");
      }
      so.price_marks = scoring;
    }
    cfg.single_objective = std::move(so);
  }
  else if (rd.optional(j, "qualification") || rd.optional(j, "price_marks"))
  {
    rd.fail(path + "/objective", "qualification and price_marks need an objective");
  }

  if (auto const *c = rd.optional(j, "components"))
  {
    if (!c->is_array())
    {
      rd.fail(path + "/components", "expected an array");
    }
    HundredMarksConfig hm;
    for (std::size_t i = 0; i < c->size(); ++i)
    {
      hm.components.push_back(read_component(rd, (*c)[i], path + "/components/" + std::to_string(i)));
    }
    if (auto const *tol = rd.optional(j, "tolerance"))
    {
      hm.tolerance = rd.number(*tol, path + "/tolerance");
    }
    cfg.hundred_marks = std::move(hm);
  }

  if (auto const *pi = rd.optional(j, "price_item"))
  {
    UnitConversion conv;
    conv.price_item = rd.string(*pi, path + "/price_item");
    if (auto const *cv = rd.optional(j, "conversions"))
    {
      if (!cv->is_object())
      {
        rd.fail(path + "/conversions", "expected an object keyed by item name");
      }
      for (auto const &[item, entry] : cv->items())
      {
        auto const where = path + "/conversions/" + item;
        rd.allow_only(entry, {"standard_line", "unit_value", "above"}, where);
        ConversionEntry e;
        e.standard_line = rd.number(rd.require(entry, "standard_line", where), where + "/standard_line");
        e.unit_value    = rd.money(rd.require(entry, "unit_value", where), where + "/unit_value");
        if (auto const *above = rd.optional(entry, "above"))
        {
          auto const sense = rd.string(*above, where + "/above");
          if (sense != "worse" && sense != "better")
          {
            rd.fail(where + "/above", "expected 'worse' or 'better'");
          }
          e.sense = sense == "worse" ? DeviationSense::AboveIsWorse : DeviationSense::AboveIsBetter;
        }
        conv.entries.emplace(item, e);
      }
    }
    cfg.lowest_evaluated_price = std::move(conv);
  }
  return cfg;
}

std::string line_column(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col  = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
  {
    if (text[i] == '\n')
    {
      ++line;
      col = 1;
    }
    else
    {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

TenderFile parse_tender_text(std::string_view text, std::string const &source)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (json::parse_error const &e)
  {
    std::string what = e.what();
    if (auto col = what.find("column "); col != std::string::npos)
    {
      if (auto pos = what.find(": ", col); pos != std::string::npos)
      {
        what = what.substr(pos + 2);
      }
    }
    throw ParseError(source + ":" + line_column(text, e.byte), what);
  }

  Reader const rd(source);
  rd.allow_only(doc, {"tender", "evaluation"}, "");
  auto const &tj = rd.require(doc, "tender", "");
  rd.allow_only(tj, {"id", "money_unit", "items", "precedence", "bids"}, "/tender");

  TenderFile out;
  auto      &tender = out.tender;
  tender.id         = rd.string(rd.require(tj, "id", "/tender"), "/tender/id");
  if (auto const *mu = rd.optional(tj, "money_unit"))
  {
    tender.money_unit = rd.string(*mu, "/tender/money_unit");
  }

  auto const &items = rd.require(tj, "items", "/tender");
  if (!items.is_array())
  {
    rd.fail("/tender/items", "expected an array");
  }
  for (std::size_t i = 0; i < items.size(); ++i)
  {
    tender.items.push_back(read_item(rd, items[i], "/tender/items/" + std::to_string(i)));
  }

  auto const precedence = rd.string(rd.require(tj, "precedence", "/tender"), "/tender/precedence");

  auto const &bids = rd.require(tj, "bids", "/tender");
  if (!bids.is_array())
  {
    rd.fail("/tender/bids", "expected an array");
  }
  for (std::size_t i = 0; i < bids.size(); ++i)
  {
    tender.bids.push_back(read_bid(rd, tender, bids[i], i, "/tender/bids/" + std::to_string(i)));
  }

  std::vector<Issue> issues;
  try
  {
    tender.precedence = parse_precedence(precedence, tender.item_names());
  }
  catch (ParseError const &e)
  {
    issues.push_back({"bad-precedence", "", "", e.what()});
  }
  auto more = check_tender(tender);
  if (!issues.empty())
  {
    // An unparsed precedence also shows up as uncovered items; report the
    // parse failure alone for those.
    std::erase_if(more, [](Issue const &i) { return i.code == "item-missing-from-precedence"; });
  }
  issues.insert(issues.end(), more.begin(), more.end());
  if (!issues.empty())
  {
    throw ValidationError(std::move(issues));
  }

  if (auto const *ej = rd.optional(doc, "evaluation"))
  {
    out.config = read_evaluation(rd, *ej, "/evaluation");
  }
  if (auto cfg_issues = check_config(tender, out.config); !cfg_issues.empty())
  {
    throw ValidationError(std::move(cfg_issues));
  }
  return out;
}

TenderFile load_tender_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
  {
    throw IoError("cannot read " + path.string());
  }
  return parse_tender_text(buf.str(), path.string());
}

}  // namespace bideval
