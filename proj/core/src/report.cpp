#include "bideval/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

namespace bideval {

namespace {

std::string fixed2(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string out = buf;
  if (out == "-0.00")
  {
    out = "0.00";
  }
  return out;
}

std::string join(std::vector<std::string> const &names, std::string_view sep)
{
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i)
  {
    if (i)
    {
      out += sep;
    }
    out += names[i];
  }
  return out;
}

std::string emit_text(EvaluationReport const &r)
{
  std::ostringstream out;
  out << "tender: " << r.tender_id << '\n';
  out << "method: " << to_string(r.method) << '\n';
  if (!r.money_unit.empty())
  {
    out << "money_unit: " << r.money_unit << '\n';
  }
  if (r.standard_price)
  {
    out << "standard_price: " << r.standard_price->to_string() << '\n';
  }
  out << "order: " << join(r.sequence.order, " > ") << '\n';
  out << "pre_successful: " << join(r.pre_successful, ", ") << '\n';

  out << "equivalence_groups:\n";
  for (std::size_t g = 0; g < r.sequence.equiv_groups.size(); ++g)
  {
    out << "  " << g + 1 << ". " << join(r.sequence.equiv_groups[g], " ~ ") << '\n';
  }

  if (!r.marks.empty())
  {
    out << "marks:\n";
    if (!r.component_names.empty())
    {
      out << "  bidder total | " << join(r.component_names, " ") << '\n';
    }
    for (auto const &bidder : r.sequence.order)
    {
      auto it = r.marks.find(bidder);
      if (it == r.marks.end())
      {
        continue;
      }
      out << "  " << bidder << ' ' << fixed2(it->second);
      if (auto c = r.component_marks.find(bidder); c != r.component_marks.end())
      {
        out << " |";
        for (double v : c->second)
        {
          out << ' ' << fixed2(v);
        }
      }
      out << '\n';
    }
  }

  if (!r.evaluated_prices.empty())
  {
    out << "evaluated_prices:\n";
    for (auto const &bidder : r.sequence.order)
    {
      if (auto it = r.evaluated_prices.find(bidder); it != r.evaluated_prices.end())
      {
        out << "  " << bidder << ' ' << it->second.to_string() << '\n';
      }
    }
  }

  if (!r.sequence.tiebreak_log.empty())
  {
    out << "tiebreaks:\n";
    for (auto const &entry : r.sequence.tiebreak_log)
    {
      out << "  " << entry.first << " > " << entry.second << " (" << to_string(entry.rule) << ")\n";
    }
  }

  if (!r.disqualifications.empty())
  {
    out << "disqualifications:\n";
    for (auto const &d : r.disqualifications)
    {
      out << "  " << d.bidder << ' ' << d.item << ": " << d.reason << '\n';
    }
  }
  return out.str();
}

std::string emit_machine(EvaluationReport const &r)
{
  using nlohmann::json;
  json doc;
  doc["tender"]         = r.tender_id;
  doc["money_unit"]     = r.money_unit;
  doc["method"]         = std::string(to_string(r.method));
  doc["top_n"]          = r.top_n;
  doc["order"]          = r.sequence.order;
  doc["pre_successful"] = r.pre_successful;
  doc["equivalence_groups"] = r.sequence.equiv_groups;

  json tiebreaks = json::array();
  for (auto const &entry : r.sequence.tiebreak_log)
  {
    tiebreaks.push_back({{"first", entry.first}, {"second", entry.second}, {"rule", std::string(to_string(entry.rule))}});
  }
  doc["tiebreaks"] = std::move(tiebreaks);

  json disq = json::array();
  for (auto const &d : r.disqualifications)
  {
    disq.push_back({{"bidder", d.bidder}, {"item", d.item}, {"reason", d.reason}});
  }
  doc["disqualifications"] = std::move(disq);

  doc["standard_price"] = r.standard_price ? json(r.standard_price->to_string()) : json(nullptr);

  json marks = json::object();
  for (auto const &[bidder, mark] : r.marks)
  {
    marks[bidder] = mark;
  }
  doc["marks"] = std::move(marks);

  json components = json::object();
  for (auto const &[bidder, values] : r.component_marks)
  {
    components[bidder] = values;
  }
  doc["component_marks"] = std::move(components);
  doc["component_names"] = r.component_names;

  json evaluated = json::object();
  for (auto const &[bidder, money] : r.evaluated_prices)
  {
    evaluated[bidder] = money.to_string();
  }
  doc["evaluated_prices"] = std::move(evaluated);

  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(EvaluationReport const &report, ReportFormat format)
{
  return format == ReportFormat::Text ? emit_text(report) : emit_machine(report);
}

}  // namespace bideval
