#include "bideval/pipeline.hpp"
#include "bideval/tender_file.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit
{
  kOk             = 0,
  kInvalid        = 1,
  kIoOrParse      = 2,
  kCrossMismatch  = 3,
};

struct Options
{
  std::string                path;
  std::optional<std::string> method;
  std::string                report = "text";
  std::optional<std::size_t> top;
  bool                       cross_check = false;
  std::optional<std::string> export_graph;
};

void print_sequence(std::ostream &out, char const *label, bideval::OrderedSequence const &seq)
{
  out << "  " << label << ":";
  for (auto const &b : seq.order)
  {
    out << ' ' << b;
  }
  out << '\n';
}

int evaluate(Options const &opt)
{
  auto file = bideval::load_tender_file(opt.path);
  auto &cfg = file.config;
  if (opt.method)
  {
    auto const m = bideval::parse_method(*opt.method);
    if (!m)
    {
      std::cerr << "error: unknown method '" << *opt.method << "'\n";
      return kIoOrParse;
    }
    cfg.method = *m;
  }
  if (opt.top)
  {
    cfg.top_n = *opt.top;
  }

  auto const report = bideval::run_evaluate(file.tender, cfg);

  if (opt.export_graph)
  {
    std::ofstream out(*opt.export_graph, std::ios::binary);
    out << bideval::export_edges(bideval::tender_graph(file.tender));
    if (!out.flush())
    {
      throw bideval::IoError("cannot write " + *opt.export_graph);
    }
  }

  std::cout << bideval::emit_report(report, opt.report == "machine" ? bideval::ReportFormat::Machine
                                                                    : bideval::ReportFormat::Text);
  std::cout.flush();

  if (opt.cross_check)
  {
    auto const check = bideval::cross_check(file.tender, cfg.tiebreak);
    if (!check.agree())
    {
      std::cerr << "cross-check failed: lexicographic and graph orderings differ\n";
      print_sequence(std::cerr, "lex", check.lex);
      print_sequence(std::cerr, "graph", check.graph);
      return kCrossMismatch;
    }
    std::cerr << "cross-check: lex and graph orderings agree\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Bid evaluation engine"};
  app.require_subcommand(1);

  Options opt;
  auto   *cmd = app.add_subcommand("evaluate", "Evaluate a tender file and print the ordered bids");
  cmd->add_option("file", opt.path, "Tender file (JSON)")->required();
  cmd->add_option("--method", opt.method, "lex, graph, single-objective, hundred-marks, lowest-evaluated-price");
  cmd->add_option("--report", opt.report, "Report format")->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--top", opt.top, "Number of pre-successful bidders")->check(CLI::PositiveNumber);
  cmd->add_flag("--cross-check", opt.cross_check, "Also order via the graph method and fail on mismatch");
  cmd->add_option("--export-graph", opt.export_graph, "Write the tender graph's edge list to this path");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const &e)
  {
    app.exit(e);
    return kIoOrParse;
  }

  try
  {
    return evaluate(opt);
  }
  catch (bideval::ValidationError const &e)
  {
    std::cerr << "validation failed:\n";
    for (auto const &issue : e.issues())
    {
      std::cerr << "  " << bideval::to_string(issue) << '\n';
    }
    return kInvalid;
  }
  catch (bideval::ParseError const &e)
  {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIoOrParse;
  }
  catch (bideval::IoError const &e)
  {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoOrParse;
  }
  catch (bideval::Error const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
}
