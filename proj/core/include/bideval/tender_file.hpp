#pragma once

#include "bideval/pipeline.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace bideval {

struct TenderFile
{
  Tender           tender;
  EvaluationConfig config;
};

/// Parses the JSON tender format:
///
///   { "tender": { "id", "money_unit", "items": [...], "precedence": "A1 > A3 > A2",
///                 "bids": [ { "bidder", "responses": {...} } ] },
///     "evaluation": { "method", "tiebreak", "top_n", ...method parameters } }
///
/// Syntax errors throw ParseError located by line:column, schema errors
/// ParseError located by JSON pointer, and invariant violations
/// ValidationError with every issue.
TenderFile parse_tender_text(std::string_view text, std::string const &source = "<input>");

/// Reads and parses a file; unreadable paths throw IoError.
TenderFile load_tender_file(std::filesystem::path const &path);

}  // namespace bideval
