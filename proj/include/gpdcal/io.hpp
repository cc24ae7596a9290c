#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gpdcal/evt.hpp"
#include "gpdcal/classical.hpp"
#include "gpdcal/simstudy.hpp"

namespace gpdcal {

/// Key/value pairs identifying a run: library version, subcommand, seed and
/// every resolved option. Embedded in every emitted artifact.
using Metadata = std::vector<std::pair<std::string, std::string>>;

enum class OutputFormat { csv, json };

/// Formats a double with 6 significant digits (the emission precision).
std::string format_sig(double v);
/// Rounds a double to 6 significant digits (for JSON number emission).
double round_sig(double v);

/// A table ready for emission: metadata, column names, string cells.
struct EmitTable {
  Metadata meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// CSV: '#'-prefixed "key=value" metadata lines, header, then rows.
void write_csv(std::ostream& os, const EmitTable& table);
/// JSON: {"meta": {...}, "data": [{column: value, ...}, ...]}; numeric-looking
/// cells are emitted as numbers.
void write_json(std::ostream& os, const EmitTable& table);
void write_table(std::ostream& os, const EmitTable& table, OutputFormat format);

EmitTable to_table(const ReturnSeries& series, Metadata meta);
EmitTable to_table(const std::vector<MeanExcessPoint>& series, Metadata meta);
EmitTable to_table(const ComparisonTable& table, Metadata meta);
EmitTable to_table(const StudyTable& table, Metadata meta);
EmitTable to_table(const std::vector<std::pair<Method, FitResult>>& fits,
                   Metadata meta);

/// Prices from a CSV stream: (date, price) columns or a single price column;
/// a header line and '#' comment lines are skipped; the last field of each
/// row is the price; ordering is taken from the file.
std::vector<double> read_prices(std::istream& is);

/// Positive sample, one value per line (or last CSV field per line).
std::vector<double> read_sample(std::istream& is);

}  // namespace gpdcal
