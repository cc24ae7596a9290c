#include "gpdcal/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gpdcal/errors.hpp"

namespace gpdcal {

namespace {

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') return false;
  *out = v;
  return true;
}

std::string last_field(const std::string& line) {
  const auto pos = line.find_last_of(',');
  std::string field = pos == std::string::npos ? line : line.substr(pos + 1);
  const auto b = field.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = field.find_last_not_of(" \t\r");
  return field.substr(b, e - b + 1);
}

std::vector<double> read_last_column(std::istream& is, const char* op) {
  std::vector<double> values;
  std::string line;
  bool first_content_line = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    double v;
    if (parse_double(last_field(line), &v)) {
      values.push_back(v);
    } else if (first_content_line) {
      // header line
    } else {
      throw data_error(std::string(op) + ": unparseable line '" + line + "'");
    }
    first_content_line = false;
  }
  if (values.empty()) {
    throw data_error(std::string(op) + ": no numeric rows found");
  }
  return values;
}

std::string interval_or_blank(const std::optional<Interval>& iv, bool lower) {
  if (!iv) return "";
  return format_sig(lower ? iv->lower : iv->upper);
}

}  // namespace

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_sig(v).c_str(), nullptr);
}

void write_csv(std::ostream& os, const EmitTable& table) {
  for (const auto& [key, value] : table.meta) {
    os << "# " << key << "=" << value << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const EmitTable& table) {
  nlohmann::ordered_json j;
  auto& meta = j["meta"];
  for (const auto& [key, value] : table.meta) meta[key] = value;
  auto& data = j["data"];
  data = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      double v;
      if (parse_double(row[i], &v)) {
        obj[table.columns[i]] = v;
      } else {
        obj[table.columns[i]] = row[i];
      }
    }
    data.push_back(std::move(obj));
  }
  os << j.dump(2) << "\n";
}

void write_table(std::ostream& os, const EmitTable& table,
                 OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_csv(os, table);
  } else {
    write_json(os, table);
  }
}

EmitTable to_table(const ReturnSeries& series, Metadata meta) {
  EmitTable t;
  t.meta = std::move(meta);
  t.columns = {"period", "value"};
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    t.rows.push_back({std::to_string(i + 1), format_sig(series.values[i])});
  }
  return t;
}

EmitTable to_table(const std::vector<MeanExcessPoint>& series, Metadata meta) {
  EmitTable t;
  t.meta = std::move(meta);
  t.columns = {"u", "me", "lo", "hi", "count"};
  for (const auto& p : series) {
    t.rows.push_back({format_sig(p.u), format_sig(p.me), format_sig(p.lo),
                      format_sig(p.hi), std::to_string(p.count)});
  }
  return t;
}

EmitTable to_table(const ComparisonTable& table, Metadata meta) {
  EmitTable t;
  meta.emplace_back("n_tail", std::to_string(table.n_tail));
  meta.emplace_back("n_total", std::to_string(table.n_total));
  meta.emplace_back("f_tilde", format_sig(table.f_tilde));
  t.meta = std::move(meta);
  t.columns = {"method",   "kappa_lo", "kappa",      "kappa_hi",
               "gini_lo",  "gini",     "gini_hi",    "sigma",
               "var_log",  "var_simple", "converged"};
  for (const auto& row : table.rows) {
    t.rows.push_back(
        {to_string(row.method), interval_or_blank(row.kappa_interval, true),
         format_sig(row.kappa), interval_or_blank(row.kappa_interval, false),
         interval_or_blank(row.gini_interval, true),
         row.gini_point ? format_sig(*row.gini_point) : "",
         interval_or_blank(row.gini_interval, false), format_sig(row.sigma),
         format_sig(row.var_log), format_sig(row.var_simple),
         row.converged ? "true" : "false"});
  }
  return t;
}

EmitTable to_table(const StudyTable& table, Metadata meta) {
  EmitTable t;
  t.meta = std::move(meta);
  t.columns = {"kappa", "n", "method", "bias", "mse", "failures", "R"};
  for (const auto& cell : table.cells) {
    t.rows.push_back({format_sig(cell.kappa), std::to_string(cell.n),
                      to_string(cell.method), format_sig(cell.bias),
                      format_sig(cell.mse), std::to_string(cell.failures),
                      std::to_string(cell.replications)});
  }
  return t;
}

EmitTable to_table(const std::vector<std::pair<Method, FitResult>>& fits,
                   Metadata meta) {
  EmitTable t;
  t.meta = std::move(meta);
  t.columns = {"method", "kappa",    "sigma",    "kappa_lo", "kappa_hi",
               "sigma_lo", "sigma_hi", "converged", "loglik"};
  for (const auto& [method, fit] : fits) {
    t.rows.push_back({to_string(method), format_sig(fit.kappa),
                      format_sig(fit.sigma),
                      interval_or_blank(fit.ci_kappa, true),
                      interval_or_blank(fit.ci_kappa, false),
                      interval_or_blank(fit.ci_sigma, true),
                      interval_or_blank(fit.ci_sigma, false),
                      fit.converged ? "true" : "false",
                      fit.objective ? format_sig(*fit.objective) : ""});
  }
  return t;
}

std::vector<double> read_prices(std::istream& is) {
  return read_last_column(is, "read_prices");
}

std::vector<double> read_sample(std::istream& is) {
  return read_last_column(is, "read_sample");
}

}  // namespace gpdcal
