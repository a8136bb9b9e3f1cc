#include "ncv/core/csv.hpp"

#include "ncv/core/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace ncv::data {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one logical record starting at `pos`; advances `pos` past it and
// counts consumed newlines (quoted fields may span lines).
std::vector<std::string> next_record(std::string_view text, std::size_t& pos, std::size_t& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_was_quoted = true;
    } else if (c == ',') {
      fields.push_back(field_was_quoted ? field : std::string(trim(field)));
      field.clear();
      field_was_quoted = false;
    } else if (c == '\n') {
      ++line;
      break;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw DataError("csv: unterminated quoted field near line " + std::to_string(line));
  fields.push_back(field_was_quoted ? field : std::string(trim(field)));
  return fields;
}

bool blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields.front().empty();
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  CsvTable table;
  std::size_t pos = 0;
  std::size_t line = 1;
  while (pos < text.size() && table.header.empty()) {
    auto fields = next_record(text, pos, line);
    if (!blank_record(fields)) table.header = std::move(fields);
  }
  if (table.header.empty()) throw DataError("csv: missing header row");
  while (pos < text.size()) {
    const std::size_t start_line = line;
    auto fields = next_record(text, pos, line);
    if (blank_record(fields)) continue;
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(start_line);
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("csv: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

std::optional<double> parse_real(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

LoadedData load_csv(const std::filesystem::path& path, std::string_view label_column,
                    std::string_view id_column, double cutoff) {
  if (!std::filesystem::exists(path)) {
    throw DataError("csv: file not found '" + path.string() + "'");
  }
  return load_csv_table(read_csv(path), label_column, id_column, cutoff);
}

LoadedData load_csv_table(const CsvTable& table, std::string_view label_column,
                          std::string_view id_column, double cutoff) {
  const auto& header = table.header;
  auto find_column = [&](std::string_view name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("csv: missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t label_col = find_column(label_column);
  const std::size_t id_col = find_column(id_column);
  if (label_col == id_col) throw DataError("csv: label and id column must differ");

  std::vector<std::size_t> feature_cols;
  std::vector<std::string> names;
  {
    std::unordered_set<std::string> seen;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == label_col || c == id_col) continue;
      if (!seen.insert(header[c]).second) {
        throw DataError("csv: duplicate column name '" + header[c] + "'");
      }
      feature_cols.push_back(c);
      names.push_back(header[c]);
    }
  }

  LoadReport report;
  report.rows_read = table.rows.size();
  std::vector<std::vector<double>> kept;
  std::vector<int> labels;
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen_ids;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.line_numbers[r];
    const std::string id = id_col < row.size() ? row[id_col] : std::string();
    auto reject = [&](std::string reason) {
      report.rejected.push_back({line, id, std::move(reason)});
    };
    if (row.size() != header.size()) {
      reject("expected " + std::to_string(header.size()) + " cells, found " +
             std::to_string(row.size()));
      continue;
    }
    if (id.empty()) {
      reject("missing subject id");
      continue;
    }
    if (!seen_ids.insert(id).second) {
      reject("duplicate subject id");
      continue;
    }
    const auto score = parse_real(row[label_col]);
    if (!score || !std::isfinite(*score)) {
      reject("label column '" + std::string(label_column) + "' is missing or not numeric");
      continue;
    }
    std::vector<double> values;
    values.reserve(feature_cols.size());
    std::string problem;
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
      const auto& cell = row[feature_cols[j]];
      const auto v = parse_real(cell);
      if (!v) {
        problem = trim(cell).empty() ? "missing value in '" + names[j] + "'"
                                     : "unparseable value '" + cell + "' in '" + names[j] + "'";
        break;
      }
      if (!std::isfinite(*v)) {
        problem = "non-finite value in '" + names[j] + "'";
        break;
      }
      values.push_back(*v);
    }
    if (!problem.empty()) {
      seen_ids.erase(id);
      reject(std::move(problem));
      continue;
    }
    kept.push_back(std::move(values));
    labels.push_back(*score >= cutoff ? 1 : 0);
    ids.push_back(id);
  }

  if (kept.empty()) {
    throw DataError("csv: all " + std::to_string(report.rows_read) + " rows rejected");
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(kept.size()),
                    static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kept[i][j];
    }
  }
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  if (positives == 0 || static_cast<std::size_t>(positives) == labels.size()) {
    report.warnings.push_back("only one class present after dichotomization at cutoff " +
                              std::to_string(cutoff) + "; fitting will fail");
  }
  return {Dataset(std::move(names), std::move(x), std::move(labels), std::move(ids)),
          std::move(report)};
}

}  // namespace ncv::data
