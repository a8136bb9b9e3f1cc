#pragma once

#include "ncv/core/dataset.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncv::data {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

// Comma-separated, UTF-8, header row required. Quoted fields with "" escapes
// are supported; blank lines are skipped.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

// Strict decimal parse of a whole cell (surrounding whitespace allowed).
std::optional<double> parse_real(std::string_view cell);

struct RejectedRow {
  std::size_t line = 0;
  std::string subject_id;
  std::string reason;
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::vector<RejectedRow> rejected;
  std::vector<std::string> warnings;
};

struct LoadedData {
  Dataset dataset;
  LoadReport report;
};

// Every column other than the label and id columns becomes a feature. The
// label column holds a raw score; label = 1 where score >= cutoff.
// Rows with missing, unparseable or non-finite cells are rejected, never
// imputed.
LoadedData load_csv(const std::filesystem::path& path, std::string_view label_column,
                    std::string_view id_column, double cutoff);
LoadedData load_csv_table(const CsvTable& table, std::string_view label_column,
                          std::string_view id_column, double cutoff);

}  // namespace ncv::data
