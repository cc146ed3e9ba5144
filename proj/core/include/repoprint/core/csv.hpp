#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace repoprint::csv {

using Row = std::vector<std::string>;

/// RFC-4180 style: fields containing a comma, quote or newline are quoted and
/// inner quotes doubled.
std::string escape(std::string_view field);
std::string format_row(const Row& row);

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

/// Parses a whole document; quoted fields may span lines. A trailing empty
/// line is not a row.
std::vector<Row> parse(std::string_view text);

/// Header plus rows, with column lookup by name.
class Table {
 public:
  static Table parse(std::string_view text);
  static Table load(const std::string& path);

  const Row& header() const noexcept { return header_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  /// Column index; throws Error(ParseError) when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

 private:
  Row header_;
  std::vector<Row> rows_;
};

}  // namespace repoprint::csv
