#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bh::cli {

enum class Format { csv, tsv, markdown };

std::optional<Format> parse_format(std::string_view name);

/// Rows of pre-rendered cells plus footnote lines.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;
};

/// CSV and TSV put notes on '#' lines after the rows; markdown renders a
/// padded pipe table followed by a bullet list.
void write_table(std::ostream& out, const TextTable& table, Format format);

/// Shortest round-trippable decimal for a double (17 significant digits).
std::string exact_real(double v);

}  // namespace bh::cli
