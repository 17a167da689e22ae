#include "output.hpp"

#include <algorithm>
#include <cstdio>

namespace bh::cli {

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "tsv") return Format::tsv;
  if (name == "markdown" || name == "md") return Format::markdown;
  return std::nullopt;
}

std::string exact_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_delimited(std::ostream& out, const std::vector<std::string>& cells, char sep) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << sep;
    out << cells[i];
  }
  out << '\n';
}

void write_markdown_row(std::ostream& out, const std::vector<std::string>& cells,
                        const std::vector<std::size_t>& widths) {
  out << '|';
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const std::string& cell = i < cells.size() ? cells[i] : std::string();
    out << ' ' << std::string(widths[i] - cell.size(), ' ') << cell << " |";
  }
  out << '\n';
}

}  // namespace

void write_table(std::ostream& out, const TextTable& table, Format format) {
  if (format != Format::markdown) {
    const char sep = format == Format::csv ? ',' : '\t';
    write_delimited(out, table.header, sep);
    for (const auto& row : table.rows) write_delimited(out, row, sep);
    for (const auto& note : table.notes) out << "# " << note << '\n';
    out.flush();
    return;
  }
  std::vector<std::size_t> widths(table.header.size(), 3);
  for (std::size_t i = 0; i < table.header.size(); ++i) widths[i] = std::max(widths[i], table.header[i].size());
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  write_markdown_row(out, table.header, widths);
  out << '|';
  for (const std::size_t w : widths) out << ' ' << std::string(w - 1, '-') << ": |";
  out << '\n';
  for (const auto& row : table.rows) write_markdown_row(out, row, widths);
  if (!table.notes.empty()) {
    out << '\n';
    for (const auto& note : table.notes) out << "- " << note << '\n';
  }
  out.flush();
}

}  // namespace bh::cli
