#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace bh::cli {

/// One published row: exact count and the two estimates rounded to integers.
struct ReferenceRow {
  std::uint64_t x;
  std::uint64_t actual;
  std::int64_t modified;
  std::int64_t original;
};

struct ReferenceTable {
  int id;
  std::string_view title;
  std::vector<std::string_view> polys;
  std::span<const ReferenceRow> rows;
};

/// nullptr for an unknown id.
const ReferenceTable* find_reference_table(int id);

}  // namespace bh::cli
