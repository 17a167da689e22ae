#include "reference_tables.hpp"

#include <array>

namespace bh::cli {

namespace {

// Sophie Germain pairs n, 2n + 1: published counts and rounded estimates.
constexpr std::array<ReferenceRow, 9> kSophieGermain{{
    {100, 10, 10, 14},
    {1'000, 37, 39, 46},
    {10'000, 190, 195, 214},
    {100'000, 1'171, 1'166, 1'249},
    {1'000'000, 7'746, 7'811, 8'248},
    {10'000'000, 56'032, 56'128, 58'754},
    {100'000'000, 423'140, 423'294, 440'368},
    {1'000'000'000, 3'308'859, 3'307'888, 3'425'308},
    {10'000'000'000, 26'569'515, 26'568'824, 27'411'417},
}};

// Primes of the form 6n^2 + 1.
constexpr std::array<ReferenceRow, 8> kSixNSquaredPlusOne{{
    {100, 27, 25, 31},
    {1'000, 155, 162, 189},
    {10'000, 1'176, 1'195, 1'332},
    {100'000, 9'445, 9'469, 10'299},
    {1'000'000, 78'422, 78'514, 84'096},
    {10'000'000, 671'361, 670'963, 711'171},
    {100'000'000, 5'859'476, 5'859'288, 6'163'042},
    {1'000'000'000, 52'007'341, 52'009'622, 54'386'431},
}};

}  // namespace

const ReferenceTable* find_reference_table(int id) {
  static const ReferenceTable tables[] = {
      {1, "n, 2n+1", {"n", "2*n+1"}, kSophieGermain},
      {2, "6n^2+1", {"6*n^2+1"}, kSixNSquaredPlusOne},
  };
  for (const auto& t : tables) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

}  // namespace bh::cli
