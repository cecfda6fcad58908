// Shared example structures used across the test suites.
#pragma once

#include <map>
#include <utility>

#include "infty/structure.hpp"

namespace infty::fixtures {

// Builds a strict structure from a multiplication table on generators
// (entries (i,j) -> linear combination of generators) and an optional
// differential (generator -> linear combination of generators).
inline Structure strict_algebra(std::vector<std::string> names,
                                std::vector<int> vdeg, int unit,
                                const std::map<std::pair<int, int>, SparseVec>& prod,
                                const std::map<int, SparseVec>& diff = {},
                                Kind kind = Kind::Ainf) {
  Structure S;
  S.kind = kind;
  S.basis.names = std::move(names);
  S.basis.vdeg = std::move(vdeg);
  S.basis.unit = unit;
  std::vector<VMultiMap> tables(3);
  for (const auto& [g, v] : diff) tables[1][Word{g}] = v;
  for (const auto& [ij, v] : prod) tables[2][Word{ij.first, ij.second}] = v;
  S.comp = dualize_structure(tables, S.basis);
  S.max_arity = 2;
  return S;
}

// The ground field: one generator acting as the unit.
inline Structure ground_field() {
  return strict_algebra({"tau"}, {0}, 0, {{{0, 0}, {{0, Rat(1)}}}}, {},
                        Kind::Cinf);
}

// Q[x]/(x^2), basis {1, x}.
inline Structure dual_numbers() {
  std::map<std::pair<int, int>, SparseVec> prod{
      {{0, 0}, {{0, Rat(1)}}},
      {{0, 1}, {{1, Rat(1)}}},
      {{1, 0}, {{1, Rat(1)}}}};
  return strict_algebra({"tau", "x"}, {0, 0}, 0, prod, {}, Kind::Cinf);
}

// Q[x]/(x^3), basis {1, x, x^2}.
inline Structure truncated_cubic() {
  std::map<std::pair<int, int>, SparseVec> prod{
      {{0, 0}, {{0, Rat(1)}}}, {{0, 1}, {{1, Rat(1)}}},
      {{0, 2}, {{2, Rat(1)}}}, {{1, 0}, {{1, Rat(1)}}},
      {{1, 1}, {{2, Rat(1)}}}, {{2, 0}, {{2, Rat(1)}}}};
  return strict_algebra({"tau", "x", "xx"}, {0, 0, 0}, 0, prod, {},
                        Kind::Cinf);
}

// Associative but noncommutative: e*e = e, e*n = n, n*e = 0, n*n = 0.
inline Structure noncommutative_pair() {
  std::map<std::pair<int, int>, SparseVec> prod{
      {{0, 0}, {{0, Rat(1)}}}, {{0, 1}, {{1, Rat(1)}}}};
  return strict_algebra({"e", "n"}, {0, 0}, -1, prod);
}

// Non-associative magma: a*a = b, a*b = a, other products zero.
inline Structure magma() {
  std::map<std::pair<int, int>, SparseVec> prod{
      {{0, 0}, {{1, Rat(1)}}}, {{0, 1}, {{0, Rat(1)}}}};
  return strict_algebra({"a", "b"}, {0, 0}, -1, prod);
}

// A genuinely non-strict commutative structure: three generators
// u, v, w in degrees 0, 1, 2 with a single ternary value
// m(w~) = uuv - vuu, a Lie element, and no binary product.
inline Structure nonstrict_cinfty() {
  Structure S;
  S.kind = Kind::Cinf;
  S.basis.names = {"u", "v", "w"};
  S.basis.vdeg = {0, 1, 2};
  S.comp.resize(3);
  S.comp[2][3] = LinComb{{Word{0, 0, 1}, Rat(1)}, {Word{1, 0, 0}, Rat(-1)}};
  S.max_arity = 3;
  return S;
}

}  // namespace infty::fixtures
