// Graded generator bases, tensor words with (weight, degree) bigrading,
// Koszul signs, symmetric-word canonicalization, and the transposition of
// input multiplication tables into components of a degree +1 derivation.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "infty/linalg.hpp"
#include "infty/rational.hpp"

namespace infty {

// A finite basis of the generating space.  Degrees are stored for the
// undualized space V; the dual suspended generators spanning W carry
// degree vdeg + 1.  Connective mode (all vdeg >= 0) makes every total
// degree meet only finitely many weights.
struct GradedBasis {
  std::vector<std::string> names;
  std::vector<int> vdeg;
  int unit = -1;  // generator index acting as the algebra unit, -1 if none

  int size() const { return (int)names.size(); }
  int wdeg(int g) const { return vdeg[g] + 1; }
  bool connective() const {
    for (int d : vdeg)
      if (d < 0) return false;
    return true;
  }
  int index_of(const std::string& n) const {
    for (int g = 0; g < size(); ++g)
      if (names[g] == n) return g;
    fail("ValidationError", "unknown generator '" + n + "'");
  }
  void check_names_unique() const {
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        require(names[i] != names[j], "ValidationError",
                "duplicate generator name '" + names[i] + "'");
  }
};

// A word is an ordered list of generator indices (letters over W).
// Weight = length; degree = sum of letter W-degrees.
using Word = std::vector<int>;

// Finite rational combination of words.
using LinComb = std::map<Word, Rat>;

inline int word_wdeg(const GradedBasis& b, const Word& w) {
  int d = 0;
  for (int g : w) d += b.wdeg(g);
  return d;
}

inline std::string word_str(const GradedBasis& b, const Word& w) {
  if (w.empty()) return "()";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += b.names[w[i]];
  }
  return s;
}

inline void add_term(LinComb& c, const Word& w, const Rat& a) {
  if (a == 0) return;
  auto it = c.find(w);
  if (it == c.end()) {
    c.emplace(w, a);
  } else {
    it->second += a;
    if (it->second == 0) c.erase(it);
  }
}

inline void axpy(LinComb& y, const Rat& a, const LinComb& x) {
  if (a == 0) return;
  if (&y == &x) {
    // In-place rescale (or cancellation) of y against itself.
    Rat f = a + 1;
    if (f == 0)
      y.clear();
    else
      for (auto& [w, c] : y) c *= f;
    return;
  }
  for (const auto& [w, c] : x) add_term(y, w, a * c);
}

inline void scale(LinComb& c, const Rat& a) {
  if (a == 0) {
    c.clear();
    return;
  }
  for (auto& [w, v] : c) v *= a;
}

inline LinComb scaled(LinComb c, const Rat& a) {
  scale(c, a);
  return c;
}

inline std::string comb_str(const GradedBasis& b, const LinComb& c) {
  if (c.empty()) return "0";
  std::string s;
  for (const auto& [w, a] : c) {
    if (!s.empty()) s += " + ";
    s += rat_str(a) + "*" + word_str(b, w);
  }
  return s;
}

// Checks every word of x has the given weight (throws MixedWeight when the
// combination is inhomogeneous); returns the common weight, or -1 when x=0.
inline int common_weight(const LinComb& x) {
  int n = -1;
  for (const auto& [w, c] : x) {
    if (n < 0)
      n = (int)w.size();
    else
      require((int)w.size() == n, "MixedWeight",
              "combination mixes words of different weights");
  }
  return n;
}

// Sign of permuting homogeneous letters: one factor (-1)^{|x_i||x_j|} for
// every inverted pair.  perm is 1-based: the k-th output letter is input
// letter perm[k].
inline int koszul_sign(const std::vector<int>& perm,
                       const std::vector<int>& degrees) {
  require(perm.size() == degrees.size(), "LengthMismatch",
          "permutation and degree list differ in length");
  int n = (int)perm.size();
  std::vector<char> seen(n, 0);
  for (int p : perm) {
    require(p >= 1 && p <= n && !seen[p - 1], "LengthMismatch",
            "not a permutation of 1..n");
    seen[p - 1] = 1;
  }
  long inv_odd = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) inv_odd += (long)degrees[perm[i] - 1] *
                                        (long)degrees[perm[j] - 1];
  return sign_pow(inv_odd);
}

// All words of the given weight over the basis, in lexicographic order of
// generator indices; optionally filtered to a single total W-degree.
inline std::vector<Word> enumerate_words(const GradedBasis& b, int weight,
                                         bool filter_degree = false,
                                         int degree = 0) {
  std::vector<Word> out;
  int r = b.size();
  if (weight == 0) {
    if (!filter_degree || degree == 0) out.push_back({});
    return out;
  }
  if (r == 0) return out;
  Word w(weight, 0);
  while (true) {
    if (!filter_degree || word_wdeg(b, w) == degree) out.push_back(w);
    int i = weight - 1;
    while (i >= 0 && w[i] == r - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

// Canonical form of a word under graded commutativity: letters sorted by
// index, Koszul sign accumulated; zero when an odd letter repeats.
struct SymWord {
  Word letters;
  int sign = 1;
  bool zero = false;
};

inline SymWord symmetrize_word(const GradedBasis& b, Word w) {
  SymWord out;
  int sign = 1;
  // Insertion sort; each adjacent swap contributes a Koszul factor.
  for (size_t i = 1; i < w.size(); ++i)
    for (size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      sign *= sign_pow((long)b.wdeg(w[j - 1]) * b.wdeg(w[j]));
      std::swap(w[j - 1], w[j]);
    }
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && b.wdeg(w[i]) % 2 != 0) {
      out.zero = true;
      return out;
    }
  out.letters = std::move(w);
  out.sign = sign;
  return out;
}

// Multiplication tables m_i on V-words: each arity maps a V-word to a
// combination of generators.
using VMultiMap = std::map<Word, SparseVec>;

// Transposes the input tables into the weight components of a derivation on
// words over W.  Output: comp[g][i] = weight-i words produced from the dual
// generator g.  Each table entry m_i(v_1,...,v_i) = sum_g c_g * g
// contributes c_g * suspension_sign * (v_1...v_i) to comp[g][i], with
// suspension_sign = (-1)^{sum_{k=1}^{i} (i-k)|v_k|} in V-degrees.
// Every contribution must raise W-degree by exactly 1.
inline std::vector<std::map<int, LinComb>> dualize_structure(
    const std::vector<VMultiMap>& tables, const GradedBasis& b) {
  std::vector<std::map<int, LinComb>> comp(b.size());
  for (size_t ar = 0; ar < tables.size(); ++ar) {
    int i = (int)ar;  // tables[i] holds the arity-i map
    for (const auto& [vword, value] : tables[ar]) {
      require((int)vword.size() == i, "LengthMismatch",
              "arity-" + std::to_string(i) + " table keyed by a word of length " +
                  std::to_string(vword.size()));
      long e = 0;
      for (int k = 0; k < i; ++k) e += (long)(i - 1 - k) * b.vdeg[vword[k]];
      int ssign = sign_pow(e);
      for (const auto& [g, c] : value) {
        require(word_wdeg(b, vword) == b.wdeg(g) + 1, "DegreeMismatch",
                "structure component on '" + b.names[g] +
                    "' does not have degree +1");
        add_term(comp[g][i], vword, Rat(ssign) * c);
      }
    }
  }
  return comp;
}

// Inverse of dualize_structure (same signs read backwards); the round trip
// is exercised by the tests.
inline std::vector<VMultiMap> undualize_structure(
    const std::vector<std::map<int, LinComb>>& comp, const GradedBasis& b) {
  int max_ar = 0;
  for (const auto& per_g : comp)
    for (const auto& [i, _] : per_g) max_ar = std::max(max_ar, i);
  std::vector<VMultiMap> tables(max_ar + 1);
  for (int g = 0; g < (int)comp.size(); ++g)
    for (const auto& [i, lc] : comp[g])
      for (const auto& [w, c] : lc) {
        long e = 0;
        for (int k = 0; k < i; ++k) e += (long)(i - 1 - k) * b.vdeg[w[k]];
        set_entry(tables[i][w], g, get_entry(tables[i][w], g) + Rat(sign_pow(e)) * c);
        if (get_entry(tables[i][w], g) == 0) tables[i][w].erase(g);
      }
  // Drop empty rows for exact round-trip comparison.
  for (auto& t : tables)
    for (auto it = t.begin(); it != t.end();)
      it = it->second.empty() ? t.erase(it) : std::next(it);
  return tables;
}

}  // namespace infty
