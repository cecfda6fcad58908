// The non-cyclic cochain complexes attached to a homotopy algebra: bar
// (words with the Leibniz extension b'), Hochschild with dual or adjoint
// coefficients, Harrison (the primitive summand), Chevalley-Eilenberg on
// symmetric words, the unital contracting homotopy, and the normalisation
// retraction for 1-forms.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "infty/complex.hpp"
#include "infty/shuffle.hpp"
#include "infty/structure.hpp"

namespace infty {

enum class Coeff { dual, adjoint, trivial };

inline std::string coeff_str(Coeff c) {
  switch (c) {
    case Coeff::dual: return "dual";
    case Coeff::adjoint: return "adjoint";
    default: return "trivial";
  }
}

// ---------------------------------------------------------------------------
// Basis enumeration helpers.

// All words of the given total degree with weight between 1 (or 0 when
// allow_empty) and the cap.
inline std::vector<Word> words_of_degree(const GradedBasis& b, int deg, int cap,
                                         bool allow_empty = false) {
  std::vector<Word> out;
  if (allow_empty && deg == 0) out.push_back({});
  for (int i = 1; i <= cap; ++i)
    for (auto& w : enumerate_words(b, i, true, deg)) out.push_back(std::move(w));
  return out;
}

// Canonical symmetric words (letters non-decreasing, no repeated odd letter)
// of the given total degree.
inline std::vector<Word> symwords_of_degree(const GradedBasis& b, int deg,
                                            int cap, bool allow_empty = false) {
  std::vector<Word> out;
  if (allow_empty && deg == 0) out.push_back({});
  for (int i = 1; i <= cap; ++i)
    for (auto& w : enumerate_words(b, i, true, deg)) {
      if (!std::is_sorted(w.begin(), w.end())) continue;
      bool dead = false;
      for (size_t k = 1; k < w.size(); ++k)
        if (w[k] == w[k - 1] && b.wdeg(w[k]) % 2 != 0) dead = true;
      if (!dead) out.push_back(std::move(w));
    }
  return out;
}

// ---------------------------------------------------------------------------
// The differentials as word-level operators.

// Hochschild differential with dual coefficients on a word x0.y (the word
// encodes the 1-form d(x0).y):
//   b(x0.y) = - sum_{u in m(x0)} (1 + z + ... + z^{wt(u)-1})(u.y)
//             - (-1)^{|x0|} x0.(b'(y)).
inline LinComb hochschild_b_word(const Structure& S, const Word& w) {
  require(!w.empty(), "EmptyWord", "differential of the empty word");
  const GradedBasis& b = S.basis;
  LinComb out;
  int x0 = w[0];
  Word y(w.begin() + 1, w.end());
  if (x0 < (int)S.comp.size())
    for (const auto& [i, lc] : S.comp[x0])
      for (const auto& [u, c] : lc) {
        Word uy = u;
        uy.insert(uy.end(), y.begin(), y.end());
        LinComb cur{{uy, -c}};
        for (int k = 0; k < i; ++k) {
          axpy(out, Rat(1), cur);
          if (k + 1 < i) cur = act_z(b, cur);
        }
      }
  Rat sgn(-sign_pow(b.wdeg(x0)));
  for (const auto& [u, c] : apply_m(S, y)) {
    Word r{x0};
    r.insert(r.end(), u.begin(), u.end());
    add_term(out, r, sgn * c);
  }
  return out;
}

inline LinComb hochschild_b(const Structure& S, const LinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x) axpy(out, c, hochschild_b_word(S, w));
  return out;
}

// Leibniz extension of a single-value derivation (value w on generator g,
// derivation degree r) to a word u; symmetric words are re-canonicalized.
inline LinComb substitute_derivation(const Structure& S, int g, const Word& w,
                                     long r, const Word& u) {
  const GradedBasis& b = S.basis;
  LinComb out;
  long prefix = 0;
  for (size_t l = 0; l < u.size(); ++l) {
    if (u[l] == g) {
      Word t(u.begin(), u.begin() + l);
      t.insert(t.end(), w.begin(), w.end());
      t.insert(t.end(), u.begin() + l + 1, u.end());
      Rat sgn(sign_pow(r * prefix));
      if (S.kind == Kind::Linf) {
        SymWord sw = symmetrize_word(b, t);
        if (!sw.zero) add_term(out, sw.letters, Rat(sw.sign) * sgn);
      } else {
        add_term(out, t, sgn);
      }
    }
    prefix += b.wdeg(u[l]);
  }
  return out;
}

// Adjoint-coefficient differential d(xi) = [m, xi] evaluated on the unit
// cochain xi with single value w on generator g.  The result is a
// combination of (generator, word) keys.
inline CVec adjoint_d(const Structure& S, int g, const Word& w) {
  const GradedBasis& b = S.basis;
  long r = (long)word_wdeg(b, w) - b.wdeg(g);
  CVec out;
  axpy(out, Rat(1), word_cvec(apply_m(S, w), g));
  Rat sgn(-sign_pow(r));
  for (int gp = 0; gp < (int)S.comp.size(); ++gp)
    for (const auto& [i, lc] : S.comp[gp])
      for (const auto& [u, c] : lc)
        axpy(out, sgn * c, word_cvec(substitute_derivation(S, g, w, r, u), gp));
  return out;
}

// Dual-coefficient Chevalley-Eilenberg differential on a key (g, y)
// standing for the 1-form d(g).y over the symmetric algebra:
//   L_m(dg.y) = - sum_{u in m(g)} sum_l +-(u_l, (u without u_l).y)
//               - (-1)^{|g|} (g, m(y)).
inline CVec ce_dual_d(const Structure& S, int g, const Word& y) {
  const GradedBasis& b = S.basis;
  CVec out;
  if (g < (int)S.comp.size())
    for (const auto& [i, lc] : S.comp[g])
      for (const auto& [u, c] : lc) {
        long prefix = 0;
        for (size_t l = 0; l < u.size(); ++l) {
          Word rest(u.begin(), u.begin() + l);
          rest.insert(rest.end(), u.begin() + l + 1, u.end());
          rest.insert(rest.end(), y.begin(), y.end());
          SymWord sw = symmetrize_word(b, rest);
          if (!sw.zero) {
            Rat sgn(sign_pow((long)b.wdeg(u[l]) * prefix) * sw.sign);
            add_term(out, CKey{u[l], sw.letters}, -sgn * c);
          }
          prefix += b.wdeg(u[l]);
        }
      }
  Rat sgn(-sign_pow(b.wdeg(g)));
  axpy(out, sgn, word_cvec(apply_m(S, y), g));
  return out;
}

// ---------------------------------------------------------------------------
// Window constructors.

inline std::function<bool(int)> word_completeness(const GradedBasis& b,
                                                  int cap) {
  bool conn = b.connective();
  return [conn, cap](int n) { return conn && cap >= n + 1; };
}

inline std::function<bool(int)> value_completeness(const GradedBasis& b,
                                                   int cap) {
  bool conn = b.connective();
  int maxg = 1;
  for (int g = 0; g < b.size(); ++g) maxg = std::max(maxg, b.wdeg(g));
  return [conn, cap, maxg](int n) { return conn && cap >= maxg + n - 1; };
}

// Bar complex: words of total degree n+1 with the Leibniz differential b'.
inline ComplexWindow bar_window(const Structure& S, int lo, int hi, int cap) {
  require(S.kind != Kind::Linf, "WrongKind",
          "the bar complex lives on tensor words");
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  return build_window(
      "bar", "none", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> out;
        for (const auto& w : words_of_degree(b, n + 1, cap))
          out.push_back(CVec{{CKey{-1, w}, Rat(1)}});
        return out;
      },
      [&](const CKey& k) { return word_cvec(apply_m(S, k.second)); },
      word_completeness(b, cap));
}

// Hochschild complex: same underlying words for dual coefficients (cochain
// degree = word degree - 1), (generator, word) pairs for adjoint
// coefficients (degree = value degree - generator degree + 1).
inline ComplexWindow hochschild_window(const Structure& S, int lo, int hi,
                                       int cap, Coeff coeff) {
  require(S.kind != Kind::Linf, "WrongKind",
          "the Hochschild complex lives on tensor words");
  require(coeff != Coeff::trivial, "ValidationError",
          "Hochschild coefficients are dual or adjoint");
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  if (coeff == Coeff::dual) {
    return build_window(
        "hochschild", "dual", lo, hi, cap,
        [&](int n) {
          std::vector<CVec> out;
          for (const auto& w : words_of_degree(b, n + 1, cap))
            out.push_back(CVec{{CKey{-1, w}, Rat(1)}});
          return out;
        },
        [&](const CKey& k) { return word_cvec(hochschild_b_word(S, k.second)); },
        word_completeness(b, cap));
  }
  return build_window(
      "hochschild", "adjoint", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> out;
        for (int g = 0; g < b.size(); ++g)
          for (const auto& w :
               words_of_degree(b, b.wdeg(g) + n - 1, cap, true))
            out.push_back(CVec{{CKey{g, w}, Rat(1)}});
        return out;
      },
      [&](const CKey& k) { return adjoint_d(S, k.first, k.second); },
      value_completeness(b, cap));
}

// Harrison complex: the primitive (2-eigenvalue) summand of the Hochschild
// complex.  Dual coefficients restrict the word tails to Lie elements via
// the tail idempotent; adjoint coefficients restrict values to Lie slices.
inline ComplexWindow harrison_window(const Structure& S, int lo, int hi,
                                     int cap, Coeff coeff) {
  require(S.kind == Kind::Cinf, "NotCinfty",
          "the Harrison complex needs a commutative structure");
  {
    Report r = check_cinfty(S);
    require(r.ok, "NotCinfty", "structure values are not primitive");
  }
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  if (coeff == Coeff::dual) {
    return build_window(
        "harrison", "dual", lo, hi, cap,
        [&](int n) {
          std::vector<CVec> cand;
          for (const auto& w : words_of_degree(b, n + 1, cap)) {
            LinComb im = apply_idempotent(b, 1, LinComb{{w, Rat(1)}},
                                          ShuffleVariant::tilde);
            if (!im.empty()) cand.push_back(word_cvec(im));
          }
          return independent_subset(cand);
        },
        [&](const CKey& k) { return word_cvec(hochschild_b_word(S, k.second)); },
        word_completeness(b, cap));
  }
  require(coeff == Coeff::adjoint, "ValidationError",
          "Harrison coefficients are dual or adjoint");
  return build_window(
      "harrison", "adjoint", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> cand;
        for (int g = 0; g < b.size(); ++g)
          for (const auto& w : words_of_degree(b, b.wdeg(g) + n - 1, cap)) {
            LinComb im = apply_idempotent(b, 1, LinComb{{w, Rat(1)}});
            if (!im.empty()) cand.push_back(word_cvec(im, g));
          }
        return independent_subset(cand);
      },
      [&](const CKey& k) { return adjoint_d(S, k.first, k.second); },
      value_completeness(b, cap));
}

// Chevalley-Eilenberg complexes on symmetric words; trivial coefficients
// use the 0-forms (the symmetric words themselves) with the extension of m.
inline ComplexWindow ce_window(const Structure& S, int lo, int hi, int cap,
                               Coeff coeff) {
  require(S.kind == Kind::Linf, "WrongKind",
          "the Chevalley-Eilenberg complex needs a Lie structure");
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  if (coeff == Coeff::trivial) {
    return build_window(
        "ce", "trivial", lo, hi, cap,
        [&](int n) {
          std::vector<CVec> out;
          for (const auto& w : symwords_of_degree(b, n + 1, cap))
            out.push_back(CVec{{CKey{-1, w}, Rat(1)}});
          return out;
        },
        [&](const CKey& k) { return word_cvec(apply_m(S, k.second)); },
        word_completeness(b, cap));
  }
  if (coeff == Coeff::dual) {
    return build_window(
        "ce", "dual", lo, hi, cap,
        [&](int n) {
          std::vector<CVec> out;
          for (int g = 0; g < b.size(); ++g)
            for (const auto& w :
                 symwords_of_degree(b, n + 1 - b.wdeg(g), cap, true))
              out.push_back(CVec{{CKey{g, w}, Rat(1)}});
          return out;
        },
        [&](const CKey& k) { return ce_dual_d(S, k.first, k.second); },
        word_completeness(b, cap));
  }
  return build_window(
      "ce", "adjoint", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> out;
        for (int g = 0; g < b.size(); ++g)
          for (const auto& w :
               symwords_of_degree(b, b.wdeg(g) + n - 1, cap, true))
            out.push_back(CVec{{CKey{g, w}, Rat(1)}});
        return out;
      },
      [&](const CKey& k) { return adjoint_d(S, k.first, k.second); },
      value_completeness(b, cap));
}

// ---------------------------------------------------------------------------
// The unital contracting homotopy and the normalisation retraction.

inline void require_unital(const Structure& S) {
  require(S.basis.unit >= 0, "NotUnital", "no unit generator declared");
  Report r = check_unital(S);
  require(r.ok, "NotUnital", "declared unit fails the unitality check");
}

// h strips a leading unit letter: h(tau.x) = x and h(w) = 0 otherwise.
inline LinComb contracting_h(const Structure& S, const LinComb& x) {
  require_unital(S);
  int tau = S.basis.unit;
  LinComb out;
  for (const auto& [w, c] : x)
    if (!w.empty() && w[0] == tau) add_term(out, Word(w.begin() + 1, w.end()), c);
  return out;
}

// The tail homotopy: on the word x0.x1...xn (the 1-form d(x0).x1...xn),
// delete the tail letter x_i when it equals the unit, with the sign of
// commuting it past x1...x_{i-1} and past d(x0).
inline LinComb tail_deletion(const Structure& S, int i, const LinComb& x) {
  int tau = S.basis.unit;
  const GradedBasis& b = S.basis;
  LinComb out;
  for (const auto& [w, c] : x) {
    if ((int)w.size() < i + 2) continue;
    if (w[i + 1] != tau) continue;
    long e = 0;
    for (int k = 1; k <= i; ++k) e += b.wdeg(w[k]);
    e += (long)b.wdeg(w[0]) * b.wdeg(tau);
    Word r = w;
    r.erase(r.begin() + i + 1);
    add_term(out, r, Rat(sign_pow(e)) * c);
  }
  return out;
}

// Rewrites a 1-form (in word coordinates x0.tail) into a cohomologous one
// whose tail is free of the unit letter, by the stabilizing composite of
// the homotopies id + b s_i + s_i b.  Words beyond the weight cap are
// truncated.
inline LinComb normalize_H(const Structure& S, LinComb alpha, int cap) {
  require_unital(S);
  auto truncate = [&](LinComb& x) {
    for (auto it = x.begin(); it != x.end();)
      it = ((int)it->first.size() > cap) ? x.erase(it) : std::next(it);
  };
  truncate(alpha);
  for (int i = 1; i <= cap; ++i) {
    LinComb si = tail_deletion(S, i, alpha);
    LinComb next = alpha;
    axpy(next, Rat(1), hochschild_b(S, si));
    axpy(next, Rat(1), tail_deletion(S, i, hochschild_b(S, alpha)));
    truncate(next);
    alpha = std::move(next);
  }
  return alpha;
}

// True when no tail letter equals the unit.
inline bool is_normalised(const Structure& S, const LinComb& x) {
  int tau = S.basis.unit;
  for (const auto& [w, c] : x)
    for (size_t k = 1; k < w.size(); ++k)
      if (w[k] == tau) return false;
  return true;
}

}  // namespace infty
