// Cyclic rotation operators, necklace (coinvariant) canonical forms, the
// modified shuffle operator s = (concatenation) . (shuffle coproduct), its
// variants fixing the first letter, and the spectral idempotents obtained by
// Lagrange interpolation at the eigenvalues 2^j.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "infty/grading.hpp"

namespace infty {

// ---------------------------------------------------------------------------
// Cyclic rotation z and the norm N = 1 + z + ... + z^{n-1}.

// Rotates the first letter to the end: the sign is (-1)^{|w_1|(|w_2|+...+|w_n|)}.
inline std::pair<Word, int> rotate_word(const GradedBasis& b, const Word& w) {
  if (w.size() <= 1) return {w, 1};
  Word r(w.begin() + 1, w.end());
  r.push_back(w[0]);
  long e = (long)b.wdeg(w[0]) * (word_wdeg(b, w) - b.wdeg(w[0]));
  return {std::move(r), sign_pow(e)};
}

inline LinComb act_z(const GradedBasis& b, const LinComb& x) {
  common_weight(x);
  LinComb out;
  for (const auto& [w, c] : x) {
    auto [r, s] = rotate_word(b, w);
    add_term(out, r, Rat(s) * c);
  }
  return out;
}

inline LinComb act_N(const GradedBasis& b, const LinComb& x) {
  int n = common_weight(x);
  LinComb out, cur = x;
  for (int k = 0; k < std::max(n, 1); ++k) {
    axpy(out, Rat(1), cur);
    cur = act_z(b, cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Necklace (coinvariant) canonical forms.  The coinvariant space is the
// quotient by span{(1-z)w}; each z-orbit contributes one basis necklace,
// or zero when a rotation identifies a word with its own negative.

struct Necklace {
  Word rep;       // lexicographically least word in the orbit
  int sign = 1;   // the input word equals sign * rep in the quotient
  bool zero = false;
};

inline Necklace necklace_canonical(const GradedBasis& b, const Word& w) {
  Necklace out;
  out.rep = w;
  Word cur = w;
  int sign = 1, best_sign = 1;
  bool conflict = false;
  for (size_t k = 1; k < w.size(); ++k) {
    auto [nxt, s] = rotate_word(b, cur);
    cur = std::move(nxt);
    sign *= s;
    if (cur < out.rep) {
      out.rep = cur;
      best_sign = sign;
    } else if (cur == out.rep && sign != best_sign) {
      conflict = true;
    }
  }
  // Also detect w itself reappearing with a flipped sign.
  if (conflict) {
    out.zero = true;
    return out;
  }
  out.sign = best_sign;
  return out;
}

inline LinComb necklace_project(const GradedBasis& b, const LinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x) {
    Necklace nk = necklace_canonical(b, w);
    if (!nk.zero) add_term(out, nk.rep, Rat(nk.sign) * c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The modified shuffle operator s and the first-letter-fixing variant.

// s(w) = sum over subsets S of letter positions, with the Koszul sign of
// pulling the subsequence w_S in front of w_{S^c}.  Each singleton gives
// the word back, so s(letter) = 2*letter.
inline void shuffle_word_into(const GradedBasis& b, const Word& w, const Rat& c,
                              LinComb& out) {
  int n = (int)w.size();
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = b.wdeg(w[i]);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Word r;
    r.reserve(n);
    long e = 0;
    long deg_behind = 0;  // total degree of unselected letters seen so far
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        r.push_back(w[i]);
        e += (long)deg[i] * deg_behind;
      } else {
        deg_behind += deg[i];
      }
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) r.push_back(w[i]);
    add_term(out, r, Rat(sign_pow(e)) * c);
  }
}

enum class ShuffleVariant { plain, tilde };

inline LinComb shuffle_s(const GradedBasis& b, const LinComb& x,
                         ShuffleVariant variant = ShuffleVariant::plain) {
  common_weight(x);
  LinComb out;
  for (const auto& [w, c] : x) {
    require(!w.empty(), "EmptyWord", "shuffle operator needs weight >= 1");
    if (variant == ShuffleVariant::plain) {
      shuffle_word_into(b, w, c, out);
    } else {
      // First letter fixed; s acts on the tail.  On bare letters the tail
      // is empty and the word passes through once.
      Word tail(w.begin() + 1, w.end());
      if (tail.empty()) {
        add_term(out, w, c);
        continue;
      }
      LinComb tmp;
      shuffle_word_into(b, tail, c, tmp);
      for (const auto& [t, tc] : tmp) {
        Word full{w[0]};
        full.insert(full.end(), t.begin(), t.end());
        add_term(out, full, tc);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral idempotents.  On the weight-n slice s satisfies
// prod_{i=0}^{n} (s - 2^i) = 0, and e_n(j) is the Lagrange interpolation
// idempotent at the eigenvalue 2^j (zero for j > n).

struct LagrangePoly {
  std::vector<Int> num;  // coefficients of prod_{r != j} (x - 2^r), low first
  Int den;               // prod_{r != j} (2^j - 2^r)
};

inline LagrangePoly lagrange_poly(int j, int n) {
  LagrangePoly p;
  p.num = {Int(1)};
  p.den = 1;
  Int lj = Int(1) << j;
  for (int r = 0; r <= n; ++r) {
    if (r == j) continue;
    Int lr = Int(1) << r;
    // num *= (x - lr)
    std::vector<Int> nxt(p.num.size() + 1, Int(0));
    for (size_t k = 0; k < p.num.size(); ++k) {
      nxt[k + 1] += p.num[k];
      nxt[k] -= p.num[k] * lr;
    }
    p.num = std::move(nxt);
    p.den *= lj - lr;
  }
  return p;
}

// Applies e_n(j) (variant plain) or the tail version fixing the first letter
// (variant tilde, i.e. 1 (x) e_{n-1}(j)) to a homogeneous combination.
inline LinComb apply_idempotent(const GradedBasis& b, int j, const LinComb& x,
                                ShuffleVariant variant = ShuffleVariant::plain) {
  int n = common_weight(x);
  if (n <= 0) return {};
  int deg = (variant == ShuffleVariant::plain) ? n : n - 1;
  if (j > deg) return {};
  if (deg == 0) return (j == 0) ? x : LinComb{};
  LagrangePoly p = lagrange_poly(j, deg);
  LinComb out, cur = x;
  for (size_t k = 0; k < p.num.size(); ++k) {
    axpy(out, Rat(p.num[k]), cur);
    if (k + 1 < p.num.size()) cur = shuffle_s(b, cur, variant);
  }
  scale(out, Rat(1) / Rat(p.den));
  return out;
}

// Matrix of e_n(j) / tail variant on the full word basis of the given weight.
inline Matrix idempotent_e(const GradedBasis& b, int j, int weight,
                           ShuffleVariant variant = ShuffleVariant::plain) {
  require(weight >= 1, "EmptyWord", "idempotents act on weight >= 1");
  auto words = enumerate_words(b, weight);
  std::map<Word, int> index;
  for (int i = 0; i < (int)words.size(); ++i) index[words[i]] = i;
  Matrix m((int)words.size(), (int)words.size());
  for (int col = 0; col < (int)words.size(); ++col) {
    LinComb v{{words[col], Rat(1)}};
    for (const auto& [w, c] : apply_idempotent(b, j, v, variant))
      m.set(index.at(w), col, c);
  }
  return m;
}

// ---------------------------------------------------------------------------
// The operator applied value-wise to a derivation given by its values on
// generators: (s_bar xi)(g) = s(xi(g)).

using DerivationCochain = std::vector<LinComb>;  // one value per generator

inline DerivationCochain s_bar(const GradedBasis& b,
                               const DerivationCochain& xi) {
  DerivationCochain out(xi.size());
  for (size_t g = 0; g < xi.size(); ++g)
    if (!xi[g].empty()) out[g] = shuffle_s(b, xi[g]);
  return out;
}

}  // namespace infty
