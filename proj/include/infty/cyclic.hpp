// The cyclic theories: the coinvariant (necklace) complex with the induced
// Leibniz differential, the two-column-periodic bicomplex with horizontal
// maps 1-z and N, the Connes complex with horizontal B' = Nh(1-z) and its
// normalised variant, the periodicity maps S/I/B, the cyclic Harrison
// complex as an eigenspace of necklaces, and the normalised cyclic
// subcomplex with its inclusion and field projection.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infty/hochschild.hpp"

namespace infty {

// ---------------------------------------------------------------------------
// The coinvariant (necklace) complex.

// The Leibniz differential descends to coinvariants because it commutes
// with 1-z up to the sign identity b'(1-z) = -(1-z)b.
inline LinComb cyclic_bprime(const Structure& S, const Word& w) {
  return necklace_project(S.basis, apply_m(S, w));
}

// Canonical necklace representatives of the given total degree.
inline std::vector<Word> necklaces_of_degree(const GradedBasis& b, int deg,
                                             int cap) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (const auto& w : words_of_degree(b, deg, cap)) {
    Necklace nk = necklace_canonical(b, w);
    if (nk.zero) continue;
    if (seen.insert(nk.rep).second) out.push_back(nk.rep);
  }
  return out;
}

inline ComplexWindow cyclic_window(const Structure& S, int lo, int hi,
                                   int cap) {
  require(S.kind != Kind::Linf, "WrongKind",
          "the cyclic complex lives on tensor words");
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  return build_window(
      "cyclic", "none", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> out;
        for (const auto& w : necklaces_of_degree(b, n + 1, cap))
          out.push_back(CVec{{CKey{-1, w}, Rat(1)}});
        return out;
      },
      [&](const CKey& k) { return word_cvec(cyclic_bprime(S, k.second)); },
      word_completeness(b, cap));
}

// ---------------------------------------------------------------------------
// Bicomplex windows.  Column complexes are indexed by the total degree, so
// horizontal maps raise the column and the total degree by one.

struct BicomplexWindow {
  std::string theory;
  int lo = 0, hi = 0, cap = 0;
  std::map<int, ComplexWindow> columns;
  // (col, n): matrix of the horizontal map col^n -> (col+1)^{n+1}.
  std::map<std::pair<int, int>, Matrix> horiz;
  ComplexWindow total;
};

inline void require_connective(const Structure& S) {
  require(S.basis.connective(), "ValidationError",
          "bicomplex totalization needs a connective basis");
}

// Columns alternate (b) ->(1-z) (b') ->(N) (b) -> ..., with the word slice
// of weight-degree n+1-col sitting in total degree n.
inline BicomplexWindow tsygan_window(const Structure& S, int lo, int hi,
                                     int cap) {
  require(S.kind != Kind::Linf, "WrongKind",
          "the cyclic bicomplex lives on tensor words");
  require_connective(S);
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  BicomplexWindow bw;
  bw.theory = "tsygan";
  bw.lo = lo;
  bw.hi = hi;
  bw.cap = cap;
  auto vert = [&](int col, const Word& w) {
    return (col % 2 == 0) ? hochschild_b_word(S, w) : apply_m(S, w);
  };
  auto hword = [&](int col, const Word& w) {
    LinComb x{{w, Rat(1)}};
    if (col % 2 == 0) {
      LinComb out = x;
      axpy(out, Rat(-1), act_z(b, x));
      return out;
    }
    return act_N(b, x);
  };
  int colmax = hi + 1;
  for (int c = 0; c <= colmax; ++c) {
    bool conn = b.connective();
    bw.columns[c] = build_window(
        "tsygan-col" + std::to_string(c), "none", lo, hi, cap,
        [&](int n) {
          std::vector<CVec> out;
          for (const auto& w : words_of_degree(b, n + 1 - c, cap))
            out.push_back(CVec{{CKey{c, w}, Rat(1)}});
          return out;
        },
        [&](const CKey& k) { return word_cvec(vert(c, k.second), c); },
        [conn, cap, c](int n) { return conn && cap >= n + 1 - c; });
  }
  for (int c = 0; c < colmax; ++c)
    for (int n = lo - 1; n <= hi; ++n)
      bw.horiz[{c, n}] = map_matrix(
          bw.columns.at(c), n, bw.columns.at(c + 1), n + 1,
          [&](const CKey& k) { return word_cvec(hword(c, k.second), c + 1); });
  bw.total = build_window(
      "tsygan", "none", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> out;
        for (int c = 0; c <= std::min(colmax, n); ++c)
          for (const auto& w : words_of_degree(b, n + 1 - c, cap))
            out.push_back(CVec{{CKey{c, w}, Rat(1)}});
        return out;
      },
      [&](const CKey& k) {
        CVec out;
        axpy(out, Rat(1), word_cvec(vert(k.first, k.second), k.first));
        if (k.first < colmax)
          axpy(out, Rat(1),
               word_cvec(hword(k.first, k.second), k.first + 1));
        return out;
      },
      word_completeness(b, cap));
  return bw;
}

// The comparison map from the coinvariant complex onto column 0: x -> N x.
// It satisfies d_total(N x) = -N b'(x), i.e. it is a chain map after the
// alternating-sign twist.
inline Matrix cyclic_to_tsygan(const Structure& S, const ComplexWindow& cyc,
                               const BicomplexWindow& tsy, int n) {
  const GradedBasis& b = S.basis;
  return map_matrix(cyc, n, tsy.total, n, [&](const CKey& k) {
    return word_cvec(act_N(b, LinComb{{k.second, Rat(1)}}), 0);
  });
}

// ---------------------------------------------------------------------------
// The Connes complex.  Columns are copies of the b-complex, the horizontal
// map is B' = N h (1-z) of word degree -1; the normalised variant keeps
// only words with unit-free tails and uses B-bar' = N h.

inline LinComb drop_empty(LinComb x) {
  x.erase(Word{});
  return x;
}

// B' on a single word (the unital homotopy h strips a leading unit letter).
inline LinComb connes_Bprime(const Structure& S, const Word& w,
                             bool normalised) {
  const GradedBasis& b = S.basis;
  LinComb x{{w, Rat(1)}};
  if (!normalised) axpy(x, Rat(-1), act_z(b, x));
  LinComb hx = drop_empty(contracting_h(S, x));
  LinComb out;
  for (const auto& [u, c] : hx)
    axpy(out, c, act_N(b, LinComb{{u, Rat(1)}}));
  return out;
}

// Projection onto words with unit-free tails.
inline LinComb normalised_part(const Structure& S, const LinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x)
    if (is_normalised(S, LinComb{{w, Rat(1)}})) add_term(out, w, c);
  return out;
}

inline BicomplexWindow connes_window(const Structure& S, int lo, int hi,
                                     int cap, bool normalised = false) {
  require(S.kind != Kind::Linf, "WrongKind",
          "the Connes complex lives on tensor words");
  require_unital(S);
  require_connective(S);
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  int tau = S.basis.unit;
  BicomplexWindow bw;
  bw.theory = normalised ? "connes-normalised" : "connes";
  bw.lo = lo;
  bw.hi = hi;
  bw.cap = cap;
  auto words_at = [&](int deg) {
    std::vector<Word> out;
    for (const auto& w : words_of_degree(b, deg, cap)) {
      if (normalised) {
        bool ok = true;
        for (size_t k = 1; k < w.size(); ++k)
          if (w[k] == tau) ok = false;
        if (!ok) continue;
      }
      out.push_back(w);
    }
    return out;
  };
  auto vert = [&](const Word& w) {
    LinComb d = hochschild_b_word(S, w);
    return normalised ? normalised_part(S, d) : d;
  };
  int colmax = (hi + 1) / 2;
  for (int c = 0; c <= colmax; ++c) {
    bool conn = b.connective();
    bw.columns[c] = build_window(
        bw.theory + "-col" + std::to_string(c), "none", lo, hi, cap,
        [&](int n) {
          std::vector<CVec> out;
          for (const auto& w : words_at(n + 1 - 2 * c))
            out.push_back(CVec{{CKey{c, w}, Rat(1)}});
          return out;
        },
        [&](const CKey& k) { return word_cvec(vert(k.second), c); },
        [conn, cap, c](int n) { return conn && cap >= n + 1 - 2 * c; });
  }
  for (int c = 0; c < colmax; ++c)
    for (int n = lo - 1; n <= hi; ++n)
      bw.horiz[{c, n}] = map_matrix(
          bw.columns.at(c), n, bw.columns.at(c + 1), n + 1, [&](const CKey& k) {
            return word_cvec(connes_Bprime(S, k.second, normalised), c + 1);
          });
  bw.total = build_window(
      bw.theory, "none", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> out;
        for (int c = 0; c <= colmax && 2 * c <= n; ++c)
          for (const auto& w : words_at(n + 1 - 2 * c))
            out.push_back(CVec{{CKey{c, w}, Rat(1)}});
        return out;
      },
      [&](const CKey& k) {
        CVec out;
        axpy(out, Rat(1), word_cvec(vert(k.second), k.first));
        if (k.first < colmax)
          axpy(out, Rat(1),
               word_cvec(connes_Bprime(S, k.second, normalised), k.first + 1));
        return out;
      },
      word_completeness(b, cap));
  return bw;
}

// ---------------------------------------------------------------------------
// Periodicity maps.

struct PeriodicityMaps {
  // I : cyclic^n -> Hochschild^n, x -> N x.
  std::map<int, Matrix> I;
  // B : Hochschild^n -> cyclic^{n-1}, x -> -(necklace class of h((1-z)x)).
  std::map<int, Matrix> B;
  // S : Tsygan total^n -> total^{n+2}, the double-column shift.
  std::map<int, Matrix> Smap;
};

inline PeriodicityMaps periodicity_maps(const Structure& St,
                                        const ComplexWindow& cyc,
                                        const ComplexWindow& hoch,
                                        const BicomplexWindow& tsy) {
  require_unital(St);
  const GradedBasis& b = St.basis;
  PeriodicityMaps out;
  auto Bword = [&](const Word& w) {
    LinComb x{{w, Rat(1)}};
    axpy(x, Rat(-1), act_z(b, x));
    LinComb hx = drop_empty(contracting_h(St, x));
    scale(hx, Rat(-1));
    return necklace_project(b, hx);
  };
  for (int n = cyc.lo; n <= cyc.hi; ++n) {
    out.I[n] = map_matrix(cyc, n, hoch, n, [&](const CKey& k) {
      return word_cvec(act_N(b, LinComb{{k.second, Rat(1)}}));
    });
    if (n - 1 >= cyc.lo - 1)
      out.B[n] = map_matrix(hoch, n, cyc, n - 1, [&](const CKey& k) {
        return word_cvec(Bword(k.second));
      });
    if (n + 2 <= tsy.hi + 1)
      out.Smap[n] = map_matrix(tsy.total, n, tsy.total, n + 2,
                               [&](const CKey& k) {
                                 return CVec{{CKey{k.first + 2, k.second},
                                              Rat(1)}};
                               });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cyclic Harrison: the 4-eigenvalue (j = 2) summand of the necklace
// complex; the idempotent descends to coinvariants since
// e(j)(1-z) = (1-z) e-tilde(j) for j >= 1.

inline ComplexWindow cyclic_harrison_window(const Structure& S, int lo, int hi,
                                            int cap) {
  require(S.kind == Kind::Cinf, "NotCinfty",
          "the cyclic Harrison complex needs a commutative structure");
  {
    Report r = check_cinfty(S);
    require(r.ok, "NotCinfty", "structure values are not primitive");
  }
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  return build_window(
      "cyclic-harrison", "none", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> cand;
        for (const auto& w : necklaces_of_degree(b, n + 1, cap)) {
          LinComb im = necklace_project(
              b, apply_idempotent(b, 2, LinComb{{w, Rat(1)}}));
          if (!im.empty()) cand.push_back(word_cvec(im));
        }
        return independent_subset(cand);
      },
      [&](const CKey& k) { return word_cvec(cyclic_bprime(S, k.second)); },
      word_completeness(b, cap));
}

// ---------------------------------------------------------------------------
// The normalised cyclic subcomplex (unit-free necklaces), the ambient
// complex, and the projection onto the complex of the ground field spanned
// by unit-power necklaces.

struct NormalisedCyclic {
  ComplexWindow sub;    // unit-free necklaces, restricted differential
  ComplexWindow full;   // the ambient necklace complex
  ComplexWindow field;  // unit-power necklaces with the field's product
  std::map<int, Matrix> iota;  // sub^n -> full^n
  std::map<int, Matrix> pi;    // full^n -> field^n
};

inline bool is_minimal(const Structure& S) {
  for (const auto& per_g : S.comp)
    if (per_g.count(1) && !per_g.at(1).empty()) return false;
  return true;
}

inline NormalisedCyclic normalised_cyclic_window(const Structure& S, int lo,
                                                 int hi, int cap) {
  require(S.kind != Kind::Linf, "WrongKind",
          "the cyclic complex lives on tensor words");
  require_unital(S);
  S.validate_degrees();
  const GradedBasis& b = S.basis;
  int tau = S.basis.unit;
  NormalisedCyclic out;
  out.full = cyclic_window(S, lo, hi, cap);
  // The restricted differential must stay inside the unit-free span; the
  // window builder's span check enforces this (it holds for minimal unital
  // structures, where the unit terms assemble into commutators that die in
  // the coinvariants).
  out.sub = build_window(
      "cyclic-normalised", "none", lo, hi, cap,
      [&](int n) {
        std::vector<CVec> o;
        for (const auto& w : necklaces_of_degree(b, n + 1, cap)) {
          bool unit_free = true;
          for (int l : w)
            if (l == tau) unit_free = false;
          if (unit_free) o.push_back(CVec{{CKey{-1, w}, Rat(1)}});
        }
        return o;
      },
      [&](const CKey& k) { return word_cvec(cyclic_bprime(S, k.second)); },
      word_completeness(b, cap));
  // The ground field's necklace complex on the unit alone.
  Structure K;
  K.kind = S.kind;
  K.basis.names = {b.names[tau]};
  K.basis.vdeg = {b.vdeg[tau]};
  K.basis.unit = 0;
  std::vector<VMultiMap> table(3);
  table[2][Word{0, 0}] = SparseVec{{0, Rat(1)}};
  K.comp = dualize_structure(table, K.basis);
  K.max_arity = 2;
  out.field = cyclic_window(K, lo, hi, cap);
  for (int n = lo; n <= hi; ++n) {
    out.iota[n] = map_matrix(out.sub, n, out.full, n,
                             [](const CKey& k) { return CVec{{k, Rat(1)}}; });
    out.pi[n] = map_matrix(out.full, n, out.field, n, [&](const CKey& k) {
      for (int l : k.second)
        if (l != tau) return CVec{};
      return CVec{{CKey{-1, Word(k.second.size(), 0)}, Rat(1)}};
    });
  }
  return out;
}

}  // namespace infty
