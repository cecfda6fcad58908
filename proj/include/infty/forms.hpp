// Differential calculus on the three pro-free geometries (symmetric,
// tensor and free Lie algebra over a graded letter basis): 0- and 1-forms
// in first-letter coordinates, the de Rham differential, Lie derivative and
// contraction along a vector field, the comparison maps between the
// geometries, the potential-to-commutator map on closed 2-forms, and the
// bilinear-form dictionary for order-zero 2-forms.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "infty/complex.hpp"
#include "infty/shuffle.hpp"

namespace infty {

enum class Geometry { com, ass, lie };

inline std::string geometry_str(Geometry g) {
  switch (g) {
    case Geometry::com: return "com";
    case Geometry::ass: return "ass";
    default: return "lie";
  }
}

// ---------------------------------------------------------------------------
// Vector fields: a field is determined by its values on letters; it acts on
// words as a graded derivation.

struct VectorField {
  std::vector<LinComb> img;  // value on each letter, as tensor words
  int deg = 0;               // homogeneous degree shift of the field
};

inline void validate_field(const GradedBasis& b, const VectorField& xi) {
  require((int)xi.img.size() == b.size(), "ValidationError",
          "field must assign a value to every letter");
  for (int g = 0; g < b.size(); ++g)
    for (const auto& [w, c] : xi.img[g]) {
      require(!w.empty(), "EmptyWord", "field values are nonempty words");
      require(word_wdeg(b, w) == b.wdeg(g) + xi.deg, "ValidationError",
              "field value degree does not match the declared shift");
    }
}

// Derivation extension to a tensor word.
inline LinComb field_apply(const GradedBasis& b, const VectorField& xi,
                           const Word& w) {
  LinComb out;
  long prefix = 0;
  for (size_t l = 0; l < w.size(); ++l) {
    for (const auto& [u, c] : xi.img[w[l]]) {
      Word t(w.begin(), w.begin() + l);
      t.insert(t.end(), u.begin(), u.end());
      t.insert(t.end(), w.begin() + l + 1, w.end());
      add_term(out, t, Rat(sign_pow((long)xi.deg * prefix)) * c);
    }
    prefix += b.wdeg(w[l]);
  }
  return out;
}

inline LinComb field_apply(const GradedBasis& b, const VectorField& xi,
                           const LinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x) axpy(out, c, field_apply(b, xi, w));
  return out;
}

inline VectorField field_bracket(const GradedBasis& b, const VectorField& xi,
                                 const VectorField& ga) {
  VectorField out;
  out.deg = xi.deg + ga.deg;
  out.img.resize(b.size());
  Rat sgn(sign_pow((long)xi.deg * ga.deg));
  for (int g = 0; g < b.size(); ++g) {
    axpy(out.img[g], Rat(1), field_apply(b, xi, ga.img[g]));
    axpy(out.img[g], -sgn, field_apply(b, ga, xi.img[g]));
  }
  return out;
}

// The grading field: fixes every letter, so it scales a length-n word by n.
inline VectorField euler_field(const GradedBasis& b) {
  VectorField xi;
  xi.img.resize(b.size());
  for (int g = 0; g < b.size(); ++g) xi.img[g] = LinComb{{Word{g}, Rat(1)}};
  return xi;
}

// The shadow of a field on the symmetric algebra: values symmetrized.
inline LinComb sym_project(const GradedBasis& b, const LinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x) {
    SymWord sw = symmetrize_word(b, w);
    if (!sw.zero) add_term(out, sw.letters, Rat(sw.sign) * c);
  }
  return out;
}

inline VectorField sym_shadow(const GradedBasis& b, const VectorField& xi) {
  VectorField out;
  out.deg = xi.deg;
  out.img.resize(b.size());
  for (int g = 0; g < b.size(); ++g) out.img[g] = sym_project(b, xi.img[g]);
  return out;
}

// ---------------------------------------------------------------------------
// Bases.  A form payload is a CVec.  Keys:
//   tensor / Lie geometry:  0-forms (-1, necklace representative),
//                           1-forms (-1, word x0.y) standing for d(x0).y;
//   symmetric geometry:     0-forms (-1, canonical symmetric word),
//                           1-forms (g, canonical symmetric word y) for d(g).y.
// Lie payloads are stored through their faithful image in the tensor
// picture; their words have free-Lie-algebra tails.

inline std::vector<Word> words_of_length(const GradedBasis& b, int len) {
  return enumerate_words(b, len);
}

// A basis of the length-n slice of the free Lie algebra inside the tensor
// algebra: the primitive (index-1 idempotent) images.
inline std::vector<LinComb> lie_elements(const GradedBasis& b, int len) {
  std::vector<LinComb> out;
  if (len < 1) return out;
  std::vector<CVec> cand;
  for (const auto& w : words_of_length(b, len)) {
    LinComb im = apply_idempotent(b, 1, LinComb{{w, Rat(1)}});
    if (!im.empty()) cand.push_back(word_cvec(im));
  }
  for (const auto& v : independent_subset(cand)) {
    LinComb lc;
    for (const auto& [k, c] : v) lc.emplace(k.second, c);
    out.push_back(std::move(lc));
  }
  return out;
}

inline std::vector<CVec> dr0_basis(const GradedBasis& b, Geometry geom,
                                   int order) {
  std::vector<CVec> out;
  if (order < 0) return out;
  if (geom == Geometry::ass) {
    if (order == 0) {
      out.push_back(CVec{{CKey{-1, Word{}}, Rat(1)}});
      return out;
    }
    std::map<Word, bool> seen;
    for (const auto& w : words_of_length(b, order)) {
      Necklace nk = necklace_canonical(b, w);
      if (nk.zero || seen.count(nk.rep)) continue;
      seen.emplace(nk.rep, true);
      out.push_back(CVec{{CKey{-1, nk.rep}, Rat(1)}});
    }
    return out;
  }
  if (geom == Geometry::com) {
    if (order == 0) {
      out.push_back(CVec{{CKey{-1, Word{}}, Rat(1)}});
      return out;
    }
    for (const auto& w : words_of_length(b, order)) {
      if (!std::is_sorted(w.begin(), w.end())) continue;
      SymWord sw = symmetrize_word(b, w);
      if (!sw.zero) out.push_back(CVec{{CKey{-1, w}, Rat(1)}});
    }
    return out;
  }
  // Lie geometry: necklace classes of products of two Lie elements.
  std::vector<CVec> cand;
  for (int a = 1; a < order; ++a) {
    auto left = lie_elements(b, a);
    auto right = lie_elements(b, order - a);
    for (const auto& u : left)
      for (const auto& v : right) {
        LinComb prod;
        for (const auto& [uw, uc] : u)
          for (const auto& [vw, vc] : v) {
            Word t = uw;
            t.insert(t.end(), vw.begin(), vw.end());
            add_term(prod, t, uc * vc);
          }
        LinComb im = necklace_project(b, prod);
        if (!im.empty()) cand.push_back(word_cvec(im));
      }
  }
  return independent_subset(cand);
}

inline std::vector<CVec> dr1_basis(const GradedBasis& b, Geometry geom,
                                   int order) {
  std::vector<CVec> out;
  if (order < 0) return out;
  if (geom == Geometry::ass) {
    for (const auto& w : words_of_length(b, order + 1))
      out.push_back(CVec{{CKey{-1, w}, Rat(1)}});
    return out;
  }
  if (geom == Geometry::com) {
    for (int g = 0; g < b.size(); ++g)
      for (const auto& y : words_of_length(b, order)) {
        if (!std::is_sorted(y.begin(), y.end())) continue;
        SymWord sw = symmetrize_word(b, y);
        if (!sw.zero) out.push_back(CVec{{CKey{g, y}, Rat(1)}});
      }
    return out;
  }
  std::vector<CVec> cand;
  for (int g = 0; g < b.size(); ++g)
    for (const auto& v : lie_elements(b, order)) {
      CVec x;
      for (const auto& [vw, vc] : v) {
        Word t{g};
        t.insert(t.end(), vw.begin(), vw.end());
        add_term(x, CKey{-1, t}, vc);
      }
      if (!x.empty()) cand.push_back(std::move(x));
    }
  return independent_subset(cand);
}

// ---------------------------------------------------------------------------
// The differential on 0-forms, in first-letter coordinates.

inline CVec form_d0_key(const GradedBasis& b, Geometry geom, const CKey& k) {
  if (k.second.empty()) return {};
  if (geom == Geometry::com) {
    // d distributes over the letters of the symmetric word.
    CVec out;
    const Word& u = k.second;
    long prefix = 0;
    for (size_t l = 0; l < u.size(); ++l) {
      Word rest(u.begin(), u.begin() + l);
      rest.insert(rest.end(), u.begin() + l + 1, u.end());
      add_term(out, CKey{u[l], rest},
               Rat(sign_pow((long)b.wdeg(u[l]) * prefix)));
      prefix += b.wdeg(u[l]);
    }
    return out;
  }
  // Tensor picture: d is the rotation norm on any orbit representative.
  return word_cvec(act_N(b, LinComb{{k.second, Rat(1)}}));
}

inline CVec form_d0(const GradedBasis& b, Geometry geom, const CVec& x) {
  CVec out;
  for (const auto& [k, c] : x) axpy(out, c, form_d0_key(b, geom, k));
  return out;
}

// ---------------------------------------------------------------------------
// Lie derivative and contraction.

inline CVec lie_derivative0(const GradedBasis& b, Geometry geom,
                            const VectorField& xi, const CVec& x) {
  CVec out;
  for (const auto& [k, c] : x) {
    LinComb im = field_apply(b, geom == Geometry::com ? sym_shadow(b, xi) : xi,
                             k.second);
    im = (geom == Geometry::com) ? sym_project(b, im) : necklace_project(b, im);
    if (geom == Geometry::com) {
      for (const auto& [w, cc] : im) add_term(out, CKey{-1, w}, c * cc);
    } else {
      axpy(out, c, word_cvec(im));
    }
  }
  return out;
}

// On a 1-form d(x0).y the derivative differentiates the covector letter —
// redistributing d over the letters of the value by cyclic rotation — and
// the function part by the derivation rule.
inline CVec lie_derivative1(const GradedBasis& b, Geometry geom,
                            const VectorField& xi, const CVec& x) {
  CVec out;
  Rat lead(sign_pow(xi.deg));
  if (geom != Geometry::com) {
    for (const auto& [k, c] : x) {
      int x0 = k.second.at(0);
      Word y(k.second.begin() + 1, k.second.end());
      for (const auto& [u, cc] : xi.img[x0]) {
        Word uy = u;
        uy.insert(uy.end(), y.begin(), y.end());
        LinComb cur{{uy, lead * cc * c}};
        for (size_t r = 0; r < u.size(); ++r) {
          axpy(out, Rat(1), word_cvec(cur));
          if (r + 1 < u.size()) cur = act_z(b, cur);
        }
      }
      Rat tail(sign_pow((long)xi.deg * (b.wdeg(x0) - 1)));
      for (const auto& [u, cc] : field_apply(b, xi, y)) {
        Word t{x0};
        t.insert(t.end(), u.begin(), u.end());
        add_term(out, CKey{-1, t}, tail * cc * c);
      }
    }
    return out;
  }
  VectorField sh = sym_shadow(b, xi);
  for (const auto& [k, c] : x) {
    int g = k.first;
    const Word& y = k.second;
    for (const auto& [u, cc] : xi.img[g]) {
      long prefix = 0;
      for (size_t l = 0; l < u.size(); ++l) {
        Word rest(u.begin(), u.begin() + l);
        rest.insert(rest.end(), u.begin() + l + 1, u.end());
        rest.insert(rest.end(), y.begin(), y.end());
        SymWord sw = symmetrize_word(b, rest);
        if (!sw.zero)
          add_term(out, CKey{u[l], sw.letters},
                   lead * Rat(sign_pow((long)b.wdeg(u[l]) * prefix) * sw.sign) *
                       cc * c);
        prefix += b.wdeg(u[l]);
      }
    }
    Rat tail(sign_pow((long)xi.deg * (b.wdeg(g) - 1)));
    for (const auto& [u, cc] : sym_project(b, field_apply(b, sh, y)))
      add_term(out, CKey{g, u}, tail * cc * c);
  }
  return out;
}

// Contraction of a 1-form: substitute the field into the covector letter.
// Contraction of a 0-form is zero.
inline CVec contraction1(const GradedBasis& b, Geometry geom,
                         const VectorField& xi, const CVec& x) {
  CVec out;
  for (const auto& [k, c] : x) {
    if (geom != Geometry::com) {
      int x0 = k.second.at(0);
      Word y(k.second.begin() + 1, k.second.end());
      LinComb prod;
      for (const auto& [u, cc] : xi.img[x0]) {
        Word t = u;
        t.insert(t.end(), y.begin(), y.end());
        add_term(prod, t, cc);
      }
      axpy(out, c, word_cvec(necklace_project(b, prod)));
    } else {
      LinComb prod;
      for (const auto& [u, cc] : xi.img[k.first]) {
        Word t = u;
        t.insert(t.end(), k.second.begin(), k.second.end());
        add_term(prod, t, cc);
      }
      for (const auto& [w, cc] : sym_project(b, prod))
        add_term(out, CKey{-1, w}, c * cc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison maps between the geometries.

// Coinvariants-to-invariants on a symmetric word: the sum over all
// permutations with Koszul signs.
inline LinComb sym_to_invariants(const GradedBasis& b, const Word& y) {
  LinComb out;
  if (y.empty()) {
    out.emplace(Word{}, Rat(1));
    return out;
  }
  std::vector<int> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end());
  do {
    long e = 0;
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t bb = a + 1; bb < idx.size(); ++bb)
        if (idx[a] > idx[bb])
          e += (long)b.wdeg(y[idx[a]]) * b.wdeg(y[idx[bb]]);
    Word w;
    for (int i : idx) w.push_back(y[i]);
    add_term(out, w, Rat(sign_pow(e)));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// Projection from the tensor to the symmetric picture (surjective).
inline CVec project_to_com(const GradedBasis& b, int form_degree,
                           const CVec& x) {
  CVec out;
  for (const auto& [k, c] : x) {
    if (form_degree == 0) {
      SymWord sw = symmetrize_word(b, k.second);
      if (!sw.zero) add_term(out, CKey{-1, sw.letters}, Rat(sw.sign) * c);
    } else {
      Word y(k.second.begin() + 1, k.second.end());
      SymWord sw = symmetrize_word(b, y);
      if (!sw.zero)
        add_term(out, CKey{k.second.at(0), sw.letters}, Rat(sw.sign) * c);
    }
  }
  return out;
}

// Embedding of symmetric 1-forms into the tensor picture: the tail is
// summed over all its permutations (injective; the projection back
// multiplies an order-n form by n!).
inline CVec embed_com_dr1(const GradedBasis& b, const CVec& x) {
  CVec out;
  for (const auto& [k, c] : x)
    for (const auto& [w, cc] : sym_to_invariants(b, k.second)) {
      Word t{k.first};
      t.insert(t.end(), w.begin(), w.end());
      add_term(out, CKey{-1, t}, c * cc);
    }
  return out;
}

namespace detail {
inline bool in_span(const std::vector<CVec>& span, const CVec& v) {
  std::map<CKey, int> pos;
  auto note = [&](const CVec& u) {
    for (const auto& [k, c] : u)
      if (!pos.count(k)) pos.emplace(k, (int)pos.size());
  };
  for (const auto& u : span) note(u);
  note(v);
  auto coords = [&](const CVec& u) {
    SparseVec sv;
    for (const auto& [k, c] : u) set_entry(sv, pos.at(k), c);
    return sv;
  };
  SpanSolver solver((int)pos.size());
  for (const auto& u : span) solver.insert(coords(u));
  return solver.contains(coords(v));
}
}  // namespace detail

// Embedding of Lie forms: payloads already live in the tensor picture, so
// the map is the identity after a membership check.
inline CVec embed_lie(const GradedBasis& b, int form_degree, int order,
                      const CVec& x) {
  const auto span = (form_degree == 0) ? dr0_basis(b, Geometry::lie, order)
                                       : dr1_basis(b, Geometry::lie, order);
  require(detail::in_span(span, x), "NotInGeometryImage",
          "payload is not a Lie-geometry form");
  return x;
}

struct FormRep {
  Geometry geom = Geometry::ass;
  int degree = 0;  // form degree: 0 or 1
  int order = 0;
  CVec payload;
};

// Dispatcher for the comparison maps; 'l' embeds Lie into tensor, 'p'
// projects tensor onto symmetric, 'j' embeds symmetric 1-forms into tensor.
inline FormRep comparison_map(const GradedBasis& b, char which,
                              const FormRep& x) {
  FormRep out = x;
  if (which == 'l') {
    require(x.geom == Geometry::lie, "IllegalPair",
            "the Lie embedding takes Lie forms");
    out.geom = Geometry::ass;
    out.payload = embed_lie(b, x.degree, x.order, x.payload);
    return out;
  }
  if (which == 'p') {
    require(x.geom == Geometry::ass, "IllegalPair",
            "the symmetrizing projection takes tensor forms");
    out.geom = Geometry::com;
    out.payload = project_to_com(b, x.degree, x.payload);
    return out;
  }
  if (which == 'j') {
    require(x.geom == Geometry::com && x.degree == 1, "IllegalPair",
            "the invariant embedding takes symmetric 1-forms");
    out.geom = Geometry::ass;
    out.payload = embed_com_dr1(b, x.payload);
    return out;
  }
  require(false, "IllegalPair", "unknown comparison map");
  return out;
}

// ---------------------------------------------------------------------------
// Closed 2-forms as potentials, and the bilinear-form dictionary.

// Image of the closed 2-form d(alpha) in the commutator subspace: one minus
// a rotation, applied to the potential's coordinates after routing into the
// tensor picture.  Exact potentials (rotation norms) map to zero.
inline LinComb zeta(const GradedBasis& b, Geometry geom, const CVec& alpha) {
  CVec routed = alpha;
  if (geom == Geometry::com) routed = embed_com_dr1(b, alpha);
  if (geom == Geometry::lie) {
    int order = -1;
    for (const auto& [k, c] : alpha) order = (int)k.second.size() - 1;
    routed = embed_lie(b, 1, order, alpha);
  }
  LinComb out;
  for (const auto& [k, c] : routed) {
    LinComb one{{k.second, c}};
    axpy(out, Rat(1), one);
    axpy(out, Rat(-1), act_z(b, one));
  }
  return out;
}

// The bilinear form attached to an order-zero 2-form sum a_ij dx_i dx_j on
// letters of the given degrees:
//   <x_k, x_l> = (-1)^{|x_l|(|x_k|+1)} a_lk - (-1)^{|x_k|} a_kl.
inline Matrix bilinear_form(const Matrix& a, const std::vector<int>& degs) {
  int n = a.rows;
  require(a.cols == n && (int)degs.size() == n, "ValidationError",
          "coefficient matrix must be square over the letter basis");
  Matrix m(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      Rat v = Rat(sign_pow((long)degs[l] * (degs[k] + 1))) * a.get(l, k) -
              Rat(sign_pow(degs[k])) * a.get(k, l);
      m.set(k, l, v);
    }
  return m;
}

// The same dictionary from a 1-form potential: the potential must have
// order zero after routing (all words of length two).
inline Matrix closed2_bilinear(const GradedBasis& b, Geometry geom,
                               const CVec& alpha) {
  CVec routed = alpha;
  if (geom == Geometry::com) routed = embed_com_dr1(b, alpha);
  if (geom == Geometry::lie) routed = embed_lie(b, 1, 1, alpha);
  Matrix a(b.size(), b.size());
  for (const auto& [k, c] : routed) {
    require((int)k.second.size() == 2, "NonzeroOrder",
            "the bilinear dictionary needs an order-zero 2-form");
    // d turns the potential coordinate x_i (x) x_j into a 2-form
    // coefficient with a suspension sign on the first letter.
    Rat cur = a.get(k.second[0], k.second[1]);
    a.set(k.second[0], k.second[1],
          cur + Rat(sign_pow(b.wdeg(k.second[0]) - 1)) * c);
  }
  std::vector<int> degs(b.size());
  for (int g = 0; g < b.size(); ++g) degs[g] = b.wdeg(g);
  return bilinear_form(a, degs);
}

inline bool nondegenerate(const Matrix& m) {
  return m.rows == m.cols && rank(m) == m.rows;
}

}  // namespace infty
