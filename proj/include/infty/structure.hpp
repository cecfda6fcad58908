// Homotopy algebra structures encoded as degree +1 derivations on word
// algebras: validation of the square-zero condition, commutative
// (primitivity) and unitality checks, conversions between the associative,
// commutative and Lie flavours, and morphism verification.
#pragma once

#include <string>
#include <vector>

#include "infty/grading.hpp"
#include "infty/shuffle.hpp"

namespace infty {

enum class Kind { Ainf, Cinf, Linf };

inline std::string kind_str(Kind k) {
  switch (k) {
    case Kind::Ainf: return "Ainf";
    case Kind::Cinf: return "Cinf";
    default: return "Linf";
  }
}

// The structure is the collection of weight components of a derivation m of
// degree +1: comp[g][i] is the weight-i value on generator g.  Tensor words
// for the associative/commutative kinds, symmetric canonical words for the
// Lie kind.
struct Structure {
  Kind kind = Kind::Ainf;
  GradedBasis basis;
  int max_arity = 0;
  std::vector<std::map<int, LinComb>> comp;

  LinComb value(int g) const {
    LinComb v;
    if (g < (int)comp.size())
      for (const auto& [i, lc] : comp[g]) axpy(v, Rat(1), lc);
    return v;
  }

  void validate_degrees() const {
    basis.check_names_unique();
    for (int g = 0; g < (int)comp.size(); ++g)
      for (const auto& [i, lc] : comp[g])
        for (const auto& [w, c] : lc) {
          require((int)w.size() == i, "LengthMismatch",
                  "component stored at the wrong weight");
          require(word_wdeg(basis, w) == basis.wdeg(g) + 1, "DegreeMismatch",
                  "value on '" + basis.names[g] + "' is not of degree +1");
        }
  }
};

struct Violation {
  int generator = -1;
  int weight = 0;
  LinComb witness;
};

struct Report {
  bool ok = true;
  std::vector<Violation> violations;
  bool phi1_chain_map = true;  // only meaningful for morphism checks
};

// Extends m to a word by the graded Leibniz rule; the sign is the parity of
// the degree of the untouched prefix.  For the Lie kind the result is
// canonicalized into symmetric words.
inline LinComb apply_m(const Structure& S, const Word& w) {
  const GradedBasis& b = S.basis;
  LinComb out;
  long prefix_deg = 0;
  static const std::map<int, LinComb> kEmpty;
  for (size_t j = 0; j < w.size(); ++j) {
    Rat sgn(sign_pow(prefix_deg));
    const auto& per_g =
        (w[j] < (int)S.comp.size()) ? S.comp[w[j]] : kEmpty;
    for (const auto& [i, lc] : per_g)
      for (const auto& [mw, c] : lc) {
        Word r(w.begin(), w.begin() + j);
        r.insert(r.end(), mw.begin(), mw.end());
        r.insert(r.end(), w.begin() + j + 1, w.end());
        if (S.kind == Kind::Linf) {
          SymWord sw = symmetrize_word(b, r);
          if (!sw.zero) add_term(out, sw.letters, Rat(sw.sign) * sgn * c);
        } else {
          add_term(out, r, sgn * c);
        }
      }
    prefix_deg += b.wdeg(w[j]);
  }
  return out;
}

inline LinComb apply_m(const Structure& S, const LinComb& x) {
  LinComb out;
  for (const auto& [w, c] : x) axpy(out, c, apply_m(S, w));
  return out;
}

// m(m(g)) must vanish in every output weight up to the cap.
inline Report validate_square_zero(const Structure& S, int cap) {
  require(cap >= 1, "ValidationError", "weight cap must be at least 1");
  S.validate_degrees();
  Report rep;
  for (int g = 0; g < (int)S.comp.size(); ++g) {
    LinComb mm = apply_m(S, S.value(g));
    std::map<int, LinComb> by_weight;
    for (const auto& [w, c] : mm)
      if ((int)w.size() <= cap) add_term(by_weight[(int)w.size()], w, c);
    for (auto& [wt, witness] : by_weight)
      if (!witness.empty()) {
        rep.ok = false;
        rep.violations.push_back({g, wt, std::move(witness)});
      }
  }
  return rep;
}

// The commutative kinds are exactly those whose values are primitive
// (Lie) elements, i.e. fixed by the 2-eigenspace idempotent.
inline Report check_cinfty(const Structure& S) {
  require(S.kind != Kind::Linf, "WrongKind",
          "primitivity check applies to the associative kinds");
  Report rep;
  for (int g = 0; g < (int)S.comp.size(); ++g)
    for (const auto& [i, lc] : S.comp[g]) {
      LinComb diff = apply_idempotent(S.basis, 1, lc);
      axpy(diff, Rat(-1), lc);
      if (!diff.empty()) {
        rep.ok = false;
        rep.violations.push_back({g, i, std::move(diff)});
      }
    }
  return rep;
}

// The derivation generated by the unit alone: g |-> [tau, g], and on tau
// itself additionally -tau^2.
inline LinComb unit_derivation_value(const GradedBasis& b, int tau, int g) {
  LinComb v;
  long dt = b.wdeg(tau), dg = b.wdeg(g);
  add_term(v, Word{tau, g}, Rat(1));
  add_term(v, Word{g, tau}, -Rat(sign_pow(dt * dg)));
  if (g == tau) add_term(v, Word{tau, tau}, Rat(-1));
  return v;
}

// A unital structure must be the unit derivation plus tau-free remainders.
inline Report check_unital(const Structure& S) {
  int tau = S.basis.unit;
  require(tau >= 0, "NoUnitDeclared", "no unit generator declared");
  Report rep;
  for (int g = 0; g < S.basis.size(); ++g) {
    LinComb rest = S.value(g);
    axpy(rest, Rat(-1), unit_derivation_value(S.basis, tau, g));
    LinComb offending;
    for (const auto& [w, c] : rest)
      if (std::find(w.begin(), w.end(), tau) != w.end())
        add_term(offending, w, c);
    if (!offending.empty()) {
      rep.ok = false;
      int wt = (int)offending.begin()->first.size();
      rep.violations.push_back({g, wt, std::move(offending)});
    }
  }
  return rep;
}

// Conversion functors: commutative -> associative is a relabelling;
// associative -> Lie symmetrizes every value into the quotient of
// symmetric words.
inline Structure convert(const Structure& S, Kind target) {
  bool legal = (S.kind == Kind::Cinf && target == Kind::Ainf) ||
               (S.kind == Kind::Cinf && target == Kind::Linf) ||
               (S.kind == Kind::Ainf && target == Kind::Linf);
  require(legal, "IllegalDirection",
          "conversion " + kind_str(S.kind) + " -> " + kind_str(target) +
              " is not defined");
  Structure out = S;
  out.kind = target;
  if (target == Kind::Linf) {
    for (auto& per_g : out.comp)
      for (auto& [i, lc] : per_g) {
        LinComb sym;
        for (const auto& [w, c] : lc) {
          SymWord sw = symmetrize_word(S.basis, w);
          if (!sw.zero) add_term(sym, sw.letters, Rat(sw.sign) * c);
        }
        lc = std::move(sym);
      }
    for (auto& per_g : out.comp)
      for (auto it = per_g.begin(); it != per_g.end();)
        it = it->second.empty() ? per_g.erase(it) : std::next(it);
    int cap = 1;
    for (const auto& per_g : out.comp)
      for (const auto& [i, lc] : per_g) cap = std::max(cap, 2 * i - 1);
    Report r = validate_square_zero(out, cap);
    require(r.ok, "CompositionNonzero",
            "conversion produced a structure violating m^2 = 0");
  }
  return out;
}

// A morphism is the dual algebra homomorphism, recorded by its values on
// the generators of `from` as word combinations over `to`.
struct Morphism {
  std::vector<std::map<int, LinComb>> comp;  // comp[g][weight]

  LinComb value(int g) const {
    LinComb v;
    if (g < (int)comp.size())
      for (const auto& [i, lc] : comp[g]) axpy(v, Rat(1), lc);
    return v;
  }
};

// Multiplicative extension of a degree-0 map to whole words.
inline LinComb apply_phi(const Morphism& phi, const Word& w, int cap) {
  LinComb acc{{Word{}, Rat(1)}};
  for (int g : w) {
    LinComb nxt;
    LinComb vg = phi.value(g);
    for (const auto& [u, cu] : acc)
      for (const auto& [v, cv] : vg) {
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        if ((int)uv.size() <= cap) add_term(nxt, uv, cu * cv);
      }
    acc = std::move(nxt);
  }
  return acc;
}

inline LinComb apply_phi(const Morphism& phi, const LinComb& x, int cap) {
  LinComb out;
  for (const auto& [w, c] : x) axpy(out, c, apply_phi(phi, w, cap));
  return out;
}

// Checks phi(m_from(g)) = m_to(phi(g)) on every generator up to the weight
// cap; also flags whether the weight-1 part alone is a chain map.
inline Report check_morphism(const Morphism& phi, const Structure& from,
                             const Structure& to, int cap) {
  Report rep;
  for (int g = 0; g < from.basis.size(); ++g) {
    // Degree preservation of the values.
    static const std::map<int, LinComb> kEmpty;
    const auto& per_g = g < (int)phi.comp.size() ? phi.comp[g] : kEmpty;
    for (const auto& [i, lc] : per_g)
      for (const auto& [w, c] : lc)
        require(word_wdeg(to.basis, w) == from.basis.wdeg(g), "DegreeMismatch",
                "morphism value on '" + from.basis.names[g] +
                    "' is not of degree 0");
    LinComb lhs = apply_phi(phi, from.value(g), cap);
    LinComb rhs = apply_m(to, phi.value(g));
    LinComb diff = lhs;
    axpy(diff, Rat(-1), rhs);
    std::map<int, LinComb> by_weight;
    for (const auto& [w, c] : diff)
      if ((int)w.size() <= cap) add_term(by_weight[(int)w.size()], w, c);
    for (auto& [wt, witness] : by_weight)
      if (!witness.empty()) {
        rep.ok = false;
        if (wt == 1) rep.phi1_chain_map = false;
        rep.violations.push_back({g, wt, std::move(witness)});
      }
  }
  return rep;
}

}  // namespace infty
