// Generic machinery for finite windows of cochain complexes whose basis
// elements are either words or (generator, word) pairs: window assembly from
// a basis enumeration and a differential rule, the d^2 = 0 check, and exact
// cohomology dimensions per degree.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "infty/grading.hpp"

namespace infty {

// Uniform cochain coordinates: (generator index or -1, word).
using CKey = std::pair<int, Word>;
using CVec = std::map<CKey, Rat>;

inline void add_term(CVec& v, const CKey& k, const Rat& a) {
  if (a == 0) return;
  auto it = v.find(k);
  if (it == v.end()) {
    v.emplace(k, a);
  } else {
    it->second += a;
    if (it->second == 0) v.erase(it);
  }
}

inline void axpy(CVec& y, const Rat& a, const CVec& x) {
  if (a == 0) return;
  for (const auto& [k, c] : x) add_term(y, k, a * c);
}

inline CVec word_cvec(const LinComb& lc, int g = -1) {
  CVec v;
  for (const auto& [w, c] : lc) v.emplace(CKey{g, w}, c);
  return v;
}

// A finite window of a cochain complex.  Bases are kept for degrees
// [lo-1, hi+1] and differential matrices for [lo-1, hi], so that exact
// cohomology dimensions are available for every degree in [lo, hi].
struct ComplexWindow {
  std::string theory;
  std::string coeff;
  int lo = 0, hi = 0, cap = 0;
  std::map<int, std::vector<CVec>> basis;  // per degree
  std::map<int, Matrix> d;                 // d[n] : C^n -> C^{n+1}
  std::map<int, bool> complete;            // weight-complete basis per degree
  std::map<int, std::vector<std::string>> labels;

  int dim(int n) const {
    auto it = basis.find(n);
    return it == basis.end() ? 0 : (int)it->second.size();
  }

  const Matrix& dmat(int n) const {
    auto it = d.find(n);
    require(it != d.end(), "ValidationError",
            "no differential stored at degree " + std::to_string(n));
    return it->second;
  }

  // dim ker d_n - rank d_{n-1}; refuses windows that are not complexes.
  int cohomology(int n) const {
    require(n >= lo && n <= hi, "ValidationError",
            "degree outside the window");
    return cohomology_dim(dmat(n - 1), dmat(n));
  }

  // True when the cohomology at n is unaffected by the weight cap.
  bool exact_at(int n) const {
    auto f = [&](int k) {
      auto it = complete.find(k);
      return it != complete.end() && it->second;
    };
    return f(n - 1) && f(n) && f(n + 1);
  }
};

// Assembles a window from a basis enumeration and a differential rule.
// The differential of every basis vector must lie in the span of the basis
// one degree up (violations indicate a non-closed subspace and are
// reported as errors).
inline ComplexWindow build_window(
    const std::string& theory, const std::string& coeff, int lo, int hi,
    int cap, const std::function<std::vector<CVec>(int)>& basis_at,
    const std::function<CVec(const CKey&)>& diff,
    const std::function<bool(int)>& complete_at) {
  ComplexWindow w;
  w.theory = theory;
  w.coeff = coeff;
  w.lo = lo;
  w.hi = hi;
  w.cap = cap;
  for (int n = lo - 1; n <= hi + 1; ++n) {
    w.basis[n] = basis_at(n);
    w.complete[n] = complete_at(n);
  }
  for (int n = lo - 1; n <= hi; ++n) {
    const auto& src = w.basis.at(n);
    const auto& dst = w.basis.at(n + 1);
    // Coordinate map over all keys seen in the target basis and in images.
    std::map<CKey, int> key_pos;
    for (const auto& v : dst)
      for (const auto& [k, c] : v)
        if (!key_pos.count(k)) key_pos.emplace(k, (int)key_pos.size());
    std::vector<CVec> images;
    images.reserve(src.size());
    for (const auto& v : src) {
      CVec dv;
      for (const auto& [k, c] : v) axpy(dv, c, diff(k));
      // Truncate words beyond the weight cap; the completeness flags record
      // which degrees are unaffected by this.
      for (auto it = dv.begin(); it != dv.end();)
        it = ((int)it->first.second.size() > cap) ? dv.erase(it)
                                                  : std::next(it);
      for (const auto& [k, c] : dv)
        if (!key_pos.count(k)) key_pos.emplace(k, (int)key_pos.size());
      images.push_back(std::move(dv));
    }
    int ambient = (int)key_pos.size();
    auto coords = [&](const CVec& v) {
      SparseVec sv;
      for (const auto& [k, c] : v) set_entry(sv, key_pos.at(k), c);
      return sv;
    };
    SpanSolver solver(ambient);
    for (const auto& v : dst) solver.insert(coords(v));
    Matrix m((int)dst.size(), (int)src.size());
    for (size_t j = 0; j < images.size(); ++j) {
      SparseVec x;
      require(solver.solve(coords(images[j]), x), "ValidationError",
              theory + ": differential leaves the degree-" +
                  std::to_string(n + 1) + " basis span");
      // x is a combination of the inserted dst vectors.
      for (const auto& [i, c] : x) m.set(i, (int)j, c);
    }
    w.d[n] = std::move(m);
  }
  // The window must be a complex.
  for (int n = lo - 1; n < hi; ++n)
    require((w.d.at(n + 1) * w.d.at(n)).is_zero_matrix(), "CompositionNonzero",
            theory + ": d^2 != 0 between degrees " + std::to_string(n) +
                " and " + std::to_string(n + 2));
  return w;
}

// Matrix of a linear map sending the degree-nA basis of window A into the
// degree-nB basis span of window B.  The rule acts on keys; images outside
// B's span (after cap truncation) are an error.
inline Matrix map_matrix(const ComplexWindow& A, int nA, const ComplexWindow& B,
                         int nB, const std::function<CVec(const CKey&)>& rule) {
  const auto& src = A.basis.at(nA);
  const auto& dst = B.basis.at(nB);
  std::map<CKey, int> key_pos;
  for (const auto& v : dst)
    for (const auto& [k, c] : v)
      if (!key_pos.count(k)) key_pos.emplace(k, (int)key_pos.size());
  std::vector<CVec> images;
  for (const auto& v : src) {
    CVec im;
    for (const auto& [k, c] : v) axpy(im, c, rule(k));
    for (auto it = im.begin(); it != im.end();)
      it = ((int)it->first.second.size() > B.cap) ? im.erase(it)
                                                  : std::next(it);
    for (const auto& [k, c] : im)
      if (!key_pos.count(k)) key_pos.emplace(k, (int)key_pos.size());
    images.push_back(std::move(im));
  }
  auto coords = [&](const CVec& v) {
    SparseVec sv;
    for (const auto& [k, c] : v) set_entry(sv, key_pos.at(k), c);
    return sv;
  };
  SpanSolver solver((int)key_pos.size());
  for (const auto& v : dst) solver.insert(coords(v));
  Matrix m((int)dst.size(), (int)src.size());
  for (size_t j = 0; j < images.size(); ++j) {
    SparseVec x;
    require(solver.solve(coords(images[j]), x), "ValidationError",
            "map image leaves the target basis span at degree " +
                std::to_string(nB));
    for (const auto& [i, c] : x) m.set(i, (int)j, c);
  }
  return m;
}

// Rank of the map induced on cohomology by a chain map M : A^n -> B^n,
// given d_A : A^n -> A^{n+1} and d_B : B^{n-1} -> B^n.
inline int induced_rank(const Matrix& dA_out, const Matrix& dB_in,
                        const Matrix& M) {
  SpanSolver solver(M.rows);
  for (const auto& c : dB_in.col) solver.insert(c);
  int r0 = solver.rank();
  for (const auto& z : rank_and_kernel(dA_out).kernel)
    solver.insert(M.apply(z));
  return solver.rank() - r0;
}

// Picks an independent spanning subset of the given vectors (in insertion
// order), returning the selected vectors themselves.
inline std::vector<CVec> independent_subset(const std::vector<CVec>& vecs) {
  std::map<CKey, int> key_pos;
  for (const auto& v : vecs)
    for (const auto& [k, c] : v)
      if (!key_pos.count(k)) key_pos.emplace(k, (int)key_pos.size());
  SpanSolver solver((int)key_pos.size());
  std::vector<CVec> out;
  for (const auto& v : vecs) {
    SparseVec sv;
    for (const auto& [k, c] : v) set_entry(sv, key_pos.at(k), c);
    int before = solver.rank();
    solver.insert(sv);
    if (solver.rank() > before) out.push_back(v);
  }
  return out;
}

}  // namespace infty
