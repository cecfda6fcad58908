// Sparse exact linear algebra over the rationals: matrices, incremental
// reduced echelon spans with preimage tracking, rank/kernel/cohomology
// computations, and an independent dense fraction-free rank oracle.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "infty/rational.hpp"

namespace infty {

// A sparse vector is index -> nonzero coefficient; zeros are never stored.
using SparseVec = std::map<int, Rat>;

inline bool is_zero(const SparseVec& v) { return v.empty(); }

inline void set_entry(SparseVec& v, int i, const Rat& c) {
  if (c == 0)
    v.erase(i);
  else
    v[i] = c;
}

inline Rat get_entry(const SparseVec& v, int i) {
  auto it = v.find(i);
  return it == v.end() ? Rat(0) : it->second;
}

// y += a * x
inline void axpy(SparseVec& y, const Rat& a, const SparseVec& x) {
  if (a == 0) return;
  if (&y == &x) {
    Rat f = a + 1;
    if (f == 0)
      y.clear();
    else
      for (auto& [i, c] : y) c *= f;
    return;
  }
  for (const auto& [i, c] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      y.emplace(i, a * c);
    } else {
      it->second += a * c;
      if (it->second == 0) y.erase(it);
    }
  }
}

inline void scale(SparseVec& v, const Rat& a) {
  if (a == 0) {
    v.clear();
    return;
  }
  for (auto& [i, c] : v) c *= a;
}

inline SparseVec scaled(SparseVec v, const Rat& a) {
  scale(v, a);
  return v;
}

inline SparseVec unit_vec(int i) { return SparseVec{{i, Rat(1)}}; }

// Column-sparse matrix: a linear map Q^cols -> Q^rows.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> col;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), col(c) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.col[i] = unit_vec(i);
    return m;
  }

  static Matrix from_dense(const std::vector<std::vector<Rat>>& d) {
    int r = (int)d.size();
    int c = r ? (int)d[0].size() : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) set_entry(m.col[j], i, d[i][j]);
    return m;
  }

  void set(int i, int j, const Rat& c) { set_entry(col[j], i, c); }
  void add(int i, int j, const Rat& c) {
    auto it = col[j].find(i);
    if (it == col[j].end()) {
      if (c != 0) col[j].emplace(i, c);
    } else {
      it->second += c;
      if (it->second == 0) col[j].erase(it);
    }
  }
  Rat get(int i, int j) const { return get_entry(col[j], i); }

  bool is_zero_matrix() const {
    return std::all_of(col.begin(), col.end(),
                       [](const SparseVec& v) { return v.empty(); });
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, c] : x) {
      require(j >= 0 && j < cols, "AmbientMismatch",
              "vector index out of range for matrix apply");
      axpy(y, c, col[j]);
    }
    return y;
  }

  Matrix transpose() const {
    Matrix t(cols, rows);
    for (int j = 0; j < cols; ++j)
      for (const auto& [i, c] : col[j]) t.col[i].emplace(j, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols == b.rows, "AmbientMismatch",
            "matrix composition shape mismatch");
    Matrix m(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) m.col[j] = a.apply(b.col[j]);
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "AmbientMismatch",
            "matrix sum shape mismatch");
    Matrix m = a;
    for (int j = 0; j < b.cols; ++j) axpy(m.col[j], Rat(1), b.col[j]);
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix m = b;
    for (auto& cvec : m.col) scale(cvec, Rat(-1));
    return a + m;
  }

  friend Matrix operator*(const Rat& a, Matrix m) {
    for (auto& cvec : m.col) scale(cvec, a);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
  }
};

// Incremental reduced span of vectors in Q^dim.  Tracks how each reduced
// basis vector is expressed in the inserted originals, so it doubles as a
// kernel extractor and a preimage solver.  Pivot of a new vector: the entry
// with the smallest combined numerator/denominator bit length (ties broken
// by index), which keeps intermediate coefficients small.
struct SpanSolver {
  int dim = 0;
  std::vector<SparseVec> basis;   // reduced, pivot entry normalised to 1
  std::vector<SparseVec> combo;   // basis[k] = sum_j combo[k][j] * inserted_j
  std::vector<int> pivots;        // pivot index of basis[k]
  std::map<int, int> pivot_row;   // pivot index -> position in basis
  std::vector<SparseVec> kernel;  // combinations of inserted vectors = 0
  int n_inserted = 0;

  explicit SpanSolver(int ambient_dim = 0) : dim(ambient_dim) {}

  int rank() const { return (int)basis.size(); }

  // Eliminates known pivots from v, mirroring the operations on x
  // (x accumulates the coefficients of the reduced basis vectors used).
  void reduce(SparseVec& v, SparseVec* x) const {
    // Iterate pivots in index order; each subtraction only touches
    // non-pivot coordinates of other rows, so one pass suffices.
    for (auto it = v.begin(); it != v.end();) {
      auto pr = pivot_row.find(it->first);
      if (pr == pivot_row.end()) {
        ++it;
        continue;
      }
      int k = pr->second;
      Rat c = it->second;  // basis[k] has 1 at this pivot
      it = v.erase(it);
      for (const auto& [i, b] : basis[k]) {
        if (i == pivots[k]) continue;
        auto vit = v.find(i);
        if (vit == v.end()) {
          v.emplace(i, -c * b);
        } else {
          vit->second -= c * b;
          if (vit->second == 0) v.erase(vit);
        }
      }
      if (x) axpy(*x, c, combo[k]);
      it = v.upper_bound(pr->first);
    }
  }

  void insert(SparseVec v) {
    if (!v.empty())
      require(v.rbegin()->first < dim && v.begin()->first >= 0,
              "AmbientMismatch", "vector does not fit ambient dimension");
    SparseVec x;
    reduce(v, &x);
    // x now expresses the eliminated part; the residual combo is e_j - x.
    SparseVec cmb = unit_vec(n_inserted);
    axpy(cmb, Rat(-1), x);
    ++n_inserted;
    if (v.empty()) {
      kernel.push_back(std::move(cmb));
      return;
    }
    auto best = v.begin();
    size_t best_bits = rat_bits(best->second);
    for (auto it = std::next(v.begin()); it != v.end(); ++it) {
      size_t bits = rat_bits(it->second);
      if (bits < best_bits) {
        best = it;
        best_bits = bits;
      }
    }
    int p = best->first;
    Rat inv = 1 / best->second;
    scale(v, inv);
    scale(cmb, inv);
    // Back-substitute so every basis row is clean at the new pivot.
    for (size_t k = 0; k < basis.size(); ++k) {
      Rat c = get_entry(basis[k], p);
      if (c != 0) {
        axpy(basis[k], -c, v);
        axpy(combo[k], -c, cmb);
      }
    }
    pivot_row[p] = (int)basis.size();
    pivots.push_back(p);
    basis.push_back(std::move(v));
    combo.push_back(std::move(cmb));
  }

  bool contains(SparseVec v) const {
    reduce(v, nullptr);
    return v.empty();
  }

  // Finds x with sum_j x_j * inserted_j = v; returns false if v is outside
  // the span.
  bool solve(SparseVec v, SparseVec& x) const {
    x.clear();
    reduce(v, &x);
    return v.empty();
  }
};

struct RankKernel {
  int rank = 0;
  std::vector<SparseVec> kernel;  // basis of the null space, in Q^cols
};

// Rank and a null-space basis of m.
inline RankKernel rank_and_kernel(const Matrix& m) {
  SpanSolver s(m.rows);
  for (const auto& c : m.col) s.insert(c);
  return {s.rank(), s.kernel};
}

// Reduced basis of the column span.
inline std::vector<SparseVec> image_basis(const Matrix& m) {
  SpanSolver s(m.rows);
  for (const auto& c : m.col) s.insert(c);
  return s.basis;
}

inline int rank(const Matrix& m) {
  SpanSolver s(m.rows);
  for (const auto& c : m.col) s.insert(c);
  return s.rank();
}

// dim ker(d_out) - rank(d_in) for consecutive differentials
// d_in : C^{k-1} -> C^k and d_out : C^k -> C^{k+1}.
// Refuses to answer when d_out . d_in != 0.
inline int cohomology_dim(const Matrix& d_in, const Matrix& d_out) {
  require(d_in.rows == d_out.cols, "AmbientMismatch",
          "differentials do not share the middle space");
  require((d_out * d_in).is_zero_matrix(), "CompositionNonzero",
          "d_out composed with d_in is nonzero");
  int dim_ker = d_out.cols - rank(d_out);
  return dim_ker - rank(d_in);
}

// Do two vector lists span the same subspace of Q^ambient_dim?
inline bool subspace_equal(const std::vector<SparseVec>& a,
                           const std::vector<SparseVec>& b, int ambient_dim) {
  SpanSolver sa(ambient_dim), sb(ambient_dim);
  for (const auto& v : a) sa.insert(v);
  for (const auto& v : b) sb.insert(v);
  if (sa.rank() != sb.rank()) return false;
  return std::all_of(b.begin(), b.end(),
                     [&](const SparseVec& v) { return sa.contains(v); });
}

// Independent dense rank oracle (fraction-free Bareiss over the integers,
// after clearing denominators row by row).  Restricted to small matrices;
// used only to cross-check the sparse path.
inline int dense_rank_oracle(const std::vector<std::vector<Rat>>& d) {
  int r = (int)d.size();
  int c = r ? (int)d[0].size() : 0;
  require(r < 64 && c < 64, "AmbientMismatch",
          "dense oracle is limited to matrices smaller than 64x64");
  std::vector<std::vector<Int>> a(r, std::vector<Int>(c));
  for (int i = 0; i < r; ++i) {
    Int lcm = 1;
    for (int j = 0; j < c; ++j) {
      Int den = d[i][j].get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (int j = 0; j < c; ++j) {
      Rat v = d[i][j] * Rat(lcm);
      v.canonicalize();
      a[i][j] = v.get_num();
    }
  }
  Int prev = 1;
  int rank = 0;
  for (int j = 0; j < c && rank < r; ++j) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (a[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int i = rank + 1; i < r; ++i) {
      for (int k = j + 1; k < c; ++k) {
        Int t = a[rank][j] * a[i][k] - a[i][j] * a[rank][k];
        mpz_divexact(a[i][k].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][j] = 0;
    }
    prev = a[rank][j];
    ++rank;
  }
  return rank;
}

}  // namespace infty
