// The non-cyclic complexes: bar, Hochschild (dual and adjoint
// coefficients), Harrison, Chevalley-Eilenberg, the contracting homotopy
// and the normalisation retraction, plus the operator identities tying the
// differentials to the shuffle and rotation operators.
#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "infty/hochschild.hpp"

using namespace infty;
using namespace infty::fixtures;

namespace {

// Applies a weight-homogeneous operator to a mixed-weight combination.
template <typename F>
LinComb per_weight(const LinComb& x, F&& op) {
  std::map<int, LinComb> parts;
  for (const auto& [w, c] : x) add_term(parts[(int)w.size()], w, c);
  LinComb out;
  for (const auto& [n, lc] : parts) axpy(out, Rat(1), op(lc));
  return out;
}

LinComb apply_s(const GradedBasis& b, const LinComb& x,
                ShuffleVariant v = ShuffleVariant::plain) {
  return per_weight(x, [&](const LinComb& lc) { return shuffle_s(b, lc, v); });
}

LinComb apply_z(const GradedBasis& b, const LinComb& x) {
  return per_weight(x, [&](const LinComb& lc) { return act_z(b, lc); });
}

LinComb apply_Nm(const GradedBasis& b, const LinComb& x) {
  return per_weight(x, [&](const LinComb& lc) { return act_N(b, lc); });
}

LinComb minus(LinComb x) {
  scale(x, Rat(-1));
  return x;
}

}  // namespace

TEST_CASE("bar differential of the zero structure vanishes") {
  Structure zero;
  zero.basis.names = {"a", "b"};
  zero.basis.vdeg = {0, 0};
  zero.comp.resize(2);
  auto w = bar_window(zero, 0, 3, 5);
  for (int n = -1; n <= 3; ++n) CHECK(w.dmat(n).is_zero_matrix());
}

TEST_CASE("bar window dimensions for the dual numbers") {
  auto S = dual_numbers();
  auto w = bar_window(S, 0, 4, 6);
  CHECK(w.dim(0) == 2);  // weight-1 words
  CHECK(w.dim(1) == 4);
}

TEST_CASE("bar cohomology of unital fixtures vanishes") {
  for (const auto& S : {dual_numbers(), truncated_cubic()}) {
    auto w = bar_window(S, 0, 4, 6);
    for (int n = 0; n <= 4; ++n) {
      REQUIRE(w.exact_at(n));
      CHECK(w.cohomology(n) == 0);
    }
  }
}

TEST_CASE("weight-1 dual slice of a differential-only structure") {
  Structure S;
  S.basis.names = {"p", "q"};
  S.basis.vdeg = {1, 0};
  S.comp.resize(2);
  S.comp[1][1] = LinComb{{Word{0}, Rat(1)}};  // m(q) = p
  // b(q) = -m(q) = -p on bare letters.
  CHECK(hochschild_b_word(S, Word{1}) == LinComb{{Word{0}, Rat(-1)}});
  auto w = hochschild_window(S, 0, 2, 4, Coeff::dual);
  CHECK(w.dim(0) == 1);
  CHECK(w.cohomology(0) == 0);  // b(q) = -p is injective on degree 0
}

// Independent dense implementation of the classical Hochschild cochain
// complex of an algebra A with coefficients in A*:
//   (df)(a_1,...,a_{n+1}) = a_1 f(...) + sum (-1)^i f(.., a_i a_{i+1}, ..)
//                           + (-1)^{n+1} f(a_1,...,a_n) a_{n+1},
// with the bimodule A* given by (a.phi.b)(x) = phi(b x a).
namespace classical {

// Multiplication table of Q[x]/(x^2) on the basis {1, x}: prod[i][j] is a
// coefficient vector over the basis.
static const int kDim = 2;

std::vector<Rat> mult(int i, int j) {
  std::vector<Rat> v(kDim, Rat(0));
  if (i == 0 && j == 0) v[0] = 1;
  if (i + j == 1) v[1] = 1;
  return v;
}

// Basis of C^n = Hom(A^{x n}, A*): f = (input tuple t, output functional e).
// d: C^n -> C^{n+1} as a dense matrix over that basis.
std::vector<std::vector<Rat>> differential(int n) {
  auto tuples = [](int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(k, 0);
    int total = 1;
    for (int i = 0; i < k; ++i) total *= kDim;
    for (int c = 0; c < total; ++c) {
      int x = c;
      for (int i = 0; i < k; ++i) {
        t[i] = x % kDim;
        x /= kDim;
      }
      out.push_back(t);
    }
    return out;
  };
  auto dom = tuples(n), cod = tuples(n + 1);
  int dn = (int)dom.size() * kDim, dc = (int)cod.size() * kDim;
  std::vector<std::vector<Rat>> d(dc, std::vector<Rat>(dn, Rat(0)));
  // Column = basis cochain f with f(dom[t]) = e-th dual vector, zero else.
  for (int t = 0; t < (int)dom.size(); ++t)
    for (int e = 0; e < kDim; ++e) {
      int colidx = t * kDim + e;
      // Evaluate df on every codomain tuple a_1..a_{n+1} of basis elements;
      // the result is a functional on A recorded in the dual basis.
      for (int ct = 0; ct < (int)cod.size(); ++ct) {
        const auto& a = cod[ct];
        std::vector<Rat> val(kDim, Rat(0));
        // a_1 . f(a_2..a_{n+1}): (a_1 phi)(y) = phi(y a_1).
        {
          std::vector<int> rest(a.begin() + 1, a.end());
          if (rest == dom[t])
            for (int y = 0; y < kDim; ++y) val[y] += mult(y, a[0])[e];
        }
        for (int i = 0; i < n; ++i) {
          std::vector<Rat> prod = mult(a[i], a[i + 1]);
          for (int r = 0; r < kDim; ++r) {
            if (prod[r] == 0) continue;
            std::vector<int> merged;
            for (int k = 0; k < i; ++k) merged.push_back(a[k]);
            merged.push_back(r);
            for (int k = i + 2; k < n + 1; ++k) merged.push_back(a[k]);
            if (merged == dom[t]) {
              Rat sgn((i % 2) ? 1 : -1);  // (-1)^{i+1} with 1-based slot
              for (int y = 0; y < kDim; ++y)
                if (y == e) val[y] += sgn * prod[r];
            }
          }
        }
        // (-1)^{n+1} f(a_1..a_n) . a_{n+1}: (phi b)(y) = phi(b y).
        {
          std::vector<int> rest(a.begin(), a.end() - 1);
          if (rest == dom[t]) {
            Rat sgn(((n + 1) % 2) ? -1 : 1);
            for (int y = 0; y < kDim; ++y)
              val[y] += sgn * mult(a[n], y)[e];
          }
        }
        for (int y = 0; y < kDim; ++y)
          if (val[y] != 0) d[ct * kDim + y][colidx] = val[y];
      }
    }
  return d;
}

int hh_dim(int n) {
  Matrix din = (n == 0) ? Matrix(kDim, 0) : Matrix::from_dense(differential(n - 1));
  Matrix dout = Matrix::from_dense(differential(n));
  return cohomology_dim(din, dout);
}

}  // namespace classical

TEST_CASE("Hochschild cohomology of the dual numbers matches the classical oracle") {
  auto S = dual_numbers();
  auto w = hochschild_window(S, 0, 5, 8, Coeff::dual);
  std::vector<int> expected{2, 1, 1, 1, 1, 1};
  for (int n = 0; n <= 5; ++n) {
    REQUIRE(w.exact_at(n));
    int oracle = classical::hh_dim(n);
    CHECK(oracle == expected[n]);
    CHECK(w.cohomology(n) == oracle);
  }
}

TEST_CASE("the structure itself is an adjoint cocycle") {
  for (const auto& S :
       {dual_numbers(), truncated_cubic(), noncommutative_pair()}) {
    CVec total;
    for (int g = 0; g < (int)S.comp.size(); ++g)
      for (const auto& [i, lc] : S.comp[g])
        for (const auto& [w, c] : lc) axpy(total, c, adjoint_d(S, g, w));
    CHECK(total.empty());
  }
}

TEST_CASE("adjoint window of the dual numbers is a complex with finite dims") {
  auto S = dual_numbers();
  auto w = hochschild_window(S, 0, 3, 5, Coeff::adjoint);
  CHECK(w.dim(0) == 2);  // scalar values on each generator
  for (int n = 0; n <= 3; ++n) CHECK(w.cohomology(n) >= 0);
}

TEST_CASE("Harrison window restricts the Hochschild differential") {
  auto S = dual_numbers();
  auto h = harrison_window(S, 0, 3, 5, Coeff::dual);
  auto full = hochschild_window(S, 0, 3, 5, Coeff::dual);
  for (int n = 0; n <= 3; ++n) {
    CHECK(h.dim(n) <= full.dim(n));
    CHECK(h.cohomology(n) >= 0);
  }
  // Degree-1 slice: words of degree 2; the tail idempotent fixes every
  // weight-2 word (weight-1 tails are primitive), so nothing is cut yet.
  CHECK(h.dim(1) == full.dim(1));
  // The plain weight-2 slice splits into primitives (graded commutators,
  // dimension 3 on two odd letters) and shuffle products (dimension 1).
  CHECK(rank(idempotent_e(S.basis, 1, 2)) == 3);
  CHECK(rank(idempotent_e(S.basis, 2, 2)) == 1);
}

TEST_CASE("Harrison rejects noncommutative input") {
  try {
    harrison_window(noncommutative_pair(), 0, 2, 4, Coeff::dual);
    FAIL("expected NotCinfty");
  } catch (const InftyError& e) {
    CHECK(e.code == "NotCinfty");
  }
}

TEST_CASE("Harrison adjoint window builds on the non-strict fixture") {
  auto S = nonstrict_cinfty();
  auto h = harrison_window(S, 0, 3, 6, Coeff::adjoint);
  for (int n = 0; n <= 3; ++n) CHECK(h.cohomology(n) >= 0);
}

TEST_CASE("Chevalley-Eilenberg windows") {
  // Abelian Lie structure: all differentials vanish.
  auto A = convert(dual_numbers(), Kind::Linf);
  for (auto c : {Coeff::dual, Coeff::adjoint, Coeff::trivial}) {
    auto w = ce_window(A, 0, 3, 5, c);
    for (int n = -1; n <= 3; ++n) CHECK(w.dmat(n).is_zero_matrix());
  }
  // One odd generator: symmetric slices have dimension at most 1 per weight.
  Structure odd;
  odd.kind = Kind::Linf;
  odd.basis.names = {"u"};
  odd.basis.vdeg = {0};  // W-degree 1, odd
  odd.comp.resize(1);
  auto wt = ce_window(odd, 0, 4, 6, Coeff::trivial);
  for (int n = 0; n <= 4; ++n) CHECK(wt.dim(n) <= 1);
  // A genuine bracket: the commutator Lie structure of the noncommutative
  // pair; the window builder verifies d^2 = 0 internally.
  auto L = convert(noncommutative_pair(), Kind::Linf);
  for (auto c : {Coeff::dual, Coeff::adjoint, Coeff::trivial})
    CHECK_NOTHROW(ce_window(L, 0, 3, 5, c));
  // Wrong kind is rejected.
  CHECK_THROWS_AS(ce_window(dual_numbers(), 0, 2, 4, Coeff::trivial),
                  InftyError);
}

TEST_CASE("contracting homotopy values and the homotopy identity") {
  auto S = dual_numbers();
  // h(tau.x.x) = x.x
  CHECK(contracting_h(S, LinComb{{Word{0, 1, 1}, Rat(1)}}) ==
        LinComb{{Word{1, 1}, Rat(1)}});
  // h(x.tau) = 0
  CHECK(contracting_h(S, LinComb{{Word{1, 0}, Rat(1)}}).empty());
  // b'h + hb' = id on every weight-3 word.
  for (const auto& w : enumerate_words(S.basis, 3)) {
    LinComb x{{w, Rat(1)}};
    LinComb lhs = apply_m(S, contracting_h(S, x));
    axpy(lhs, Rat(1), contracting_h(S, apply_m(S, x)));
    CHECK(lhs == x);
  }
  CHECK_THROWS_AS(contracting_h(noncommutative_pair(), LinComb{}), InftyError);
}

TEST_CASE("normalisation retraction") {
  auto S = dual_numbers();
  // Already normalised input is fixed (tail letters are all x).
  LinComb norm{{Word{0, 1, 1}, Rat(1)}, {Word{1, 1}, Rat(2)}};
  CHECK(normalize_H(S, norm, 6) == norm);
  // Zero maps to zero.
  CHECK(normalize_H(S, LinComb{}, 6).empty());
  // Every degree-2 cocycle is rewritten into a normalised cocycle that
  // differs from the input by a coboundary.
  auto w = hochschild_window(S, 0, 3, 6, Coeff::dual);
  auto kk = rank_and_kernel(w.dmat(2));
  REQUIRE(!kk.kernel.empty());
  // Coordinates shared by inputs, outputs, and coboundaries.
  std::map<Word, int> pos;
  auto note = [&](const LinComb& lc) {
    for (const auto& [u, c] : lc)
      if (!pos.count(u)) pos.emplace(u, (int)pos.size());
  };
  std::vector<LinComb> cocycles;
  for (const auto& k : kk.kernel) {
    LinComb alpha;
    for (const auto& [i, c] : k)
      for (const auto& [key, cb] : w.basis.at(2)[i])
        add_term(alpha, key.second, c * cb);
    cocycles.push_back(alpha);
  }
  std::vector<LinComb> images;
  for (const auto& u : words_of_degree(S.basis, 2, 6))
    images.push_back(hochschild_b_word(S, u));
  std::vector<LinComb> outputs, diffs;
  bool saw_unnormalised = false;
  for (const auto& alpha : cocycles) {
    if (!is_normalised(S, alpha)) saw_unnormalised = true;
    LinComb out = normalize_H(S, alpha, 6);
    CHECK(is_normalised(S, out));
    LinComb diff = alpha;
    axpy(diff, Rat(-1), out);
    note(diff);
    diffs.push_back(std::move(diff));
  }
  CHECK(saw_unnormalised);
  for (const auto& im : images) note(im);
  SpanSolver solver((int)pos.size());
  auto coords = [&](const LinComb& lc) {
    SparseVec v;
    for (const auto& [u, c] : lc) set_entry(v, pos.at(u), c);
    return v;
  };
  for (const auto& im : images) solver.insert(coords(im));
  for (const auto& diff : diffs) CHECK(solver.contains(coords(diff)));
}

TEST_CASE("shuffle operators commute with the differentials of commutative structures") {
  for (const auto& S : {dual_numbers(), truncated_cubic(), nonstrict_cinfty()}) {
    const auto& b = S.basis;
    for (int wt = 1; wt <= 4; ++wt)
      for (const auto& w : enumerate_words(b, wt)) {
        LinComb x{{w, Rat(1)}};
        CHECK(apply_s(b, apply_m(S, x)) == apply_m(S, apply_s(b, x)));
        CHECK(apply_s(b, hochschild_b(S, x), ShuffleVariant::tilde) ==
              hochschild_b(S, apply_s(b, x, ShuffleVariant::tilde)));
      }
  }
}

TEST_CASE("a noncommutative product breaks the shuffle commutation at weight 2") {
  auto S = noncommutative_pair();
  bool violated = false;
  for (const auto& w : enumerate_words(S.basis, 2)) {
    LinComb x{{w, Rat(1)}};
    if (apply_s(S.basis, apply_m(S, x)) != apply_m(S, apply_s(S.basis, x)))
      violated = true;
  }
  CHECK(violated);
}

TEST_CASE("rotation compatibilities of b and b'") {
  for (const auto& S :
       {dual_numbers(), truncated_cubic(), noncommutative_pair(),
        nonstrict_cinfty()}) {
    const auto& b = S.basis;
    for (int wt = 1; wt <= 4; ++wt)
      for (const auto& w : enumerate_words(b, wt)) {
        LinComb x{{w, Rat(1)}};
        // bN = -Nb'
        CHECK(hochschild_b(S, apply_Nm(b, x)) ==
              minus(apply_Nm(b, apply_m(S, x))));
        // b'(1-z) = -(1-z)b
        LinComb lhs = apply_m(S, x);
        axpy(lhs, Rat(-1), apply_m(S, apply_z(b, x)));
        LinComb rhs = minus(hochschild_b(S, x));
        axpy(rhs, Rat(1), apply_z(b, hochschild_b(S, x)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("the value-wise shuffle operator commutes with the adjoint differential") {
  for (const auto& S : {dual_numbers(), nonstrict_cinfty()}) {
    const auto& b = S.basis;
    // Spot-check on unit cochains (g, w) for small weights.
    for (int g = 0; g < b.size(); ++g)
      for (int wt = 1; wt <= 3; ++wt)
        for (const auto& w : enumerate_words(b, wt)) {
          // s-bar then d.
          LinComb sw = shuffle_s(b, LinComb{{w, Rat(1)}});
          CVec lhs;
          for (const auto& [u, c] : sw) axpy(lhs, c, adjoint_d(S, g, u));
          // d then s-bar (apply s value-wise per generator slot).
          CVec rhs;
          for (const auto& [key, c] : adjoint_d(S, g, w)) {
            if (key.second.empty()) {
              add_term(rhs, key, c);
              continue;
            }
            for (const auto& [u, cu] :
                 apply_s(b, LinComb{{key.second, Rat(1)}}))
              add_term(rhs, CKey{key.first, u}, c * cu);
          }
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("truncated windows are flagged") {
  auto S = dual_numbers();
  auto w = hochschild_window(S, 0, 5, 3, Coeff::dual);
  CHECK(w.exact_at(1));
  CHECK_FALSE(w.exact_at(3));
}
