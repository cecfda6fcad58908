// Batch front end: loads an algebra description from JSON and runs
// validation, cohomology, Hodge-decomposition, identity-verification and
// form-calculus commands, emitting deterministic JSON or CSV reports.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infty/algebra_spec.hpp"
#include "infty/forms.hpp"
#include "infty/hodge.hpp"

using namespace infty;

namespace {

using Row = std::vector<std::pair<std::string, std::string>>;

struct CliReport {
  std::string command;
  json flags = json::object();
  std::vector<Row> rows;
  int failures = 0;

  Row& add() {
    rows.emplace_back();
    return rows.back();
  }
};

void put(Row& r, const std::string& k, const std::string& v) {
  r.emplace_back(k, v);
}
void put(Row& r, const std::string& k, int v) {
  r.emplace_back(k, std::to_string(v));
}
void put(Row& r, const std::string& k, bool v) {
  r.emplace_back(k, v ? "true" : "false");
}

json report_json(const CliReport& rep, const AlgebraSpec& spec, int cap,
                 int lo, int hi, long timing_ms) {
  json j;
  j["command"] = rep.command;
  j["spec"] = {{"name", spec.name}, {"hash", spec_hash(spec)}};
  j["flags"] = rep.flags;
  j["caps"] = {{"weight", cap}, {"degrees", {lo, hi}}};
  j["rows"] = json::array();
  for (const auto& row : rep.rows) {
    json r = json::object();
    for (const auto& [k, v] : row) r[k] = v;
    j["rows"].push_back(r);
  }
  j["failures"] = rep.failures;
  j["timing_ms"] = timing_ms;
  return j;
}

std::string report_csv(const CliReport& rep) {
  std::ostringstream os;
  if (rep.rows.empty()) return "";
  for (size_t i = 0; i < rep.rows.front().size(); ++i)
    os << (i ? "," : "") << rep.rows.front()[i].first;
  os << "\n";
  for (const auto& row : rep.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::string v = row[i].second;
      if (v.find(',') != std::string::npos ||
          v.find('"') != std::string::npos)
        v = "\"" + v + "\"";
      os << (i ? "," : "") << v;
    }
    os << "\n";
  }
  return os.str();
}

// Applies a weight-homogeneous operator to a mixed-weight combination.
template <typename F>
LinComb per_weight(const LinComb& x, F&& op) {
  std::map<int, LinComb> parts;
  for (const auto& [w, c] : x) add_term(parts[(int)w.size()], w, c);
  LinComb out;
  for (const auto& [n, lc] : parts) axpy(out, Rat(1), op(lc));
  return out;
}

LinComb apply_s_mixed(const GradedBasis& b, const LinComb& x,
                      ShuffleVariant v = ShuffleVariant::plain) {
  return per_weight(x, [&](const LinComb& lc) { return shuffle_s(b, lc, v); });
}

LinComb truncated(LinComb x, int cap) {
  for (auto it = x.begin(); it != x.end();)
    it = (int)it->first.size() > cap ? x.erase(it) : std::next(it);
  return x;
}

Matrix matrix_of(const GradedBasis& b, int weight,
                 const std::function<LinComb(const LinComb&)>& op) {
  auto words = enumerate_words(b, weight);
  std::map<Word, int> index;
  for (int i = 0; i < (int)words.size(); ++i) index[words[i]] = i;
  Matrix m((int)words.size(), (int)words.size());
  for (int col = 0; col < (int)words.size(); ++col)
    for (const auto& [w, c] : op(LinComb{{words[col], Rat(1)}}))
      m.set(index.at(w), col, c);
  return m;
}

void window_rows(CliReport& rep, const ComplexWindow& w, int lo, int hi) {
  for (int n = lo; n <= hi; ++n) {
    Row& r = rep.add();
    put(r, "degree", n);
    put(r, "dim", w.dim(n));
    put(r, "cohomology", w.cohomology(n));
    put(r, "exact", w.exact_at(n));
  }
}

int run_check(const AlgebraSpec& spec, CliReport& rep, int cap) {
  const Structure& S = spec.S;
  auto row_for = [&](const std::string& name, const Report& r) {
    Row& row = rep.add();
    put(row, "check", name);
    put(row, "pass", r.ok);
    std::string witness;
    if (!r.violations.empty()) {
      const auto& v = r.violations.front();
      witness = "generator " +
                (v.generator >= 0 ? S.basis.names[v.generator]
                                  : std::string("-")) +
                " weight " + std::to_string(v.weight) + ": " +
                comb_str(S.basis, v.witness);
    }
    put(row, "witness", witness);
    if (!r.ok) ++rep.failures;
  };
  row_for("square_zero", validate_square_zero(S, cap));
  if (S.kind == Kind::Cinf) row_for("cinfty", check_cinfty(S));
  if (S.basis.unit >= 0) row_for("unital", check_unital(S));
  return rep.failures;
}

void run_cohomology(const AlgebraSpec& spec, CliReport& rep,
                    const std::string& theory, Coeff coeff, int lo, int hi,
                    int cap, bool normalised, int jslice) {
  const Structure& S = spec.S;
  if (theory == "bar") {
    window_rows(rep, bar_window(S, lo, hi, cap), lo, hi);
  } else if (theory == "hochschild") {
    window_rows(rep, hochschild_window(S, lo, hi, cap, coeff), lo, hi);
  } else if (theory == "harrison") {
    window_rows(rep, harrison_window(S, lo, hi, cap, coeff), lo, hi);
  } else if (theory == "ce") {
    window_rows(rep, ce_window(S, lo, hi, cap, coeff), lo, hi);
  } else if (theory == "cyclic") {
    if (normalised) {
      window_rows(rep, normalised_cyclic_window(S, lo, hi, cap).sub, lo, hi);
    } else if (jslice >= 0) {
      auto T = decompose_cyclic(S, lo, hi, cap, CyclicModel::coinvariant,
                                jslice);
      window_rows(rep, T.summand.at(jslice), lo, hi);
    } else {
      window_rows(rep, cyclic_window(S, lo, hi, cap), lo, hi);
    }
  } else if (theory == "tsygan") {
    window_rows(rep, tsygan_window(S, lo, hi, cap).total, lo, hi);
  } else if (theory == "connes") {
    window_rows(rep, connes_window(S, lo, hi, cap, normalised).total, lo, hi);
  } else {
    fail("ValidationError", "unknown theory '" + theory + "'");
  }
}

void run_hodge(const AlgebraSpec& spec, CliReport& rep,
               const std::string& theory, int lo, int hi, int cap, int jmax) {
  const Structure& S = spec.S;
  HodgeTable T;
  if (theory == "bar")
    T = decompose_hochschild(S, lo, hi, cap, HochTheory::bar, jmax);
  else if (theory == "hochschild")
    T = decompose_hochschild(S, lo, hi, cap, HochTheory::dual, jmax);
  else if (theory == "adjoint")
    T = decompose_hochschild(S, lo, hi, cap, HochTheory::adjoint, jmax);
  else if (theory == "cyclic")
    T = decompose_cyclic(S, lo, hi, cap, CyclicModel::coinvariant, jmax);
  else if (theory == "tsygan")
    T = decompose_cyclic(S, lo, hi, cap, CyclicModel::tsygan, jmax);
  else
    fail("ValidationError", "theory '" + theory + "' has no decomposition");
  for (int n = lo; n <= hi; ++n)
    for (const auto& [j, w] : T.summand) {
      // Group the summand basis at this degree by word length.
      std::map<int, int> by_len;
      auto it = w.basis.find(n);
      if (it != w.basis.end())
        for (const auto& v : it->second) {
          int len = v.empty() ? 0 : (int)v.begin()->first.second.size();
          ++by_len[len];
        }
      if (by_len.empty()) by_len[0] = 0;
      for (const auto& [len, dim] : by_len) {
        Row& r = rep.add();
        put(r, "degree", n);
        put(r, "order", len);
        put(r, "j", j);
        put(r, "dim", dim);
        put(r, "exact", T.exact_at(n));
      }
    }
}

void identity_row(CliReport& rep, const std::string& name, int weight,
                  bool pass) {
  Row& r = rep.add();
  put(r, "identity", name);
  put(r, "weight", weight);
  put(r, "pass", pass);
  if (!pass) ++rep.failures;
}

void run_identities(const AlgebraSpec& spec, CliReport& rep, int cap) {
  const GradedBasis& b = spec.S.basis;
  const Structure& S = spec.S;
  int wmax = std::min(cap, 6);
  for (int n = 1; n <= wmax; ++n) {
    auto words = enumerate_words(b, n);
    if (words.empty() || (int)words.size() > 200) continue;
    Matrix s =
        matrix_of(b, n, [&](const LinComb& x) { return shuffle_s(b, x); });
    Matrix st = matrix_of(b, n, [&](const LinComb& x) {
      return shuffle_s(b, x, ShuffleVariant::tilde);
    });
    Matrix id = Matrix::identity((int)words.size());
    Matrix nu = id;
    for (int i = 0; i <= n; ++i) nu = (s - Rat(Int(1) << i) * id) * nu;
    identity_row(rep, "minimal_polynomial", n, nu.is_zero_matrix());
    Matrix sum((int)words.size(), (int)words.size());
    bool orth = true;
    std::vector<Matrix> e;
    for (int j = 0; j <= n + 1; ++j) e.push_back(idempotent_e(b, j, n));
    for (int j = 0; j <= n + 1; ++j) sum = sum + e[j];
    identity_row(rep, "idempotent_sum", n, sum == id);
    for (int i = 0; i <= n + 1 && orth; ++i)
      for (int j = 0; j <= n + 1 && orth; ++j) {
        Matrix p = e[i] * e[j];
        orth = (i == j) ? p == e[i] : p.is_zero_matrix();
      }
    identity_row(rep, "idempotent_orthogonality", n, orth);
    bool nrm = true, rot = true, spectral_rot = true;
    for (const auto& w : words) {
      LinComb x{{w, Rat(1)}};
      LinComb lhs = apply_s_mixed(b, act_N(b, x), ShuffleVariant::tilde);
      scale(lhs, Rat(2));
      if (lhs != act_N(b, shuffle_s(b, x))) nrm = false;
      LinComb l2 = shuffle_s(b, x);
      axpy(l2, Rat(-1), shuffle_s(b, act_z(b, x)));
      LinComb r2 = shuffle_s(b, x, ShuffleVariant::tilde);
      axpy(r2, Rat(-1), act_z(b, shuffle_s(b, x, ShuffleVariant::tilde)));
      if (l2 != r2) rot = false;
      for (int j = 0; j <= std::min(n, 3); ++j) {
        LinComb el = per_weight(act_N(b, x), [&](const LinComb& y) {
          return apply_idempotent(b, j, y, ShuffleVariant::tilde);
        });
        LinComb er = act_N(b, apply_idempotent(b, j + 1, x));
        if (el != er) spectral_rot = false;
        LinComb fl = apply_idempotent(b, j, x);
        axpy(fl, Rat(-1), apply_idempotent(b, j, act_z(b, x)));
        LinComb fr = apply_idempotent(b, j, x, ShuffleVariant::tilde);
        axpy(fr, Rat(-1),
             act_z(b, apply_idempotent(b, j, x, ShuffleVariant::tilde)));
        if (fl != fr) spectral_rot = false;
      }
    }
    identity_row(rep, "norm_intertwining", n, nrm);
    identity_row(rep, "rotation_intertwining", n, rot);
    identity_row(rep, "idempotent_intertwining", n, spectral_rot);
  }
  // Differential identities on small words, images truncated at the cap.
  bool has_ops = false;
  for (const auto& per_g : S.comp) has_ops = has_ops || !per_g.empty();
  if (!has_ops) return;
  bool bn = true, bz = true, sb = true, stb = true;
  for (int wt = 1; wt <= std::min(cap, 4); ++wt)
    for (const auto& w : enumerate_words(b, wt)) {
      LinComb x{{w, Rat(1)}};
      LinComb nm = per_weight(x, [&](const LinComb& y) { return act_N(b, y); });
      LinComb lhs = truncated(hochschild_b(S, nm), cap);
      LinComb rhs = per_weight(apply_m(S, x),
                               [&](const LinComb& y) { return act_N(b, y); });
      scale(rhs, Rat(-1));
      if (lhs != truncated(rhs, cap)) bn = false;
      LinComb l2 = apply_m(S, x);
      axpy(l2, Rat(-1), apply_m(S, per_weight(x, [&](const LinComb& y) {
                          return act_z(b, y);
                        })));
      LinComb hb = hochschild_b(S, x);
      LinComb r2 = hb;
      scale(r2, Rat(-1));
      axpy(r2, Rat(1),
           per_weight(hb, [&](const LinComb& y) { return act_z(b, y); }));
      if (truncated(l2, cap) != truncated(r2, cap)) bz = false;
      if (truncated(apply_s_mixed(b, apply_m(S, x)), cap) !=
          truncated(apply_m(S, apply_s_mixed(b, x)), cap))
        sb = false;
      if (truncated(apply_s_mixed(b, hb, ShuffleVariant::tilde), cap) !=
          truncated(
              hochschild_b(S, apply_s_mixed(b, x, ShuffleVariant::tilde)),
              cap))
        stb = false;
    }
  identity_row(rep, "b_norm_anticommutes", 0, bn);
  identity_row(rep, "bprime_rotation_anticommutes", 0, bz);
  identity_row(rep, "shuffle_commutes_with_bprime", 0, sb);
  identity_row(rep, "shuffle_tilde_commutes_with_b", 0, stb);
}

// Builds a homogeneous test field of the given weight shift, mapping each
// letter to the sum of the first few words of matching degree; returns
// false when some letter has no word of the required degree.
bool build_test_field(const GradedBasis& b, int shift, VectorField& out) {
  out.deg = shift;
  out.img.assign(b.size(), {});
  for (int g = 0; g < b.size(); ++g) {
    int want = b.wdeg(g) + shift;
    int found = 0;
    for (int len = 1; len <= 3 && found < 2; ++len)
      for (const auto& w : enumerate_words(b, len)) {
        if (word_wdeg(b, w) != want) continue;
        add_term(out.img[g], w, Rat(1 + found));
        if (++found >= 2) break;
      }
    if (found == 0) return false;
  }
  validate_field(b, out);
  return true;
}

void run_cartan(const AlgebraSpec& spec, CliReport& rep) {
  const GradedBasis& b = spec.S.basis;
  std::vector<VectorField> fields{euler_field(b)};
  for (int shift : {0, 1, 2}) {
    VectorField f;
    if (build_test_field(b, shift, f)) fields.push_back(f);
    if (fields.size() >= 3) break;
  }
  const auto& xi = fields.size() > 1 ? fields[1] : fields[0];
  const auto& ga = fields.back();
  VectorField br = field_bracket(b, xi, ga);
  for (auto geom : {Geometry::com, Geometry::ass}) {
    bool homotopy = true, commute_d = true, bracket0 = true, mixed = true;
    for (int k = 0; k <= 3; ++k) {
      for (const auto& x : dr0_basis(b, geom, k)) {
        if (lie_derivative0(b, geom, xi, x) !=
            contraction1(b, geom, xi, form_d0(b, geom, x)))
          homotopy = false;
        CVec lhs = lie_derivative1(b, geom, xi, form_d0(b, geom, x));
        CVec rhs;
        axpy(rhs, Rat(sign_pow(xi.deg)),
             form_d0(b, geom, lie_derivative0(b, geom, xi, x)));
        if (lhs != rhs) commute_d = false;
        CVec comm =
            lie_derivative0(b, geom, xi, lie_derivative0(b, geom, ga, x));
        axpy(comm, -Rat(sign_pow((long)xi.deg * ga.deg)),
             lie_derivative0(b, geom, ga, lie_derivative0(b, geom, xi, x)));
        if (comm != lie_derivative0(b, geom, br, x)) bracket0 = false;
      }
      for (const auto& x : dr1_basis(b, geom, k)) {
        CVec lhs =
            lie_derivative0(b, geom, xi, contraction1(b, geom, ga, x));
        axpy(lhs, -Rat(sign_pow((long)xi.deg * (ga.deg - 1))),
             contraction1(b, geom, ga, lie_derivative1(b, geom, xi, x)));
        if (lhs != contraction1(b, geom, br, x)) mixed = false;
      }
    }
    auto gr = [&](const std::string& n, bool ok) {
      Row& r = rep.add();
      put(r, "identity", n);
      put(r, "geometry", geometry_str(geom));
      put(r, "pass", ok);
      if (!ok) ++rep.failures;
    };
    gr("derivative_is_contracted_differential", homotopy);
    gr("derivative_commutes_with_differential", commute_d);
    gr("derivatives_bracket_on_functions", bracket0);
    gr("derivative_contraction_commutator", mixed);
  }
}

void run_les(const AlgebraSpec& spec, CliReport& rep, int lo, int hi,
             int cap) {
  std::vector<LesKind> kinds{LesKind::periodicity, LesKind::harrison};
  if (is_minimal(spec.S)) kinds.push_back(LesKind::normalised);
  for (auto kind : kinds) {
    auto les = verify_decomposed_les(spec.S, lo, hi, cap, kind);
    Row& r = rep.add();
    put(r, "sequence",
        kind == LesKind::periodicity
            ? "periodicity"
            : kind == LesKind::harrison ? "harrison" : "normalised");
    put(r, "pass", les.ok);
    std::string msg;
    for (const auto& f : les.failures) msg += (msg.empty() ? "" : "; ") + f;
    put(r, "detail", msg);
    if (!les.ok) ++rep.failures;
  }
}

void run_poincare(const AlgebraSpec& spec, CliReport& rep, int cap) {
  const GradedBasis& b = spec.S.basis;
  VectorField e = euler_field(b);
  for (auto geom : {Geometry::com, Geometry::ass, Geometry::lie})
    for (int k = 0; k <= std::min(cap - 2, 6); ++k) {
      auto basis = dr0_basis(b, geom, k);
      bool homotopy = true;
      std::vector<CVec> images;
      for (const auto& x : basis) {
        images.push_back(form_d0(b, geom, x));
        CVec kx;
        axpy(kx, Rat(k), x);
        if (contraction1(b, geom, e, images.back()) != kx) homotopy = false;
      }
      int r = (int)independent_subset(images).size();
      int expected_kernel = (k == 0 && geom != Geometry::lie) ? 1 : 0;
      Row& row = rep.add();
      put(row, "geometry", geometry_str(geom));
      put(row, "order", k);
      put(row, "dim", (int)basis.size());
      put(row, "kernel", (int)basis.size() - r);
      bool ok = homotopy && (int)basis.size() - r == expected_kernel;
      put(row, "pass", ok);
      if (!ok) ++rep.failures;
    }
}

void run_zeta(const AlgebraSpec& spec, CliReport& rep) {
  const GradedBasis& b = spec.S.basis;
  for (auto geom : {Geometry::com, Geometry::ass, Geometry::lie})
    for (int k = 1; k <= 4; ++k) {
      auto basis = dr1_basis(b, geom, k);
      std::vector<CVec> im;
      for (const auto& x : basis)
        im.push_back(word_cvec(zeta(b, geom, x)));
      int r = (int)independent_subset(im).size();
      std::vector<CVec> dim0;
      for (const auto& x : dr0_basis(b, geom, k + 1))
        dim0.push_back(form_d0(b, geom, x));
      int rd = (int)independent_subset(dim0).size();
      Row& row = rep.add();
      put(row, "geometry", geometry_str(geom));
      put(row, "order", k);
      put(row, "dim", (int)basis.size());
      put(row, "rank", r);
      bool ok = (int)basis.size() - r == rd;
      put(row, "pass", ok);
      if (!ok) ++rep.failures;
    }
}

void run_forms(const AlgebraSpec& spec, CliReport& rep, const std::string& op,
               const std::string& geom_name, int order) {
  const GradedBasis& b = spec.S.basis;
  Geometry geom = geom_name == "com"
                      ? Geometry::com
                      : geom_name == "ass" ? Geometry::ass : Geometry::lie;
  Row& r = rep.add();
  put(r, "op", op);
  put(r, "geometry", geom_name);
  put(r, "order", order);
  if (op == "d0") {
    auto basis = dr0_basis(b, geom, order);
    std::vector<CVec> im;
    for (const auto& x : basis) im.push_back(form_d0(b, geom, x));
    put(r, "dim", (int)basis.size());
    put(r, "rank", (int)independent_subset(im).size());
  } else if (op == "lie") {
    VectorField e = euler_field(b);
    auto basis = dr1_basis(b, geom, order);
    std::vector<CVec> im;
    for (const auto& x : basis)
      im.push_back(lie_derivative1(b, geom, e, x));
    put(r, "dim", (int)basis.size());
    put(r, "rank", (int)independent_subset(im).size());
  } else if (op == "zeta") {
    auto basis = dr1_basis(b, geom, order);
    std::vector<CVec> im;
    for (const auto& x : basis) im.push_back(word_cvec(zeta(b, geom, x)));
    put(r, "dim", (int)basis.size());
    put(r, "rank", (int)independent_subset(im).size());
  } else if (op == "pj") {
    require(geom == Geometry::com, "IllegalPair",
            "the projection-embedding composite lives on the symmetric side");
    Rat fact(1);
    for (int i = 2; i <= order; ++i) fact *= i;
    bool ok = true;
    for (const auto& x : dr1_basis(b, Geometry::com, order)) {
      CVec fx;
      axpy(fx, fact, x);
      if (project_to_com(b, 1, embed_com_dr1(b, x)) != fx) ok = false;
    }
    put(r, "dim", (int)dr1_basis(b, Geometry::com, order).size());
    put(r, "pass", ok);
    if (!ok) ++rep.failures;
  } else {
    fail("ValidationError", "unknown forms op '" + op + "'");
  }
  put(r, "exact", true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology and formal-geometry calculator"};
  app.require_subcommand(1);

  std::string spec_path, format = "json", out_path, theory = "hochschild";
  std::string coeff_name = "dual", suite = "identities", degrees;
  std::string forms_op = "d0", geometry = "ass";
  int cap = -1, jflag = -1, order = 1;
  bool normalised = false, echo_spec = false;

  for (auto* cmd :
       {app.add_subcommand("check", "validate the structure equations"),
        app.add_subcommand("cohomology", "window cohomology dimensions"),
        app.add_subcommand("hodge", "spectral decomposition tables"),
        app.add_subcommand("verify", "identity and exactness suites"),
        app.add_subcommand("forms", "formal differential-form operators")}) {
    cmd->add_option("--spec", spec_path, "algebra description (JSON)")
        ->required();
    cmd->add_option("--format", format, "json or csv");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--cap", cap, "weight cap");
    cmd->add_option("--degrees", degrees, "degree window a..b");
    cmd->add_flag("--echo-spec", echo_spec,
                  "print the canonical parsed spec and exit");
  }
  auto* coh = app.get_subcommand("cohomology");
  coh->add_option("--theory", theory,
                  "bar|hochschild|harrison|ce|cyclic|tsygan|connes");
  coh->add_option("--coeff", coeff_name, "dual|adjoint|trivial");
  coh->add_flag("--normalised", normalised, "use the normalised model");
  coh->add_option("--j", jflag, "restrict to one spectral summand");
  auto* hod = app.get_subcommand("hodge");
  hod->add_option("--theory", theory, "bar|hochschild|adjoint|cyclic|tsygan");
  hod->add_option("--j", jflag, "largest spectral index");
  auto* ver = app.get_subcommand("verify");
  ver->add_option("--suite", suite, "identities|cartan|les|poincare|zeta");
  auto* frm = app.get_subcommand("forms");
  frm->add_option("--op", forms_op, "d0|lie|zeta|pj");
  frm->add_option("--geometry", geometry, "com|ass|lie");
  frm->add_option("--order", order, "order of the form slice");

  CLI11_PARSE(app, argc, argv);

  // Library calls are single-threaded; the env var bounds, never raises.
  int threads = 1;
  if (const char* t = std::getenv("INFTY_THREADS"))
    threads = std::max(1, std::min(threads, std::atoi(t)));

  try {
    AlgebraSpec spec = parse_spec(spec_path);
    if (echo_spec) {
      std::cout << emit_spec(spec).dump(2) << "\n";
      return 0;
    }
    if (cap < 0) cap = spec.cap;
    int lo = spec.deg_lo, hi = spec.deg_hi;
    if (!degrees.empty()) {
      auto pos = degrees.find("..");
      require(pos != std::string::npos, "ParseError",
              "--degrees expects the form a..b");
      lo = std::stoi(degrees.substr(0, pos));
      hi = std::stoi(degrees.substr(pos + 2));
    }

    CliReport rep;
    auto t0 = std::chrono::steady_clock::now();
    if (app.got_subcommand("check")) {
      rep.command = "check";
      run_check(spec, rep, cap);
    } else if (app.got_subcommand("cohomology")) {
      rep.command = "cohomology";
      rep.flags = {{"theory", theory}, {"coeff", coeff_name},
                   {"normalised", normalised}, {"j", jflag}};
      Coeff coeff = coeff_name == "adjoint"
                        ? Coeff::adjoint
                        : coeff_name == "trivial" ? Coeff::trivial
                                                  : Coeff::dual;
      run_cohomology(spec, rep, theory, coeff, lo, hi, cap, normalised,
                     jflag);
    } else if (app.got_subcommand("hodge")) {
      rep.command = "hodge";
      rep.flags = {{"theory", theory}, {"j", jflag}};
      run_hodge(spec, rep, theory, lo, hi, cap, jflag);
    } else if (app.got_subcommand("verify")) {
      rep.command = "verify";
      rep.flags = {{"suite", suite}};
      if (suite == "identities")
        run_identities(spec, rep, cap);
      else if (suite == "cartan")
        run_cartan(spec, rep);
      else if (suite == "les")
        run_les(spec, rep, lo, hi, cap);
      else if (suite == "poincare")
        run_poincare(spec, rep, cap);
      else if (suite == "zeta")
        run_zeta(spec, rep);
      else
        fail("ValidationError", "unknown suite '" + suite + "'");
    } else {
      rep.command = "forms";
      rep.flags = {{"op", forms_op}, {"geometry", geometry},
                   {"order", order}};
      run_forms(spec, rep, forms_op, geometry, order);
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    rep.flags["threads"] = threads;

    std::string body = format == "csv"
                           ? report_csv(rep)
                           : report_json(rep, spec, cap, lo, hi, ms).dump(2) +
                                 "\n";
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream of(out_path);
      require(of.good(), "IOError", "cannot open '" + out_path + "'");
      of << body;
    }
    return rep.failures == 0 ? 0 : 1;
  } catch (const InftyError& e) {
    json err{{"error", {{"code", e.code}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
}
