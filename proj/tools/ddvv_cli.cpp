// ddvv: check, explore and stress-test the commutator-norm inequalities for
// symmetric and skew-symmetric matrix tuples, the equality normal forms, the
// geometric curvature inequalities, and the polynomial translation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddvv/equality_normal_form.hpp"
#include "ddvv/extremal_search.hpp"
#include "ddvv/geometry.hpp"
#include "ddvv/inequality.hpp"
#include "ddvv/io.hpp"
#include "ddvv/matrix_core.hpp"
#include "ddvv/polynomial_translation.hpp"
#include "ddvv/rng.hpp"
#include "ddvv/version.hpp"

using namespace ddvv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;

struct GlobalOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string output = "text";
};

Json new_report(const std::string& command, const GlobalOptions& global) {
  Json report;
  report["command"] = command;
  report["version"] = kVersion;
  report["seed"] = global.seed;
  report["tol"] = global.tol;
  return report;
}

void flatten(const Json& j, const std::string& prefix,
             std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else {
    out << prefix << " = " << j.dump() << "\n";
  }
}

void emit(const Json& report, const GlobalOptions& global) {
  if (global.output == "json")
    std::cout << report.dump(2) << "\n";
  else
    flatten(report, "", std::cout);
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json defect_to_json(const DefectReport& rep) {
  Json j;
  j["lhs"] = rep.lhs;
  j["bound"] = rep.bound;
  j["defect"] = rep.defect;
  j["ratio"] = rep.ratio;
  j["constant"] = rep.constant_used;
  j["traces"] = rep.traces;
  return j;
}

Json normal_form_to_json(const NormalFormResult& res) {
  Json j;
  j["kind"] = to_string(res.kind);
  j["parameter"] = res.parameter;
  j["residual"] = res.residual;
  if (res.P.size() > 0) j["P"] = matrix_to_json(res.P);
  if (res.R.size() > 0) j["R"] = matrix_to_json(res.R);
  return j;
}

int run_check(const std::string& path, const GlobalOptions& global) {
  const MatrixTuple t = load_document(path).to_tuple();
  const DefectReport rep = defect(t);
  Json report = new_report("check", global);
  report["input"] = path;
  report["input_digest"] = file_digest(path);
  report["results"] = defect_to_json(rep);
  const bool holds = rep.defect >= -global.tol * std::max(1.0, rep.bound);
  report["results"]["holds"] = holds;
  emit(report, global);
  return holds ? kExitOk : kExitFail;
}

int run_geom(const std::string& path, const GlobalOptions& global) {
  const ShapeOperatorSet s = load_document(path).to_shape_ops();
  if (s.n() < 2) throw DocumentError("curvature data requires n >= 2");
  const CurvatureReport rep = curvature_report(s);
  Json report = new_report("geom", global);
  report["input"] = path;
  report["input_digest"] = file_digest(path);
  Json& r = report["results"];
  r["rho"] = rep.rho;
  r["rho_perp"] = rep.rho_perp;
  r["h_norm_sq"] = rep.h_norm_sq;
  r["c"] = s.c();
  r["wintgen_defect"] = rep.wintgen_defect;
  r["chen_defect"] = rep.chen_defect;
  r["rho_translation_residual"] =
      std::abs(rho_direct(s) - rho_via_translation(s));
  r["rho_perp_translation_residual"] =
      std::abs(rho_perp(s) - rho_perp_via_translation(s));
  if (s.n() == 2) r["ellipse_is_circle"] = ellipse_circle_test(s, global.tol);
  emit(report, global);
  return kExitOk;
}

int run_translate(const std::string& path, const GlobalOptions& global) {
  const MatrixTuple t = load_document(path).to_tuple();
  if (t.symmetry() != SymmetryClass::Symmetric)
    throw DocumentError("translate requires a symmetric tuple");
  const Vectorization v = vectorize(t);
  const SpectralFrame frame = spectral_frame(v);
  const auto [r1, r2] = translation_check(t);
  const double ns = norm_sum(t);
  const double f = f_eval(frame.Q, frame.x, v.basis);

  Json report = new_report("translate", global);
  report["input"] = path;
  report["input_digest"] = file_digest(path);
  Json& r = report["results"];
  r["N"] = v.basis.N();
  r["B"] = matrix_to_json(v.B);
  r["spectrum"] = vector_to_json(frame.x);
  r["norm_residual"] = r1;
  r["comm_residual"] = r2;
  r["f_value"] = f;
  r["norm_sum"] = ns;
  r["comm_norm_sum"] = comm_norm_sum(t);
  const double scale = 1.0 + ns * ns;
  const bool ok = r1 <= 1e-8 * scale && r2 <= 1e-8 * scale;
  r["identities_hold"] = ok;
  emit(report, global);
  return ok ? kExitOk : kExitFail;
}

int run_normal_form(const std::string& path, const GlobalOptions& global) {
  const TupleDocument doc = load_document(path);
  Json report = new_report("normal-form", global);
  report["input"] = path;
  report["input_digest"] = file_digest(path);
  if (doc.kind == "shape_ops") {
    const ShapeEqualityResult res =
        detect_shape_equality(doc.to_shape_ops(), global.tol);
    report["results"] = normal_form_to_json(res.form);
    report["results"]["lambda1"] = res.lambda1;
    report["results"]["lambda2"] = res.lambda2;
    report["results"]["lambda3"] = res.lambda3;
  } else {
    const MatrixTuple t = doc.to_tuple();
    const NormalFormResult res = t.symmetry() == SymmetryClass::Symmetric
                                     ? detect_symmetric(t, global.tol)
                                     : detect_skew(t, global.tol);
    report["results"] = normal_form_to_json(res);
  }
  emit(report, global);
  return kExitOk;
}

struct SearchRow {
  long long trial;
  std::uint64_t seed;
  double ratio;
  double defect;
  std::string kind;
};

void write_csv(const std::string& path, const std::vector<SearchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot open CSV output: " + path);
  out << "trial,seed,ratio,defect,kind\n";
  std::ostringstream line;
  line.precision(17);
  for (const SearchRow& row : rows) {
    line.str("");
    line << row.trial << "," << row.seed << "," << row.ratio << ","
         << row.defect << "," << row.kind;
    out << line.str() << "\n";
  }
}

int run_search(int n, int m, const std::string& symmetry, long long trials,
               int iters, const std::string& mode, const std::string& out_csv,
               const GlobalOptions& global) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.symmetry = symmetry == "skew" ? SymmetryClass::SkewSymmetric
                                    : SymmetryClass::Symmetric;
  cfg.trials = trials;
  cfg.seed = global.seed;
  cfg.max_iters = iters;

  std::vector<SearchRow> rows(static_cast<size_t>(trials));
  Json report = new_report("search", global);
  Json& r = report["results"];
  r["mode"] = mode;
  r["n"] = n;
  r["m"] = m;
  r["symmetry"] = symmetry;
  r["trials"] = trials;

  if (mode == "fuzz") {
    const FuzzSummary sum = fuzz_inequality(cfg);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < trials; ++i) {
      const std::uint64_t ts =
          trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
      const MatrixTuple t = random_tuple(cfg.n, cfg.m, cfg.symmetry, ts);
      const DefectReport rep = defect(t);
      const NormalFormResult cls = cfg.symmetry == SymmetryClass::Symmetric
                                       ? detect_symmetric(t, global.tol)
                                       : detect_skew(t, global.tol);
      rows[static_cast<size_t>(i)] =
          SearchRow{i, ts, rep.ratio, rep.defect, to_string(cls.kind)};
    }
    r["violations"] = sum.violations;
    r["min_defect"] = sum.min_defect;
    r["min_ratio_gap"] = sum.min_ratio_gap;
    r["max_ratio"] = sum.max_ratio;
    r["histogram"] = sum.ratio_histogram;
    if (!out_csv.empty()) write_csv(out_csv, rows);
    emit(report, global);
    return sum.violations == 0 ? kExitOk : kExitFail;
  }

  // ascend mode
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < trials; ++i) {
    SearchConfig trial_cfg = cfg;
    trial_cfg.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const SearchResult res = ascend_ratio(trial_cfg, {});
    rows[static_cast<size_t>(i)] =
        SearchRow{i, trial_cfg.seed, res.best_ratio,
                  res.best_tuple ? defect(*res.best_tuple).defect : 0.0,
                  to_string(res.classified.kind)};
  }
  size_t best = 0;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].ratio > rows[best].ratio) best = i;
  r["best_trial"] = rows[best].trial;
  r["best_ratio"] = rows[best].ratio;
  r["best_kind"] = rows[best].kind;
  if (!out_csv.empty()) write_csv(out_csv, rows);
  emit(report, global);
  return kExitOk;
}

int run_fmax(int n, double epsilon, const std::string& q_mode,
             const std::string& q_file, const GlobalOptions& global) {
  const SymBasis basis = sym_basis(n);
  const int N = basis.N();
  Matrix Q;
  if (q_mode == "identity") {
    Q = Matrix::Identity(N, N);
  } else if (q_mode == "haar") {
    Q = random_orthogonal(N, global.seed, true);
  } else {
    std::ifstream in(q_file);
    if (!in) throw DocumentError("cannot open Q file: " + q_file);
    Json j;
    try {
      in >> j;
    } catch (const Json::parse_error& e) {
      throw DocumentError(std::string("Q file parse error: ") + e.what());
    }
    Q = matrix_from_json(j);
    if (Q.rows() != N || Q.cols() != N)
      throw DocumentError("Q must be N x N with N = n(n+1)/2");
  }

  SimplexMaxConfig cfg;
  cfg.seed = global.seed;
  const CommCoeffs coeffs = comm_coeffs(Q, basis);
  const SimplexMaxResult max =
      simplex_max(coeffs, SimplexRegion(N, epsilon), cfg);

  Json report = new_report("fmax", global);
  Json& r = report["results"];
  r["n"] = n;
  r["N"] = N;
  r["epsilon"] = epsilon;
  r["q_mode"] = q_mode;
  r["max_value"] = max.value;
  r["maximizer"] = vector_to_json(max.x);
  r["method"] = max.method;
  r["converged"] = max.converged;
  r["member"] = max.value < -cfg.margin;
  r["margin"] = cfg.margin;
  emit(report, global);
  return kExitOk;
}

int run_gen(const std::string& family, int n, int m, double mu, double lambda,
            double lambda1, double lambda2, double lambda3, double c,
            bool conjugate, const std::string& out_path,
            const GlobalOptions& global) {
  TupleDocument doc;
  if (family == "shape-eq") {
    ShapeOperatorSet s =
        equality_shape_ops(n, m, mu, lambda1, lambda2, lambda3, c);
    if (conjugate) {
      const GroupElement g = random_group_element(n, m, global.seed);
      std::vector<Matrix> rotated(static_cast<size_t>(m), Matrix::Zero(n, n));
      for (int r = 0; r < m; ++r)
        for (int q = 0; q < m; ++q)
          rotated[static_cast<size_t>(r)] +=
              g.R()(q, r) * (g.P().transpose() * s.op(q) * g.P());
      s = ShapeOperatorSet(rotated, c);
    }
    doc = TupleDocument::from_shape_ops(s);
  } else {
    MatrixTuple t = family == "sympair" ? make_symmetric_pair(n, m, mu)
                    : family == "skew3" ? make_skew_triple3(m, lambda)
                                        : make_skew_quaternionic(n, m, lambda);
    if (conjugate)
      t = act(random_group_element(t.n(), t.m(), global.seed), t);
    doc = TupleDocument::from_tuple(t);
  }
  save_document(out_path, doc);

  Json report = new_report("gen", global);
  report["results"]["family"] = family;
  report["results"]["out"] = out_path;
  report["results"]["digest"] = file_digest(out_path);
  emit(report, global);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DDVV commutator-norm inequality toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--tol", global.tol, "relative tolerance for verdicts")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "seed for all randomness")
      ->capture_default_str();
  app.add_option("--output", global.output, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string input_path;
  auto* check = app.add_subcommand(
      "check", "evaluate the inequality defect of a tuple document");
  check->add_option("input", input_path, "tuple JSON document")->required();

  auto* geom = app.add_subcommand(
      "geom", "curvature invariants of a shape-operator document");
  geom->add_option("input", input_path, "shape_ops JSON document")->required();

  auto* translate = app.add_subcommand(
      "translate",
      "vectorize a symmetric tuple and verify the translation identities");
  translate->add_option("input", input_path, "tuple JSON document")
      ->required();

  auto* normal_form = app.add_subcommand(
      "normal-form", "classify a (near-)equality tuple and recover (P, R)");
  normal_form->add_option("input", input_path, "tuple or shape_ops document")
      ->required();

  int n = 3, m = 3, iters = 2000;
  long long trials = 100;
  std::string symmetry = "symmetric", mode = "fuzz", out_csv;
  auto* search = app.add_subcommand(
      "search", "random fuzz or ratio-maximizing ascent campaigns");
  search->add_option("--n", n, "matrix dimension")->capture_default_str();
  search->add_option("--m", m, "tuple length")->capture_default_str();
  search->add_option("--symmetry", symmetry, "matrix class")
      ->check(CLI::IsMember({"symmetric", "skew"}))
      ->capture_default_str();
  search->add_option("--trials", trials, "number of trials")
      ->capture_default_str();
  search->add_option("--iters", iters, "ascent iteration cap")
      ->capture_default_str();
  search->add_option("--mode", mode, "campaign type")
      ->check(CLI::IsMember({"fuzz", "ascend"}))
      ->capture_default_str();
  search->add_option("--out", out_csv,
                     "CSV output path (trial,seed,ratio,defect,kind)");

  int fmax_n = 2;
  double epsilon = 0.0;
  std::string q_mode = "identity", q_file;
  auto* fmax = app.add_subcommand(
      "fmax",
      "maximize f_Q over the truncated simplex and test strict negativity");
  fmax->add_option("--n", fmax_n, "matrix dimension (N = n(n+1)/2)")
      ->capture_default_str();
  fmax->add_option("--epsilon", epsilon, "simplex truncation")
      ->capture_default_str();
  fmax->add_option("--q", q_mode, "frame choice")
      ->check(CLI::IsMember({"identity", "haar", "file"}))
      ->capture_default_str();
  fmax->add_option("--qfile", q_file, "JSON array-of-rows orthogonal matrix");

  std::string family = "sympair", out_path;
  double mu = 1.0, lambda = 1.0, lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0,
         c = 0.0;
  bool conjugate = false;
  int gen_n = 2, gen_m = 2;
  auto* gen = app.add_subcommand("gen", "write canonical fixture documents");
  gen->add_option("--family", family, "fixture family")
      ->check(CLI::IsMember({"sympair", "skew3", "skewquat", "shape-eq"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "matrix dimension")->capture_default_str();
  gen->add_option("--m", gen_m, "tuple length")->capture_default_str();
  gen->add_option("--mu", mu, "sympair / shape-eq parameter")
      ->capture_default_str();
  gen->add_option("--lambda", lambda, "skew parameter")->capture_default_str();
  gen->add_option("--lambda1", lambda1, "shape-eq trace parameter 1");
  gen->add_option("--lambda2", lambda2, "shape-eq trace parameter 2");
  gen->add_option("--lambda3", lambda3, "shape-eq trace parameter 3");
  gen->add_option("--c", c, "ambient curvature for shape-eq");
  gen->add_flag("--conjugate", conjugate,
                "scramble by a seeded random group element");
  gen->add_option("--out", out_path, "output document path")->required();

  // Accept the global flags on either side of the subcommand name.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (app.got_subcommand(check)) return run_check(input_path, global);
    if (app.got_subcommand(geom)) return run_geom(input_path, global);
    if (app.got_subcommand(translate))
      return run_translate(input_path, global);
    if (app.got_subcommand(normal_form))
      return run_normal_form(input_path, global);
    if (app.got_subcommand(search))
      return run_search(n, m, symmetry, trials, iters, mode, out_csv, global);
    if (app.got_subcommand(fmax))
      return run_fmax(fmax_n, epsilon, q_mode, q_file, global);
    if (app.got_subcommand(gen))
      return run_gen(family, gen_n, gen_m, mu, lambda, lambda1, lambda2,
                     lambda3, c, conjugate, out_path, global);
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitFail;
}
