#include "ddvv/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace ddvv {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw DocumentError(what);
}

}  // namespace

TupleDocument TupleDocument::from_tuple(const MatrixTuple& t) {
  TupleDocument doc;
  doc.kind = "tuple";
  doc.symmetry = to_string(t.symmetry());
  doc.n = t.n();
  doc.m = t.m();
  doc.matrices = t.mats();
  return doc;
}

TupleDocument TupleDocument::from_shape_ops(const ShapeOperatorSet& s) {
  TupleDocument doc;
  doc.kind = "shape_ops";
  doc.symmetry = "symmetric";
  doc.n = s.n();
  doc.m = s.m();
  doc.matrices = s.ops();
  doc.c = s.c();
  return doc;
}

MatrixTuple TupleDocument::to_tuple() const {
  require(kind == "tuple", "document kind is not 'tuple'");
  const SymmetryClass sym = symmetry == "symmetric"
                                ? SymmetryClass::Symmetric
                                : SymmetryClass::SkewSymmetric;
  try {
    return MatrixTuple(matrices, sym);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
}

ShapeOperatorSet TupleDocument::to_shape_ops() const {
  require(kind == "shape_ops", "document kind is not 'shape_ops'");
  require(c.has_value(), "shape_ops document requires the curvature field c");
  try {
    return ShapeOperatorSet(matrices, *c);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
}

Json matrix_to_json(const Matrix& A) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a nonempty array");
  const size_t rows = j.size();
  require(j[0].is_array(), "matrix rows must be arrays");
  const size_t cols = j[0].size();
  Matrix A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols,
            "matrix rows must have equal length");
    for (size_t k = 0; k < cols; ++k) {
      require(j[i][k].is_number(), "matrix entries must be numbers");
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return A;
}

Json document_to_json(const TupleDocument& doc) {
  Json j;
  j["kind"] = doc.kind;
  j["symmetry"] = doc.symmetry;
  j["n"] = doc.n;
  j["m"] = doc.m;
  Json mats = Json::array();
  for (const Matrix& A : doc.matrices) mats.push_back(matrix_to_json(A));
  j["matrices"] = std::move(mats);
  if (doc.c.has_value()) j["c"] = *doc.c;
  return j;
}

TupleDocument document_from_json(const Json& j) {
  require(j.is_object(), "document must be a JSON object");
  require(j.contains("kind") && j["kind"].is_string(),
          "document requires a string 'kind'");
  TupleDocument doc;
  doc.kind = j["kind"].get<std::string>();
  require(doc.kind == "tuple" || doc.kind == "shape_ops",
          "kind must be 'tuple' or 'shape_ops'");
  require(j.contains("n") && j["n"].is_number_integer(), "missing integer n");
  require(j.contains("m") && j["m"].is_number_integer(), "missing integer m");
  doc.n = j["n"].get<int>();
  doc.m = j["m"].get<int>();
  require(doc.n >= 1 && doc.m >= 1, "n and m must be positive");
  require(j.contains("symmetry") && j["symmetry"].is_string(),
          "missing string 'symmetry'");
  doc.symmetry = j["symmetry"].get<std::string>();
  require(doc.symmetry == "symmetric" || doc.symmetry == "skew",
          "symmetry must be 'symmetric' or 'skew'");
  require(doc.kind != "shape_ops" || doc.symmetry == "symmetric",
          "shape operators must be symmetric");
  require(j.contains("matrices") && j["matrices"].is_array(),
          "missing 'matrices' array");
  require(static_cast<int>(j["matrices"].size()) == doc.m,
          "matrices array length must equal m");
  for (const Json& mj : j["matrices"]) {
    Matrix A = matrix_from_json(mj);
    require(A.rows() == doc.n && A.cols() == doc.n, "matrices must be n x n");
    doc.matrices.push_back(std::move(A));
  }
  if (j.contains("c")) {
    require(j["c"].is_number(), "c must be a number");
    doc.c = j["c"].get<double>();
  }
  if (doc.kind == "shape_ops")
    require(doc.c.has_value(), "shape_ops documents require c");
  return doc;
}

TupleDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open input file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("JSON parse error: ") + e.what());
  }
  return document_from_json(j);
}

void save_document(const std::string& path, const TupleDocument& doc) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot open output file: " + path);
  out << document_to_json(doc).dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open file for digest: " + path);
  std::uint64_t hash = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << hash;
  return os.str();
}

}  // namespace ddvv
