#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddvv/geometry.hpp"
#include "ddvv/matrix_core.hpp"
#include "json.hpp"  // vendored nlohmann/json

namespace ddvv {

using Json = nlohmann::json;

/// On-disk document: a matrix tuple or a shape-operator set. Numbers are
/// serialized with full double precision so fixture files double as
/// regression goldens.
struct TupleDocument {
  std::string kind;      // "tuple" | "shape_ops"
  std::string symmetry;  // "symmetric" | "skew"
  int n = 0;
  int m = 0;
  std::vector<Matrix> matrices;
  std::optional<double> c;  // shape_ops only

  static TupleDocument from_tuple(const MatrixTuple& t);
  static TupleDocument from_shape_ops(const ShapeOperatorSet& s);

  MatrixTuple to_tuple() const;
  ShapeOperatorSet to_shape_ops() const;
};

/// Parse failure or structural inconsistency in an input document.
struct DocumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json document_to_json(const TupleDocument& doc);
TupleDocument document_from_json(const Json& j);

TupleDocument load_document(const std::string& path);
void save_document(const std::string& path, const TupleDocument& doc);

Json matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const Json& j);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a:<hex>".
std::string file_digest(const std::string& path);

}  // namespace ddvv
