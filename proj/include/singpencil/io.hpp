#pragma once

// Matrix Market files, JSON reports (schema "singpencil/1") and CSV tables
// with a leading '#' manifest line.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "singpencil/experiments.hpp"
#include "singpencil/kcf.hpp"
#include "singpencil/matcore.hpp"
#include "singpencil/oracle.hpp"
#include "singpencil/pencil.hpp"
#include "singpencil/solvers.hpp"

namespace singpencil {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "singpencil/1";
inline constexpr const char* kVersion = "1.0.0";

struct MatrixMarketData {
  Matrix matrix;
  FieldKind field = FieldKind::real;
};

/// Reads a "matrix" object in array or coordinate format with real, integer
/// or complex entries and general symmetry.  Errors carry line and column.
MatrixMarketData read_matrix_market(std::istream& in);
MatrixMarketData read_matrix_market_file(const std::string& path);

enum class MatrixMarketFormat { array, coordinate };

/// Writes the shortest decimal form that reads back to the same double.
void write_matrix_market(std::ostream& out, const Matrix& m, FieldKind field,
                         MatrixMarketFormat format = MatrixMarketFormat::array);
void write_matrix_market_file(const std::string& path, const Matrix& m, FieldKind field,
                              MatrixMarketFormat format = MatrixMarketFormat::array);

/// Reads A and B and builds a pencil; the field is complex if either file is.
Pencil read_pencil(const std::string& path_a, const std::string& path_b);

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::uint64_t seed = 0;
  /// Wall-clock seconds; omitted from output when unset so seeded runs are
  /// byte-identical.
  std::optional<double> timing;

  Json to_json() const;
};

/// Shortest round-trip decimal.
std::string format_double(double v);

/// [re, im]; non-finite parts become the string "inf" or "nan".
Json scalar_json(Scalar z);
/// lambda as "re+imi", or "inf".
std::string format_lambda(Scalar z);

Json to_json(const SolveReport& rep, const RunManifest& manifest);
Json to_json(const Pencil& p, const GroundTruth& gt, const RunManifest& manifest);
Json to_json(const McReport& rep, const RunManifest& manifest);
Json to_json(const BoundsTable& table, const RunManifest& manifest);
Json to_json(const WeakCondEstimate& est, const RunManifest& manifest);

/// RFC 4180 table preceded by "# <manifest json>".
void write_csv(std::ostream& out, const RunManifest& manifest,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace singpencil
