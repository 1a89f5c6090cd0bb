#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cplx/matrix.hpp"

namespace cplx::ingest {

// UTF-8 bytes of `s`, each written as 8 binary digits, most significant bit
// first.
std::string text_to_bits(std::string_view s);

// 1 where the entry is strictly greater than `threshold`, else 0.
BinaryMatrix binarize_matrix(const RealMatrix& m, double threshold);

// Row-major '0'/'1' string of a binary matrix.
std::string flatten_bits(const BinaryMatrix& m);

// Pairwise Euclidean distances between the atoms of the first molecule in a
// V2000 molfile/SDF: three header lines, a counts line whose first three
// columns hold the atom count, then one atom line per atom starting with
// x y z. Bonds and properties are not read. Throws ParseError with the
// offending line number.
RealMatrix sdf_distance_matrix(std::string_view sdf_text);

// Matrix CSV: comma-separated reals, one row per line, no header.
RealMatrix parse_matrix_csv(std::string_view text);
RealMatrix load_matrix_csv(const std::string& path);
std::string matrix_to_csv(const RealMatrix& m);

enum class PayloadKind { kString, kMatrix };

std::string_view to_string(PayloadKind kind);

struct DatasetRecord {
  std::string id;
  std::string category;
  PayloadKind payload_kind = PayloadKind::kString;
  // The payload column as written: the string itself, or the matrix CSV path.
  std::string payload;
  // Loaded matrix for kMatrix records.
  RealMatrix matrix;
  std::optional<double> reference_value;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

// Dataset CSV with header id,category,payload_kind,payload,reference_value.
// Relative matrix paths are resolved against `base_dir`. Errors name the
// offending row id.
std::vector<DatasetRecord> parse_dataset(std::string_view text,
                                         const std::string& base_dir = ".");
std::vector<DatasetRecord> load_dataset(const std::string& csv_path);
std::string dataset_to_csv(const std::vector<DatasetRecord>& records);
void write_dataset(const std::vector<DatasetRecord>& records,
                   const std::string& csv_path);

// One (record, measure) value. An empty value means "not applicable".
struct MeasureResult {
  std::string id;
  std::string category;
  std::string measure;
  std::optional<double> value;
  std::string metadata;

  friend bool operator==(const MeasureResult&, const MeasureResult&) = default;
};

// Results CSV with header id,category,measure,value,metadata; values at 12
// significant digits.
std::string results_to_csv(const std::vector<MeasureResult>& results);
void write_results(const std::vector<MeasureResult>& results,
                   const std::string& csv_path);
std::vector<MeasureResult> parse_results(std::string_view text);
std::vector<MeasureResult> load_results(const std::string& csv_path);

}  // namespace cplx::ingest
