#include "cplx/ingest.hpp"

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "cplx/csv.hpp"
#include "cplx/error.hpp"

namespace cplx::ingest {

std::string text_to_bits(std::string_view s) {
  std::string out;
  out.reserve(s.size() * 8);
  for (char ch : s) {
    const auto byte = static_cast<unsigned char>(ch);
    for (int bit = 7; bit >= 0; --bit) {
      out.push_back(((byte >> bit) & 1U) ? '1' : '0');
    }
  }
  return out;
}

BinaryMatrix binarize_matrix(const RealMatrix& m, double threshold) {
  BinaryMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    out.data[i] = m.data[i] > threshold ? 1 : 0;
  }
  return out;
}

std::string flatten_bits(const BinaryMatrix& m) {
  std::string out;
  out.reserve(m.data.size());
  for (auto v : m.data) out.push_back(v ? '1' : '0');
  return out;
}

namespace {

bool parse_real(const std::string& field, double& out) {
  if (field.empty()) return false;
  char* end = nullptr;
  out = std::strtod(field.c_str(), &end);
  return end == field.c_str() + field.size();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

RealMatrix parse_matrix_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError("empty matrix file", 1);
  RealMatrix m;
  m.cols = rows.front().fields.size();
  for (const auto& row : rows) {
    if (row.fields.size() != m.cols) {
      throw ParseError("expected " + std::to_string(m.cols) +
                           " columns, got " + std::to_string(row.fields.size()),
                       row.line);
    }
    for (const auto& f : row.fields) {
      double v;
      if (!parse_real(trim(f), v)) {
        throw ParseError("non-numeric matrix entry '" + f + "'", row.line);
      }
      m.data.push_back(v);
    }
    ++m.rows;
  }
  return m;
}

RealMatrix load_matrix_csv(const std::string& path) {
  try {
    return parse_matrix_csv(csv::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string matrix_to_csv(const RealMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out.push_back(',');
      out += csv::format_real(m(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

std::string_view to_string(PayloadKind kind) {
  return kind == PayloadKind::kString ? "string" : "matrix";
}

std::vector<DatasetRecord> parse_dataset(std::string_view text,
                                         const std::string& base_dir) {
  const auto rows = csv::parse(text);
  const std::vector<std::string> header = {"id", "category", "payload_kind",
                                           "payload", "reference_value"};
  if (rows.empty() || rows.front().fields != header) {
    throw ParseError(
        "expected header id,category,payload_kind,payload,reference_value", 1);
  }
  std::vector<DatasetRecord> records;
  std::set<std::string> ids;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != header.size()) {
      throw ParseError("expected 5 fields, got " +
                           std::to_string(row.fields.size()),
                       row.line);
    }
    DatasetRecord rec;
    rec.id = row.fields[0];
    rec.category = row.fields[1];
    rec.payload = row.fields[3];
    const std::string where = "record '" + rec.id + "'";
    if (rec.id.empty()) throw ParseError("empty id", row.line);
    if (!ids.insert(rec.id).second) {
      throw ParseError("duplicate id '" + rec.id + "'", row.line);
    }
    const std::string& kind = row.fields[2];
    if (kind == "string") {
      rec.payload_kind = PayloadKind::kString;
    } else if (kind == "matrix") {
      rec.payload_kind = PayloadKind::kMatrix;
    } else {
      throw ParseError(where + ": unknown payload kind '" + kind + "'",
                       row.line);
    }
    if (rec.payload.empty()) {
      throw ParseError(where + ": empty payload", row.line);
    }
    if (!row.fields[4].empty()) {
      double v;
      if (!parse_real(row.fields[4], v)) {
        throw ParseError(where + ": non-numeric reference_value", row.line);
      }
      rec.reference_value = v;
    }
    if (rec.payload_kind == PayloadKind::kMatrix) {
      std::filesystem::path p(rec.payload);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      try {
        rec.matrix = load_matrix_csv(p.string());
      } catch (const Error& e) {
        throw ParseError(where + ": " + e.what(), row.line);
      }
      if (rec.matrix.empty()) {
        throw ParseError(where + ": empty matrix", row.line);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<DatasetRecord> load_dataset(const std::string& csv_path) {
  const std::string text = csv::read_file(csv_path);
  const auto dir = std::filesystem::path(csv_path).parent_path();
  return parse_dataset(text, dir.empty() ? "." : dir.string());
}

std::string dataset_to_csv(const std::vector<DatasetRecord>& records) {
  std::string out = "id,category,payload_kind,payload,reference_value\n";
  for (const auto& r : records) {
    out += csv::join({r.id, r.category, std::string(to_string(r.payload_kind)),
                      r.payload,
                      r.reference_value ? csv::format_real(*r.reference_value)
                                        : std::string()});
    out.push_back('\n');
  }
  return out;
}

void write_dataset(const std::vector<DatasetRecord>& records,
                   const std::string& csv_path) {
  csv::write_file(csv_path, dataset_to_csv(records));
}

std::string results_to_csv(const std::vector<MeasureResult>& results) {
  std::string out = "id,category,measure,value,metadata\n";
  for (const auto& r : results) {
    out += csv::join({r.id, r.category, r.measure,
                      r.value ? csv::format_real(*r.value) : std::string(),
                      r.metadata});
    out.push_back('\n');
  }
  return out;
}

void write_results(const std::vector<MeasureResult>& results,
                   const std::string& csv_path) {
  csv::write_file(csv_path, results_to_csv(results));
}

std::vector<MeasureResult> parse_results(std::string_view text) {
  const auto rows = csv::parse(text);
  const std::vector<std::string> header = {"id", "category", "measure", "value",
                                           "metadata"};
  if (rows.empty() || rows.front().fields != header) {
    throw ParseError("expected header id,category,measure,value,metadata", 1);
  }
  std::vector<MeasureResult> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != header.size()) {
      throw ParseError("expected 5 fields, got " +
                           std::to_string(row.fields.size()),
                       row.line);
    }
    MeasureResult r{row.fields[0], row.fields[1], row.fields[2], std::nullopt,
                    row.fields[4]};
    if (!row.fields[3].empty()) {
      double v;
      if (!parse_real(row.fields[3], v)) {
        throw ParseError("non-numeric value '" + row.fields[3] + "'", row.line);
      }
      r.value = v;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MeasureResult> load_results(const std::string& csv_path) {
  return parse_results(csv::read_file(csv_path));
}

}  // namespace cplx::ingest
