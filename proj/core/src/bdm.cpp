#include "cplx/bdm.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "cplx/coding.hpp"
#include "cplx/csv.hpp"
#include "cplx/error.hpp"

namespace cplx::bdm {

double canonical_bits(double v) {
  return std::strtod(csv::format_real(v).c_str(), nullptr);
}

CtmTable::CtmTable(int dimension, unsigned alphabet_size,
                   std::string provenance)
    : dimension_(dimension),
      alphabet_size_(alphabet_size),
      provenance_(std::move(provenance)) {
  if (dimension != 1 && dimension != 2) {
    throw InvalidArgument("CTM table dimension must be 1 or 2");
  }
  if (alphabet_size < 2 || alphabet_size > 10) {
    throw InvalidArgument("CTM table alphabet size must be in [2, 10]");
  }
}

void CtmTable::insert(BlockKey block, double ctm_bits) {
  if (block.cells.empty()) {
    throw InvalidArgument("empty block");
  }
  if (block.rows * block.cols != block.cells.size()) {
    throw InvalidArgument("block '" + block.cells + "' does not match shape " +
                          std::to_string(block.rows) + "x" +
                          std::to_string(block.cols));
  }
  if (dimension_ == 1 && block.rows != 1) {
    throw InvalidArgument("multi-row block in a 1D table");
  }
  for (char c : block.cells) {
    if (c < '0' || c >= static_cast<char>('0' + alphabet_size_)) {
      throw InvalidArgument("block '" + block.cells +
                            "' has a symbol outside the alphabet");
    }
  }
  if (!(ctm_bits > 0.0) || !std::isfinite(ctm_bits)) {
    throw InvalidArgument("block '" + block.cells +
                          "': ctm_bits must be positive");
  }
  const std::string name = block.cells;
  if (!entries_.emplace(std::move(block), canonical_bits(ctm_bits)).second) {
    throw InvalidArgument("duplicate block '" + name + "'");
  }
}

void CtmTable::insert(std::string_view block, double ctm_bits) {
  insert(BlockKey{1, block.size(), std::string(block)}, ctm_bits);
}

std::optional<double> CtmTable::find(const BlockKey& block) const {
  if (auto it = entries_.find(block); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::optional<double> CtmTable::find(std::string_view block) const {
  return find(BlockKey{1, block.size(), std::string(block)});
}

CtmTable toy_table_1d() {
  CtmTable t(1, 2, "toy 1D table (illustrative values, not enumerated)");
  t.insert("00", 2.0);
  t.insert("11", 2.0);
  t.insert("01", 3.0);
  t.insert("10", 2.5);
  return t;
}

CtmTable toy_table_2d() {
  CtmTable t(2, 2, "toy 2x2 table (illustrative values, not enumerated)");
  const std::map<std::string, double> values = {
      {"0000", 4.0}, {"1111", 4.0}, {"0101", 5.0}, {"1010", 5.0},
      {"0011", 5.0}, {"1100", 5.0}, {"0110", 6.5}, {"1001", 6.5},
      {"0001", 6.0}, {"0010", 6.0}, {"0100", 6.0}, {"1000", 6.0},
      {"1110", 6.0}, {"1101", 6.0}, {"1011", 6.0}, {"0111", 6.0},
  };
  for (const auto& [cells, bits] : values) t.insert(BlockKey{2, 2, cells}, bits);
  return t;
}

namespace {

std::size_t parse_size(const std::string& field, std::size_t line) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a positive integer, got '" + field + "'", line);
  }
  const auto v = std::stoull(field);
  if (v == 0) throw ParseError("block dimensions must be positive", line);
  return static_cast<std::size_t>(v);
}

double parse_bits(const std::string& field, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw ParseError("expected a number, got '" + field + "'", line);
  }
  return v;
}

}  // namespace

std::string ctm_to_csv(const CtmTable& table) {
  std::ostringstream os;
  if (table.dimension() == 1) {
    os << "block,ctm_bits\n";
    for (const auto& [block, bits] : table.entries()) {
      os << block.cells << ',' << csv::format_real(bits) << '\n';
    }
  } else {
    os << "rows,cols,block,ctm_bits\n";
    for (const auto& [block, bits] : table.entries()) {
      os << block.rows << ',' << block.cols << ',' << block.cells << ','
         << csv::format_real(bits) << '\n';
    }
  }
  return os.str();
}

void ctm_save(const CtmTable& table, const std::string& path) {
  csv::write_file(path, ctm_to_csv(table));
}

CtmTable ctm_from_csv(std::string_view text, std::string provenance) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError("empty CTM table file", 1);
  const auto& header = rows.front().fields;
  int dimension = 0;
  if (header == std::vector<std::string>{"block", "ctm_bits"}) {
    dimension = 1;
  } else if (header ==
             std::vector<std::string>{"rows", "cols", "block", "ctm_bits"}) {
    dimension = 2;
  } else {
    throw ParseError(
        "expected header 'block,ctm_bits' or 'rows,cols,block,ctm_bits'",
        rows.front().line);
  }
  if (rows.size() == 1) {
    throw ParseError("CTM table has a header but no entries", rows.front().line);
  }

  struct Parsed {
    BlockKey key;
    double bits;
    std::size_t line;
  };
  std::vector<Parsed> parsed;
  char max_symbol = '1';
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::size_t expected = dimension == 1 ? 2 : 4;
    if (row.fields.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) + " fields, got " +
                           std::to_string(row.fields.size()),
                       row.line);
    }
    Parsed p;
    p.line = row.line;
    if (dimension == 1) {
      p.key = BlockKey{1, row.fields[0].size(), row.fields[0]};
      p.bits = parse_bits(row.fields[1], row.line);
    } else {
      p.key = BlockKey{parse_size(row.fields[0], row.line),
                       parse_size(row.fields[1], row.line), row.fields[2]};
      p.bits = parse_bits(row.fields[3], row.line);
    }
    for (char c : p.key.cells) {
      if (c < '0' || c > '9') {
        throw ParseError("block '" + p.key.cells + "' has non-digit symbols",
                         row.line);
      }
      max_symbol = std::max(max_symbol, c);
    }
    parsed.push_back(std::move(p));
  }

  CtmTable table(dimension, static_cast<unsigned>(max_symbol - '0' + 1),
                 std::move(provenance));
  for (auto& p : parsed) {
    try {
      table.insert(std::move(p.key), p.bits);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), p.line);
    }
  }
  return table;
}

CtmTable ctm_load(const std::string& path) {
  return ctm_from_csv(csv::read_file(path), "loaded from " + path);
}

namespace {

double surrogate_bits(const std::string& cells) {
  return static_cast<double>(cells.size()) * coding::shannon_entropy(cells) +
         1.0;
}

void check_symbols(std::string_view s, const CtmTable& table) {
  for (char c : s) {
    if (c < '0' || c >= static_cast<char>('0' + table.alphabet_size())) {
      throw InvalidArgument(std::string("symbol '") + c +
                            "' is outside the table alphabet of size " +
                            std::to_string(table.alphabet_size()));
    }
  }
}

void check_params(std::size_t block, const BdmParams& params,
                  const CtmTable& table) {
  if (block == 0) throw InvalidArgument("block size must be positive");
  if (params.overlap >= block) {
    throw InvalidArgument("overlap must be smaller than the block size");
  }
  if (params.boundary == Boundary::kPad) {
    check_symbols(std::string_view(&params.pad_symbol, 1), table);
  }
}

// Window starts along one axis of length n.
std::vector<std::size_t> window_starts(std::size_t n, std::size_t block,
                                       std::size_t overlap, Boundary boundary) {
  std::vector<std::size_t> starts;
  const std::size_t stride = block - overlap;
  for (std::size_t s = 0; s < n; s += stride) {
    if (s + block <= n) {
      starts.push_back(s);
    } else {
      // Partial window: only kept when padding and it covers new cells.
      if (boundary == Boundary::kPad && (s == 0 || s + overlap < n)) {
        starts.push_back(s);
      }
      break;
    }
  }
  return starts;
}

BdmValue aggregate(const std::map<BlockKey, std::size_t>& counts,
                   const CtmTable& table, const BdmParams& params) {
  BdmValue v;
  for (const auto& [block, count] : counts) {
    double ctm = 0.0;
    if (auto found = table.find(block)) {
      ctm = *found;
    } else if (params.missing_block == MissingBlock::kEntropySurrogate) {
      ctm = surrogate_bits(block.cells);
      ++v.surrogate_blocks;
    } else {
      std::string shape = block.rows == 1
                              ? std::string()
                              : " (" + std::to_string(block.rows) + "x" +
                                    std::to_string(block.cols) + ")";
      throw InvalidArgument("block '" + block.cells + "'" + shape +
                            " is not in the CTM table");
    }
    v.bits += ctm + std::log2(static_cast<double>(count));
    v.blocks += count;
  }
  v.distinct_blocks = counts.size();
  return v;
}

}  // namespace

BdmValue bdm_1d(std::string_view s, const CtmTable& table,
                const BdmParams& params) {
  if (table.dimension() != 1) {
    throw InvalidArgument("bdm_1d needs a 1D CTM table");
  }
  check_params(params.block_size, params, table);
  check_symbols(s, table);
  if (s.size() < params.block_size) {
    throw InvalidArgument("input shorter than the block size");
  }
  std::map<BlockKey, std::size_t> counts;
  for (std::size_t start : window_starts(s.size(), params.block_size,
                                         params.overlap, params.boundary)) {
    std::string cells(s.substr(start, params.block_size));
    cells.resize(params.block_size, params.pad_symbol);
    ++counts[BlockKey{1, params.block_size, std::move(cells)}];
  }
  return aggregate(counts, table, params);
}

BdmValue bdm_2d(const BinaryMatrix& m, const CtmTable& table,
                const BdmParams& params) {
  if (table.dimension() != 2) {
    throw InvalidArgument("bdm_2d needs a 2D CTM table");
  }
  check_params(params.block_rows, params, table);
  check_params(params.block_cols, params, table);
  if (m.rows < params.block_rows || m.cols < params.block_cols) {
    throw InvalidArgument("matrix smaller than the block shape");
  }
  for (auto cell : m.data) {
    if (cell >= table.alphabet_size()) {
      throw InvalidArgument("matrix entry outside the table alphabet");
    }
  }
  const auto row_starts = window_starts(m.rows, params.block_rows,
                                        params.overlap, params.boundary);
  const auto col_starts = window_starts(m.cols, params.block_cols,
                                        params.overlap, params.boundary);
  std::map<BlockKey, std::size_t> counts;
  for (std::size_t r0 : row_starts) {
    for (std::size_t c0 : col_starts) {
      std::string cells;
      cells.reserve(params.block_rows * params.block_cols);
      for (std::size_t r = r0; r < r0 + params.block_rows; ++r) {
        for (std::size_t c = c0; c < c0 + params.block_cols; ++c) {
          cells.push_back(r < m.rows && c < m.cols
                              ? static_cast<char>('0' + m(r, c))
                              : params.pad_symbol);
        }
      }
      ++counts[BlockKey{params.block_rows, params.block_cols, std::move(cells)}];
    }
  }
  return aggregate(counts, table, params);
}

}  // namespace cplx::bdm
