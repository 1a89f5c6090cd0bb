#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "cplx/matrix.hpp"

namespace cplx::bdm {

// A block is a row-major string of digit symbols '0'..'9' with its shape.
// One-dimensional blocks have rows == 1.
struct BlockKey {
  std::size_t rows = 1;
  std::size_t cols = 0;
  std::string cells;

  auto operator<=>(const BlockKey&) const = default;
};

// Block -> complexity estimate in bits. Values are stored rounded to 12
// significant digits, the precision of the CSV format, so a save/load cycle
// reproduces the table exactly.
class CtmTable {
 public:
  CtmTable() = default;
  CtmTable(int dimension, unsigned alphabet_size, std::string provenance = {});

  int dimension() const { return dimension_; }
  unsigned alphabet_size() const { return alphabet_size_; }
  const std::string& provenance() const { return provenance_; }
  const std::map<BlockKey, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Throws InvalidArgument on duplicates, non-positive values, symbols
  // outside the alphabet, a shape that does not match the cells, or a
  // multi-row block in a 1D table.
  void insert(BlockKey block, double ctm_bits);
  void insert(std::string_view block, double ctm_bits);

  std::optional<double> find(const BlockKey& block) const;
  std::optional<double> find(std::string_view block) const;

  // Equality ignores provenance.
  friend bool operator==(const CtmTable& a, const CtmTable& b) {
    return a.dimension_ == b.dimension_ &&
           a.alphabet_size_ == b.alphabet_size_ && a.entries_ == b.entries_;
  }

 private:
  int dimension_ = 1;
  unsigned alphabet_size_ = 2;
  std::string provenance_;
  std::map<BlockKey, double> entries_;
};

// Rounds to 12 significant digits (the CSV precision).
double canonical_bits(double v);

// Exhaustive CTM for binary Turing machines with `states` states plus an
// explicit halt state. Each (state, read symbol) entry is one of 4n+2
// instructions: write/move/next-state, or write-and-halt without moving.
// All (4n+2)^(2n) machines run from a blank (all-0) tape for at most
// `step_bound` steps; the output of a halting run is the segment of tape the
// head visited. Output counts are symmetrised under 0/1 complement (running
// every machine from a blank-1 tape yields exactly the complemented outputs
// of the complemented machine). ctm(b) = -log2(count(b) / halting runs).
//
// Supported: states in {1, 2}, symbols == 2, step_bound >= 6.
CtmTable ctm_enumerate(int states, int symbols, int step_bound);

// Toy tables for tests and the --toy-ctm flag. The 1D table covers the four
// binary 2-blocks; the 2D table covers all sixteen 2x2 binary blocks.
CtmTable toy_table_1d();
CtmTable toy_table_2d();

// CSV with header "block,ctm_bits" (1D) or "rows,cols,block,ctm_bits" (2D).
void ctm_save(const CtmTable& table, const std::string& path);
std::string ctm_to_csv(const CtmTable& table);
CtmTable ctm_load(const std::string& path);
CtmTable ctm_from_csv(std::string_view text, std::string provenance = {});

enum class Boundary { kIgnore, kPad };
enum class MissingBlock { kError, kEntropySurrogate };

struct BdmParams {
  std::size_t block_size = 2;  // 1D
  std::size_t block_rows = 2;  // 2D
  std::size_t block_cols = 2;  // 2D
  std::size_t overlap = 0;
  Boundary boundary = Boundary::kIgnore;
  MissingBlock missing_block = MissingBlock::kError;
  char pad_symbol = '0';
};

struct BdmValue {
  double bits = 0.0;
  std::size_t blocks = 0;           // total blocks, with multiplicity
  std::size_t distinct_blocks = 0;
  std::size_t surrogate_blocks = 0;  // distinct blocks priced by the surrogate
};

// Sum over distinct blocks of ctm(block) + log2(multiplicity).
//
// Blocks start every (block_size - overlap) symbols. With Boundary::kIgnore
// a trailing partial block is dropped; with kPad it is completed with
// pad_symbol. Missing blocks either throw (naming the block) or are priced
// as length * H(block) + 1 bits.
BdmValue bdm_1d(std::string_view s, const CtmTable& table,
                const BdmParams& params = {});

// Same aggregation over block_rows x block_cols tiles scanned row-major.
BdmValue bdm_2d(const BinaryMatrix& m, const CtmTable& table,
                const BdmParams& params = {});

}  // namespace cplx::bdm
