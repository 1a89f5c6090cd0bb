#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cplx::coding {

// Symbols are Unicode scalar values decoded from UTF-8 input.
using Symbol = char32_t;

struct SymbolCount {
  Symbol symbol;
  std::uint64_t count;
};

// Empirical symbol frequencies, ordered by first occurrence in the input.
struct SymbolCounts {
  std::vector<SymbolCount> entries;
  std::uint64_t total = 0;
};

// Decodes UTF-8 into scalar values. Invalid sequences throw ParseError.
std::vector<Symbol> decode_utf8(std::string_view s);
std::string encode_utf8(Symbol c);

SymbolCounts count_symbols(std::string_view s);

// Bits per symbol, -sum p log2 p. Throws InvalidArgument on empty input.
double shannon_entropy(std::string_view s);
double shannon_entropy(const SymbolCounts& counts);

struct HuffmanNode {
  std::uint64_t count = 0;
  // Leaves carry a symbol and have left == right == -1.
  Symbol symbol = 0;
  int left = -1;
  int right = -1;

  bool is_leaf() const { return left < 0; }
};

struct HuffmanResult {
  std::map<Symbol, unsigned> code_lengths;
  std::uint64_t total_bits = 0;
  unsigned tree_levels = 0;
  // Leaves first (first-occurrence order), then internal nodes in merge
  // order. The root is the last node.
  std::vector<HuffmanNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  std::size_t internal_count() const;
};

// Static Huffman code over whole-input frequencies.
//
// Merge order: lowest count first. On equal counts internal nodes are taken
// before leaves; within each kind the earlier-created node wins. The first
// node taken becomes the left (0) child. A single distinct symbol is coded
// with 1 bit per occurrence and a zero-level tree.
HuffmanResult huffman(std::string_view s);
HuffmanResult huffman(const SymbolCounts& counts);

// Digraph with "symbol:count" leaves and merged-count internal nodes; edges
// labeled 0 (left) and 1 (right).
std::string huffman_tree_dot(const HuffmanResult& result);

struct RleResult {
  std::string encoded;
  std::size_t encoded_length = 0;  // in characters (scalar values)
};

// Character-then-count run-length encoding: "AAAABBB" -> "A4B3".
RleResult rle_encode(std::string_view s);

// Inverse of rle_encode. Symbols that are decimal digits are not
// representable in this format and are rejected by the decoder.
std::string rle_decode(std::string_view encoded);

struct LzwResult {
  std::vector<std::uint32_t> codes;
  // Initial dictionary: distinct symbols in first-occurrence order.
  std::vector<Symbol> alphabet;
  std::size_t dict_size_final = 0;
  unsigned code_width = 0;
  std::uint64_t bit_length = 0;
};

// Greedy longest-match LZW. Every code is accounted at the fixed width
// ceil(log2(dict_size_final)); a one-entry dictionary needs zero bits.
LzwResult lzw_encode(std::string_view s);
std::string lzw_decode(const std::vector<std::uint32_t>& codes,
                       const std::vector<Symbol>& alphabet);

}  // namespace cplx::coding
