#include "cplx/coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "cplx/error.hpp"

namespace cplx::coding {

std::vector<Symbol> decode_utf8(std::string_view s) {
  std::vector<Symbol> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int extra = 0;
    Symbol cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      throw ParseError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + extra >= s.size() && extra > 0) {
      throw ParseError("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (int k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        throw ParseError("invalid UTF-8 continuation at offset " +
                         std::to_string(i + k));
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string encode_utf8(Symbol c) {
  std::string out;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
  return out;
}

SymbolCounts count_symbols(std::string_view s) {
  SymbolCounts counts;
  std::unordered_map<Symbol, std::size_t> index;
  for (Symbol c : decode_utf8(s)) {
    auto [it, inserted] = index.try_emplace(c, counts.entries.size());
    if (inserted) {
      counts.entries.push_back({c, 0});
    }
    ++counts.entries[it->second].count;
    ++counts.total;
  }
  return counts;
}

double shannon_entropy(const SymbolCounts& counts) {
  if (counts.total == 0) {
    throw InvalidArgument("empty input");
  }
  const double n = static_cast<double>(counts.total);
  double h = 0.0;
  for (const auto& e : counts.entries) {
    const double p = static_cast<double>(e.count) / n;
    h -= p * std::log2(p);
  }
  // -0.0 for the single-symbol case.
  return h <= 0.0 ? 0.0 : h;
}

double shannon_entropy(std::string_view s) {
  return shannon_entropy(count_symbols(s));
}

std::size_t HuffmanResult::internal_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(),
      [](const HuffmanNode& n) { return !n.is_leaf(); }));
}

HuffmanResult huffman(const SymbolCounts& counts) {
  if (counts.total == 0) {
    throw InvalidArgument("empty input");
  }
  HuffmanResult result;
  for (const auto& e : counts.entries) {
    result.nodes.push_back({e.count, e.symbol, -1, -1});
  }
  const std::size_t leaves = result.nodes.size();
  if (leaves == 1) {
    result.code_lengths[counts.entries[0].symbol] = 1;
    result.total_bits = counts.total;
    result.tree_levels = 0;
    return result;
  }

  // Priority key (count, kind, creation index) with internal nodes (kind 0)
  // ahead of leaves (kind 1) on equal counts.
  auto key = [&](int id) {
    const bool leaf = static_cast<std::size_t>(id) < leaves;
    return std::tuple(result.nodes[id].count, leaf ? 1 : 0, id);
  };
  std::vector<int> open;
  for (std::size_t i = 0; i < leaves; ++i) open.push_back(static_cast<int>(i));

  auto pop_min = [&]() {
    auto it = std::min_element(open.begin(), open.end(),
                               [&](int a, int b) { return key(a) < key(b); });
    const int id = *it;
    open.erase(it);
    return id;
  };

  while (open.size() > 1) {
    const int a = pop_min();
    const int b = pop_min();
    HuffmanNode merged;
    merged.count = result.nodes[a].count + result.nodes[b].count;
    merged.left = a;
    merged.right = b;
    result.nodes.push_back(merged);
    open.push_back(static_cast<int>(result.nodes.size()) - 1);
  }

  // Depths by walking down from the root; children always precede parents.
  std::vector<unsigned> depth(result.nodes.size(), 0);
  for (int id = result.root(); id >= 0; --id) {
    const auto& n = result.nodes[id];
    if (!n.is_leaf()) {
      depth[n.left] = depth[id] + 1;
      depth[n.right] = depth[id] + 1;
    }
  }
  for (std::size_t i = 0; i < leaves; ++i) {
    const auto& n = result.nodes[i];
    result.code_lengths[n.symbol] = depth[i];
    result.total_bits += n.count * depth[i];
    result.tree_levels = std::max(result.tree_levels, depth[i]);
  }
  return result;
}

HuffmanResult huffman(std::string_view s) { return huffman(count_symbols(s)); }

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string huffman_tree_dot(const HuffmanResult& result) {
  std::ostringstream os;
  os << "digraph huffman {\n";
  os << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < result.nodes.size(); ++i) {
    const auto& n = result.nodes[i];
    if (n.is_leaf()) {
      os << "  n" << i << " [shape=box, label=\""
         << dot_escape(encode_utf8(n.symbol)) << ":" << n.count << "\"];\n";
    } else {
      os << "  n" << i << " [label=\"" << n.count << "\"];\n";
    }
  }
  for (std::size_t i = 0; i < result.nodes.size(); ++i) {
    const auto& n = result.nodes[i];
    if (!n.is_leaf()) {
      os << "  n" << i << " -> n" << n.left << " [label=\"0\"];\n";
      os << "  n" << i << " -> n" << n.right << " [label=\"1\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

RleResult rle_encode(std::string_view s) {
  RleResult r;
  const auto symbols = decode_utf8(s);
  std::size_t i = 0;
  while (i < symbols.size()) {
    std::size_t j = i;
    while (j < symbols.size() && symbols[j] == symbols[i]) ++j;
    const std::string count = std::to_string(j - i);
    r.encoded += encode_utf8(symbols[i]);
    r.encoded += count;
    r.encoded_length += 1 + count.size();
    i = j;
  }
  return r;
}

std::string rle_decode(std::string_view encoded) {
  const auto symbols = decode_utf8(encoded);
  std::string out;
  std::size_t i = 0;
  while (i < symbols.size()) {
    const Symbol c = symbols[i++];
    if (c >= U'0' && c <= U'9') {
      throw ParseError("RLE stream: expected symbol, found digit");
    }
    std::size_t run = 0;
    std::size_t digits = 0;
    while (i < symbols.size() && symbols[i] >= U'0' && symbols[i] <= U'9') {
      run = run * 10 + static_cast<std::size_t>(symbols[i] - U'0');
      ++i;
      ++digits;
    }
    if (digits == 0 || run == 0) {
      throw ParseError("RLE stream: missing run length");
    }
    const std::string sym = encode_utf8(c);
    for (std::size_t k = 0; k < run; ++k) out += sym;
  }
  return out;
}

LzwResult lzw_encode(std::string_view s) {
  const auto symbols = decode_utf8(s);
  if (symbols.empty()) {
    throw InvalidArgument("empty input");
  }
  LzwResult r;
  std::map<std::u32string, std::uint32_t> dict;
  for (Symbol c : symbols) {
    std::u32string key(1, c);
    if (dict.emplace(key, static_cast<std::uint32_t>(dict.size())).second) {
      r.alphabet.push_back(c);
    }
  }

  std::u32string current;
  for (Symbol c : symbols) {
    std::u32string extended = current + c;
    if (dict.count(extended)) {
      current = std::move(extended);
      continue;
    }
    r.codes.push_back(dict.at(current));
    dict.emplace(std::move(extended), static_cast<std::uint32_t>(dict.size()));
    current.assign(1, c);
  }
  r.codes.push_back(dict.at(current));

  r.dict_size_final = dict.size();
  r.code_width = static_cast<unsigned>(
      std::bit_width(static_cast<std::uint64_t>(r.dict_size_final - 1)));
  r.bit_length = static_cast<std::uint64_t>(r.codes.size()) * r.code_width;
  return r;
}

std::string lzw_decode(const std::vector<std::uint32_t>& codes,
                       const std::vector<Symbol>& alphabet) {
  std::vector<std::u32string> dict;
  for (Symbol c : alphabet) dict.emplace_back(1, c);
  std::u32string out;
  std::u32string previous;
  for (std::uint32_t code : codes) {
    std::u32string entry;
    if (code < dict.size()) {
      entry = dict[code];
    } else if (code == dict.size() && !previous.empty()) {
      entry = previous + previous.front();
    } else {
      throw ParseError("LZW stream: code " + std::to_string(code) +
                       " out of range");
    }
    if (!previous.empty()) dict.push_back(previous + entry.front());
    out += entry;
    previous = std::move(entry);
  }
  std::string bytes;
  for (Symbol c : out) bytes += encode_utf8(c);
  return bytes;
}

}  // namespace cplx::coding
