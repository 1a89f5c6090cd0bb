#include "cplx/measures.hpp"

#include <array>

#include "cplx/coding.hpp"
#include "cplx/csv.hpp"
#include "cplx/error.hpp"
#include "cplx/ingest.hpp"

namespace cplx {

namespace {

constexpr std::array<std::pair<Measure, std::string_view>, 8> kNames = {{
    {Measure::kEntropy, "entropy"},
    {Measure::kHuffman, "huffman"},
    {Measure::kRle, "rle"},
    {Measure::kLzw, "lzw"},
    {Measure::kMaExact, "ma_exact"},
    {Measure::kMaSplit, "ma_split"},
    {Measure::kBdm1d, "bdm1d"},
    {Measure::kBdm2d, "bdm2d"},
}};

std::string bdm_metadata(const MeasureContext& ctx, const bdm::BdmValue& v,
                         std::string_view shape, std::string_view input) {
  const auto& p = ctx.bdm_params;
  std::string md = "table=" + ctx.table_label + ";block=" + std::string(shape) +
                   ";overlap=" + std::to_string(p.overlap) + ";boundary=" +
                   (p.boundary == bdm::Boundary::kIgnore ? "ignore" : "pad") +
                   ";missing=" +
                   (p.missing_block == bdm::MissingBlock::kError ? "error"
                                                                 : "entropy");
  if (v.surrogate_blocks > 0) {
    md += ";surrogate_blocks=" + std::to_string(v.surrogate_blocks);
  }
  md += ";input=" + std::string(input);
  return md;
}

MeasureValue measure_symbols(Measure m, std::string_view s,
                             const MeasureContext& ctx) {
  switch (m) {
    case Measure::kEntropy:
      return {coding::shannon_entropy(s), "bits_per_symbol"};
    case Measure::kHuffman: {
      const auto h = coding::huffman(s);
      return {static_cast<double>(h.total_bits),
              "static;tree_levels=" + std::to_string(h.tree_levels)};
    }
    case Measure::kRle: {
      const auto r = coding::rle_encode(s);
      return {static_cast<double>(r.encoded_length), "char_then_count"};
    }
    case Measure::kLzw: {
      const auto l = coding::lzw_encode(s);
      return {static_cast<double>(l.bit_length),
              "fixed_width=" + std::to_string(l.code_width) +
                  ";codes=" + std::to_string(l.codes.size()) +
                  ";dict=" + std::to_string(l.dict_size_final)};
    }
    case Measure::kMaExact: {
      const auto a = assembly::assembly_index_exact(s, ctx.exact_guard);
      return {static_cast<double>(a.index),
              "exact;guard=" + std::to_string(ctx.exact_guard)};
    }
    case Measure::kMaSplit: {
      const auto a = assembly::assembly_index_split(s);
      return {static_cast<double>(a.index), "split_upper_bound"};
    }
    default:
      throw InvalidArgument("not a symbol measure");
  }
}

const bdm::CtmTable& require(const bdm::CtmTable* t, std::string_view what) {
  if (t == nullptr) {
    throw InvalidArgument(std::string(what) + " needs a CTM table");
  }
  return *t;
}

}  // namespace

std::string_view to_string(Measure m) {
  for (const auto& [k, name] : kNames) {
    if (k == m) return name;
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown measure '" + std::string(name) + "'");
}

std::vector<Measure> parse_measure_list(std::string_view comma_separated) {
  std::vector<Measure> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const auto end = comma_separated.find(',', start);
    const auto item = comma_separated.substr(
        start, end == std::string_view::npos ? std::string_view::npos
                                             : end - start);
    out.push_back(parse_measure(item));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

MeasureValue measure_string(Measure m, std::string_view payload,
                            const MeasureContext& ctx) {
  if (m == Measure::kBdm2d) {
    return {std::nullopt, "not applicable to string payloads"};
  }
  if (m == Measure::kBdm1d) {
    const auto& table = require(ctx.table_1d, "bdm1d");
    const auto v = bdm::bdm_1d(ingest::text_to_bits(payload), table,
                               ctx.bdm_params);
    return {v.bits,
            bdm_metadata(ctx, v, std::to_string(ctx.bdm_params.block_size),
                         "utf8_bits")};
  }
  return measure_symbols(m, payload, ctx);
}

MeasureValue measure_matrix(Measure m, const RealMatrix& payload,
                            const MeasureContext& ctx) {
  const auto binary = ingest::binarize_matrix(payload, ctx.threshold);
  const std::string threshold = "threshold=" + csv::format_real(ctx.threshold);
  if (m == Measure::kBdm2d) {
    const auto& table = require(ctx.table_2d, "bdm2d");
    const auto v = bdm::bdm_2d(binary, table, ctx.bdm_params);
    return {v.bits, bdm_metadata(ctx, v,
                                 std::to_string(ctx.bdm_params.block_rows) +
                                     "x" +
                                     std::to_string(ctx.bdm_params.block_cols),
                                 "binary_matrix") +
                        ";" + threshold};
  }
  const std::string bits = ingest::flatten_bits(binary);
  if (m == Measure::kBdm1d) {
    const auto& table = require(ctx.table_1d, "bdm1d");
    const auto v = bdm::bdm_1d(bits, table, ctx.bdm_params);
    return {v.bits,
            bdm_metadata(ctx, v, std::to_string(ctx.bdm_params.block_size),
                         "flattened_matrix") +
                ";" + threshold};
  }
  auto v = measure_symbols(m, bits, ctx);
  v.metadata += ";flattened_matrix;" + threshold;
  return v;
}

}  // namespace cplx
