#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cplx/assembly.hpp"
#include "cplx/bdm.hpp"
#include "cplx/matrix.hpp"

namespace cplx {

enum class Measure { kEntropy, kHuffman, kRle, kLzw, kMaExact, kMaSplit, kBdm1d, kBdm2d };

std::string_view to_string(Measure m);
// Accepts the names printed by to_string. Throws InvalidArgument otherwise.
Measure parse_measure(std::string_view name);
std::vector<Measure> parse_measure_list(std::string_view comma_separated);

struct MeasureContext {
  const bdm::CtmTable* table_1d = nullptr;
  const bdm::CtmTable* table_2d = nullptr;
  std::string table_label;  // recorded in metadata
  bdm::BdmParams bdm_params;
  std::size_t exact_guard = assembly::kDefaultExactGuard;
  double threshold = 3.0;  // matrix binarisation
};

// A measurement in the unit of its measure (bits per symbol for entropy,
// bits for Huffman/LZW/BDM, characters for RLE, join steps for MA). An
// empty value means the measure does not apply to the payload.
struct MeasureValue {
  std::optional<double> value;
  std::string metadata;
};

// String payloads are measured as text; BDM measures first expand the text
// to its UTF-8 bit string.
MeasureValue measure_string(Measure m, std::string_view payload,
                            const MeasureContext& ctx);

// Matrix payloads are binarised at ctx.threshold. bdm2d tiles the binary
// matrix; every other measure reads its row-major bit string.
MeasureValue measure_matrix(Measure m, const RealMatrix& payload,
                            const MeasureContext& ctx);

}  // namespace cplx
