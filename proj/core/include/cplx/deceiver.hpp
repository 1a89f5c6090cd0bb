#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cplx/measures.hpp"

namespace cplx::deceiver {

enum class GeneratorKind { kChampernowne, kModular };

// A tiny program whose output looks complex to statistical measures.
//
// Champernowne: `length` digits of 1, 2, 3, ... written in `base`.
// Modular: module := seed; for i = 1..steps append module, and after every
// `period`-th step extend module with the next extension symbol (cycling).
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kChampernowne;
  unsigned base = 10;
  std::size_t length = 0;
  std::string seed;
  std::size_t period = 1;
  std::size_t steps = 1;
  std::vector<std::string> extensions;  // one symbol each

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

GeneratorSpec champernowne_spec(std::size_t length, unsigned base = 10);
GeneratorSpec modular_spec(std::string seed, std::size_t period,
                           std::size_t steps,
                           std::vector<std::string> extensions = {});

// First n characters of the base-b Champernowne word. Digits above 9 use
// lowercase letters. Throws InvalidArgument unless 2 <= base <= 36.
std::string champernowne(std::size_t n, unsigned base = 10);

std::string modular_generate(const GeneratorSpec& spec);

// Output length in symbols, from the spec alone.
std::size_t modular_output_length(const GeneratorSpec& spec);

std::string generate(const GeneratorSpec& spec);

// Throws InvalidArgument when the spec breaks its kind's preconditions.
void validate(const GeneratorSpec& spec);

// Self-delimiting bit encoding ('0'/'1' characters):
//   kind           2 bits (00 champernowne, 01 modular)
//   champernowne   gamma(base), gamma(length + 1)
//   modular        gamma(period), gamma(steps),
//                  gamma(|seed| + 1) then 8 bits per seed byte,
//                  gamma(|ext| + 1) then 8 bits per byte of the
//                  concatenated extension symbols
// where gamma is the Elias gamma code and |x| counts UTF-8 bytes.
std::string encode_spec_bits(const GeneratorSpec& spec);
GeneratorSpec decode_spec_bits(std::string_view bits);
std::size_t description_bits(const GeneratorSpec& spec);
std::string elias_gamma(std::uint64_t x);

// JSON text form used on the command line, e.g.
//   {"kind":"champernowne","base":10,"length":1000}
//   {"kind":"modular","seed":"A","period":2,"steps":3,"extensions":["B"]}
GeneratorSpec parse_spec_json(std::string_view json);
std::string spec_to_json(const GeneratorSpec& spec);

struct DivergenceReport {
  std::size_t length = 0;  // symbols
  std::size_t description_bits = 0;
  double normalized_entropy = 0.0;  // H / log2(distinct symbols); 0 if one
  std::vector<std::pair<Measure, MeasureValue>> measures;

  std::optional<double> value(Measure m) const;
};

// Measures `s` with each requested measure and sets it against the
// generator's description length. Throws InvalidArgument with
// "payload does not match spec" when s != generate(spec).
DivergenceReport divergence_report(std::string_view s,
                                   const GeneratorSpec& spec,
                                   const std::vector<Measure>& measures,
                                   const MeasureContext& ctx = {});

}  // namespace cplx::deceiver
