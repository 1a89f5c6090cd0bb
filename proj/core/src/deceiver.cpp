#include "cplx/deceiver.hpp"

#include <bit>
#include <cmath>

#include "cplx/coding.hpp"
#include "cplx/error.hpp"
#include "json.hpp"

namespace cplx::deceiver {

GeneratorSpec champernowne_spec(std::size_t length, unsigned base) {
  GeneratorSpec s;
  s.kind = GeneratorKind::kChampernowne;
  s.length = length;
  s.base = base;
  return s;
}

GeneratorSpec modular_spec(std::string seed, std::size_t period,
                           std::size_t steps,
                           std::vector<std::string> extensions) {
  GeneratorSpec s;
  s.kind = GeneratorKind::kModular;
  s.seed = std::move(seed);
  s.period = period;
  s.steps = steps;
  s.extensions = std::move(extensions);
  return s;
}

std::string champernowne(std::size_t n, unsigned base) {
  if (base < 2 || base > 36) {
    throw InvalidArgument("base must be in [2, 36]");
  }
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(n);
  std::string digits;
  for (std::uint64_t k = 1; out.size() < n; ++k) {
    digits.clear();
    for (std::uint64_t v = k; v > 0; v /= base) digits.push_back(kDigits[v % base]);
    for (auto it = digits.rbegin(); it != digits.rend() && out.size() < n; ++it) {
      out.push_back(*it);
    }
  }
  return out;
}

void validate(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorKind::kChampernowne) {
    if (spec.base < 2 || spec.base > 36) {
      throw InvalidArgument("base must be in [2, 36]");
    }
    return;
  }
  if (spec.seed.empty()) throw InvalidArgument("empty seed");
  if (spec.steps == 0) throw InvalidArgument("steps must be positive");
  if (spec.period == 0) throw InvalidArgument("period must be positive");
  for (const auto& e : spec.extensions) {
    if (coding::decode_utf8(e).size() != 1) {
      throw InvalidArgument("extension '" + e + "' is not a single symbol");
    }
  }
  if (spec.extensions.empty() && spec.period < spec.steps) {
    throw InvalidArgument(
        "extensions required when the module grows (period < steps)");
  }
}

std::string modular_generate(const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::kModular) {
    throw InvalidArgument("not a modular spec");
  }
  validate(spec);
  std::string module = spec.seed;
  std::string out;
  std::size_t next_extension = 0;
  for (std::size_t i = 1; i <= spec.steps; ++i) {
    out += module;
    if (i % spec.period == 0 && i < spec.steps) {
      module += spec.extensions[next_extension];
      next_extension = (next_extension + 1) % spec.extensions.size();
    }
  }
  return out;
}

std::size_t modular_output_length(const GeneratorSpec& spec) {
  validate(spec);
  const std::size_t seed = coding::decode_utf8(spec.seed).size();
  // Step i (1-based) appends a module of seed + floor((i - 1) / period).
  std::size_t total = 0;
  const std::size_t full = spec.steps / spec.period;
  const std::size_t rest = spec.steps % spec.period;
  // Blocks of `period` steps share a module length.
  for (std::size_t block = 0; block < full; ++block) {
    total += spec.period * (seed + block);
  }
  total += rest * (seed + full);
  return total;
}

std::string generate(const GeneratorSpec& spec) {
  validate(spec);
  if (spec.kind == GeneratorKind::kChampernowne) {
    return champernowne(spec.length, spec.base);
  }
  return modular_generate(spec);
}

std::string elias_gamma(std::uint64_t x) {
  if (x == 0) throw InvalidArgument("Elias gamma needs x >= 1");
  const int width = std::bit_width(x);
  std::string out(static_cast<std::size_t>(width - 1), '0');
  for (int b = width - 1; b >= 0; --b) out.push_back(((x >> b) & 1U) ? '1' : '0');
  return out;
}

namespace {

void append_bytes(std::string& bits, std::string_view bytes) {
  bits += elias_gamma(bytes.size() + 1);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    for (int k = 7; k >= 0; --k) bits.push_back(((b >> k) & 1U) ? '1' : '0');
  }
}

class BitReader {
 public:
  explicit BitReader(std::string_view bits) : bits_(bits) {}

  unsigned bit() {
    if (pos_ >= bits_.size()) throw ParseError("truncated spec encoding");
    const char c = bits_[pos_++];
    if (c != '0' && c != '1') throw ParseError("spec encoding is not binary");
    return c == '1' ? 1U : 0U;
  }

  std::uint64_t gamma() {
    int zeros = 0;
    while (bit() == 0) {
      if (++zeros > 63) throw ParseError("Elias gamma code too long");
    }
    std::uint64_t v = 1;
    for (int i = 0; i < zeros; ++i) v = (v << 1) | bit();
    return v;
  }

  std::string bytes() {
    const std::uint64_t n = gamma() - 1;
    std::string out;
    for (std::uint64_t i = 0; i < n; ++i) {
      unsigned char b = 0;
      for (int k = 0; k < 8; ++k) b = static_cast<unsigned char>((b << 1) | bit());
      out.push_back(static_cast<char>(b));
    }
    return out;
  }

  bool done() const { return pos_ == bits_.size(); }

 private:
  std::string_view bits_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_spec_bits(const GeneratorSpec& spec) {
  validate(spec);
  std::string bits;
  if (spec.kind == GeneratorKind::kChampernowne) {
    bits = "00";
    bits += elias_gamma(spec.base);
    bits += elias_gamma(spec.length + 1);
    return bits;
  }
  bits = "01";
  bits += elias_gamma(spec.period);
  bits += elias_gamma(spec.steps);
  append_bytes(bits, spec.seed);
  std::string ext;
  for (const auto& e : spec.extensions) ext += e;
  append_bytes(bits, ext);
  return bits;
}

GeneratorSpec decode_spec_bits(std::string_view bits) {
  BitReader r(bits);
  const unsigned kind = r.bit() << 1 | r.bit();
  GeneratorSpec spec;
  if (kind == 0) {
    spec.kind = GeneratorKind::kChampernowne;
    spec.base = static_cast<unsigned>(r.gamma());
    spec.length = r.gamma() - 1;
  } else if (kind == 1) {
    spec.kind = GeneratorKind::kModular;
    spec.period = r.gamma();
    spec.steps = r.gamma();
    spec.seed = r.bytes();
    for (char32_t c : coding::decode_utf8(r.bytes())) {
      spec.extensions.push_back(coding::encode_utf8(c));
    }
  } else {
    throw ParseError("unknown generator kind");
  }
  if (!r.done()) throw ParseError("trailing bits after spec encoding");
  validate(spec);
  return spec;
}

std::size_t description_bits(const GeneratorSpec& spec) {
  return encode_spec_bits(spec).size();
}

GeneratorSpec parse_spec_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  }
  try {
    GeneratorSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "champernowne") {
      spec = champernowne_spec(j.at("length").get<std::size_t>(),
                               j.value("base", 10U));
    } else if (kind == "modular") {
      spec = modular_spec(j.at("seed").get<std::string>(),
                          j.at("period").get<std::size_t>(),
                          j.at("steps").get<std::size_t>(),
                          j.value("extensions", std::vector<std::string>{}));
    } else {
      throw ParseError("generator spec: unknown kind '" + kind + "'");
    }
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("generator spec: ") + e.what());
  }
}

std::string spec_to_json(const GeneratorSpec& spec) {
  nlohmann::ordered_json j;
  if (spec.kind == GeneratorKind::kChampernowne) {
    j["kind"] = "champernowne";
    j["base"] = spec.base;
    j["length"] = spec.length;
  } else {
    j["kind"] = "modular";
    j["seed"] = spec.seed;
    j["period"] = spec.period;
    j["steps"] = spec.steps;
    j["extensions"] = spec.extensions;
  }
  return j.dump();
}

std::optional<double> DivergenceReport::value(Measure m) const {
  for (const auto& [k, v] : measures) {
    if (k == m) return v.value;
  }
  return std::nullopt;
}

DivergenceReport divergence_report(std::string_view s,
                                   const GeneratorSpec& spec,
                                   const std::vector<Measure>& measures,
                                   const MeasureContext& ctx) {
  if (s != generate(spec)) {
    throw InvalidArgument("payload does not match spec");
  }
  DivergenceReport report;
  report.description_bits = description_bits(spec);
  if (s.empty()) return report;
  const auto counts = coding::count_symbols(s);
  report.length = counts.total;
  if (counts.entries.size() > 1) {
    report.normalized_entropy =
        coding::shannon_entropy(counts) /
        std::log2(static_cast<double>(counts.entries.size()));
  }
  for (Measure m : measures) {
    report.measures.emplace_back(m, measure_string(m, s, ctx));
  }
  return report;
}

}  // namespace cplx::deceiver
