#include <cstdio>
#include <random>
#include <string>

#include "commands.hpp"
#include "cplx/deceiver.hpp"
#include "cplx/ingest.hpp"

namespace cplx::cli {

namespace {

constexpr std::size_t kAlphabet = 16;
constexpr std::size_t kMinLength = 20;
constexpr std::size_t kMaxLength = 200;

// mt19937_64 output is fixed by the standard; the distributions are not, so
// ranges are reduced by rejection here to keep the corpus portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = engine_.max() - engine_.max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(below(hi - lo + 1));
  }

  char letter() { return static_cast<char>('A' + below(kAlphabet)); }

 private:
  std::mt19937_64 engine_;
};

std::string repetition(Rng& rng, std::size_t length) {
  // A short block of runs, repeated.
  std::string block;
  const std::size_t runs = rng.between(1, 3);
  char previous = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    char c;
    do {
      c = rng.letter();
    } while (c == previous);
    previous = c;
    block.append(rng.between(1, 8), c);
  }
  std::string out;
  while (out.size() < length) out += block;
  out.resize(length);
  return out;
}

std::string modular(Rng& rng, std::size_t length) {
  std::string seed;
  for (std::size_t i = rng.between(1, 3); i > 0; --i) seed.push_back(rng.letter());
  std::vector<std::string> extensions;
  for (std::size_t i = rng.between(1, 3); i > 0; --i) {
    extensions.emplace_back(1, rng.letter());
  }
  const std::size_t period = rng.between(1, 6);
  auto spec = deceiver::modular_spec(seed, period, 1, extensions);
  while (deceiver::modular_output_length(spec) < length) ++spec.steps;
  std::string out = deceiver::modular_generate(spec);
  out.resize(length);
  return out;
}

std::string champernowne(std::size_t length) {
  std::string out = deceiver::champernowne(length, kAlphabet);
  for (char& c : out) {
    c = static_cast<char>('A' + (c <= '9' ? c - '0' : c - 'a' + 10));
  }
  return out;
}

std::string uniform(Rng& rng, std::size_t length) {
  std::string out;
  for (std::size_t i = 0; i < length; ++i) out.push_back(rng.letter());
  return out;
}

}  // namespace

std::string synthetic_corpus_csv(std::uint64_t seed, std::size_t size) {
  static const char* kCategories[] = {"repetition", "modular", "champernowne",
                                      "random"};
  Rng rng(seed);
  std::vector<ingest::DatasetRecord> records;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t kind = i % 4;
    const std::size_t length = rng.between(kMinLength, kMaxLength);
    ingest::DatasetRecord rec;
    char id[32];
    std::snprintf(id, sizeof id, "syn%04zu", i + 1);
    rec.id = id;
    rec.category = kCategories[kind];
    switch (kind) {
      case 0: rec.payload = repetition(rng, length); break;
      case 1: rec.payload = modular(rng, length); break;
      case 2: rec.payload = champernowne(length); break;
      default: rec.payload = uniform(rng, length); break;
    }
    records.push_back(std::move(rec));
  }
  return ingest::dataset_to_csv(records);
}

}  // namespace cplx::cli
