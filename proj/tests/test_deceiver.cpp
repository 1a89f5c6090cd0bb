#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "cplx/assembly.hpp"
#include "cplx/coding.hpp"
#include "cplx/deceiver.hpp"
#include "cplx/error.hpp"

namespace {

using namespace cplx::deceiver;
using cplx::Measure;

TEST(Champernowne, Examples) {
  EXPECT_EQ(champernowne(20, 10), "12345678910111213141");
  EXPECT_EQ(champernowne(0, 10), "");
  EXPECT_EQ(champernowne(10, 2), "1101110010");
  EXPECT_EQ(champernowne(12, 16), "123456789abc");
  EXPECT_THROW(champernowne(5, 1), cplx::InvalidArgument);
  EXPECT_THROW(champernowne(5, 37), cplx::InvalidArgument);
}

TEST(Champernowne, PrefixStable) {
  const auto long_word = champernowne(5000, 10);
  for (std::size_t n : {0, 1, 9, 10, 189, 190, 2889, 4999}) {
    EXPECT_EQ(champernowne(n, 10), long_word.substr(0, n));
  }
  const auto b3 = champernowne(300, 3);
  EXPECT_EQ(champernowne(77, 3), b3.substr(0, 77));
}

TEST(Champernowne, EntropyTrendAndDescriptionGrowth) {
  double prev = 0;
  std::size_t prev_bits = 0;
  for (std::size_t n : {100, 1000, 10000}) {
    const double h = cplx::coding::shannon_entropy(champernowne(n, 10));
    EXPECT_GE(h, prev - 0.05);
    EXPECT_LE(h, std::log2(10.0) + 1e-12);
    prev = h;
    const auto bits = description_bits(champernowne_spec(n));
    EXPECT_GT(bits, prev_bits);
    // gamma(length + 1) costs 2 floor(log2(n + 1)) + 1 bits.
    EXPECT_EQ(bits, 2 + elias_gamma(10).size() +
                        2 * (std::bit_width(n + 1) - 1) + 1);
    prev_bits = bits;
  }
}

TEST(Modular, Examples) {
  EXPECT_EQ(modular_generate(modular_spec("AB", 10, 4)), "ABABABAB");
  EXPECT_EQ(modular_generate(modular_spec("A", 2, 3, {"B"})), "AAAB");
  EXPECT_THROW(modular_generate(modular_spec("A", 2, 0, {"B"})),
               cplx::InvalidArgument);
  EXPECT_THROW(modular_generate(modular_spec("A", 2, 5)),
               cplx::InvalidArgument);
  EXPECT_THROW(modular_generate(modular_spec("", 2, 5, {"B"})),
               cplx::InvalidArgument);
  EXPECT_THROW(modular_generate(modular_spec("A", 2, 5, {"BC"})),
               cplx::InvalidArgument);
}

TEST(Modular, CyclesExtensionsAndLengthFormula) {
  EXPECT_EQ(modular_generate(modular_spec("X", 1, 4, {"Y", "Z"})),
            "X" "XY" "XYZ" "XYZY");
  std::mt19937_64 rng(73);
  for (int i = 0; i < 100; ++i) {
    auto spec = modular_spec(std::string(1 + rng() % 3, 'a'), 1 + rng() % 5,
                             1 + rng() % 40, {"b", "c"});
    EXPECT_EQ(modular_generate(spec).size(), modular_output_length(spec));
  }
}

TEST(Encoding, EliasGamma) {
  EXPECT_EQ(elias_gamma(1), "1");
  EXPECT_EQ(elias_gamma(2), "010");
  EXPECT_EQ(elias_gamma(5), "00101");
  EXPECT_THROW(elias_gamma(0), cplx::InvalidArgument);
}

TEST(Encoding, RoundTrip) {
  const std::vector<GeneratorSpec> specs = {
      champernowne_spec(1000), champernowne_spec(0, 2),
      modular_spec("A", 1000, 64), modular_spec("AB", 2, 9, {"C", "\xc3\xa9"})};
  for (const auto& s : specs) {
    const auto bits = encode_spec_bits(s);
    EXPECT_EQ(bits.size(), description_bits(s));
    EXPECT_EQ(decode_spec_bits(bits), s);
    EXPECT_EQ(parse_spec_json(spec_to_json(s)), s);
  }
  // 00 + gamma(10) + gamma(1001)
  EXPECT_EQ(description_bits(champernowne_spec(1000)), 2u + 7u + 19u);
  EXPECT_THROW(decode_spec_bits("00"), cplx::ParseError);
  EXPECT_THROW(decode_spec_bits("11"), cplx::ParseError);
  EXPECT_THROW(decode_spec_bits(encode_spec_bits(specs[0]) + "1"),
               cplx::ParseError);
}

TEST(Json, ParseErrors) {
  EXPECT_EQ(parse_spec_json(R"({"kind":"champernowne","base":10,"length":20})"),
            champernowne_spec(20));
  EXPECT_THROW(parse_spec_json("{"), cplx::ParseError);
  EXPECT_THROW(parse_spec_json(R"({"kind":"turing"})"), cplx::ParseError);
  EXPECT_THROW(parse_spec_json(R"({"kind":"modular","seed":"A","period":"x"})"),
               cplx::ParseError);
}

TEST(Divergence, ChampernowneLooksRandom) {
  const auto spec = champernowne_spec(1000, 10);
  auto r = divergence_report(generate(spec), spec,
                             {Measure::kEntropy, Measure::kMaSplit});
  EXPECT_GT(r.normalized_entropy, 0.95);
  EXPECT_LT(r.description_bits, 100u);
  EXPECT_EQ(r.length, 1000u);
  ASSERT_TRUE(r.value(Measure::kEntropy).has_value());
  EXPECT_GT(*r.value(Measure::kEntropy), 3.0);
  EXPECT_FALSE(r.value(Measure::kRle).has_value());
}

TEST(Divergence, PureRepetitionCollapses) {
  const auto spec = modular_spec("A", 1000, 64);
  const auto s = generate(spec);
  auto r = divergence_report(s, spec, {Measure::kRle, Measure::kMaSplit});
  EXPECT_LT(*r.value(Measure::kRle), s.size() / 10.0);
  EXPECT_LE(*r.value(Measure::kMaSplit), 6.0 + 1);
}

TEST(Divergence, PureRepetitionCost) {
  // Longest-repeat factoring of seed^n costs the binary method for n on top
  // of building the seed, which meets ceil(log2 n) + index(seed) + 1 at
  // powers of two.
  for (const std::string seed : {"A", "AB", "ABC", "ABRACADABRA"}) {
    const std::size_t seed_index =
        cplx::assembly::assembly_index_exact(seed).index;
    for (std::size_t steps = 1; steps <= 70; ++steps) {
      const auto out = generate(modular_spec(seed, steps + 1, steps));
      const std::size_t binary_cost =
          std::bit_width(steps) - 1 + std::popcount(steps) - 1;
      const auto v = cplx::assembly::assembly_index_split(out).index;
      EXPECT_EQ(v, binary_cost + seed_index) << seed << " x " << steps;
      if (std::has_single_bit(steps)) {
        EXPECT_LE(v, std::bit_width(steps - 1) + seed_index + 1);
      }
    }
  }
}

TEST(Divergence, MismatchThrows) {
  try {
    divergence_report("AB", champernowne_spec(2), {Measure::kEntropy});
    FAIL();
  } catch (const cplx::InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("payload does not match spec"),
              std::string::npos);
  }
}

}  // namespace
