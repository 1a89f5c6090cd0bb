#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "cplx/bdm.hpp"
#include "cplx/csv.hpp"
#include "cplx/error.hpp"

namespace {

using namespace cplx::bdm;
using cplx::BinaryMatrix;

const CtmTable& enumerated() {
  static const CtmTable table = ctm_enumerate(2, 2, 30);
  return table;
}

std::string complement(std::string s) {
  for (char& c : s) c = c == '0' ? '1' : '0';
  return s;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(Ctm, EnumeratedSymmetries) {
  const auto& t = enumerated();
  ASSERT_GT(t.size(), 0u);
  EXPECT_EQ(t.find("0"), t.find("1"));
  double min_bits = 1e300;
  std::size_t min_len = 0;
  for (const auto& [block, bits] : t.entries()) {
    EXPECT_GT(bits, 0.0);
    std::string rev(block.cells.rbegin(), block.cells.rend());
    EXPECT_EQ(t.find(complement(block.cells)), bits) << block.cells;
    EXPECT_EQ(t.find(rev), bits) << block.cells;
    if (bits < min_bits) {
      min_bits = bits;
      min_len = block.cells.size();
    }
  }
  EXPECT_EQ(min_len, 1u);
}

TEST(Ctm, OneStateTable) {
  auto t = ctm_enumerate(1, 2, 10);
  EXPECT_EQ(t.find("0"), t.find("1"));
  EXPECT_TRUE(t.find("0").has_value());
}

TEST(Ctm, RejectsUnsupported) {
  EXPECT_THROW(ctm_enumerate(3, 2, 30), cplx::InvalidArgument);
  EXPECT_THROW(ctm_enumerate(2, 3, 30), cplx::InvalidArgument);
  EXPECT_THROW(ctm_enumerate(2, 2, 0), cplx::InvalidArgument);
}

TEST(Ctm, SaveLoadRoundTrip) {
  const auto path = temp_path("cplx_ctm_roundtrip.csv");
  ctm_save(enumerated(), path);
  EXPECT_EQ(ctm_load(path), enumerated());
  ctm_save(toy_table_2d(), path);
  EXPECT_EQ(ctm_load(path), toy_table_2d());
  std::filesystem::remove(path);
}

TEST(Ctm, LoadErrors) {
  EXPECT_THROW(ctm_from_csv("block,ctm_bits\n"), cplx::ParseError);
  try {
    ctm_from_csv("block,ctm_bits\n00,2\n01,notanumber\n");
    FAIL();
  } catch (const cplx::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(ctm_from_csv("block,ctm_bits\n00,2\n00,3\n"), cplx::ParseError);
  EXPECT_THROW(ctm_from_csv("blk,bits\n00,2\n"), cplx::ParseError);
  EXPECT_THROW(ctm_from_csv("block,ctm_bits\n00,-1\n"), cplx::ParseError);
  EXPECT_THROW(ctm_load(temp_path("cplx_no_such_table.csv")), cplx::IoError);
}

TEST(Bdm1d, ToyExamples) {
  const auto t = toy_table_1d();
  EXPECT_DOUBLE_EQ(bdm_1d("0101", t).bits, 4.0);
  EXPECT_DOUBLE_EQ(bdm_1d("0110", t).bits, 5.5);
  EXPECT_DOUBLE_EQ(bdm_1d("01", t).bits, 3.0);
}

TEST(Bdm1d, RepetitionLaw) {
  const auto t = toy_table_1d();
  for (const auto& [block, bits] : t.entries()) {
    for (std::size_t m : {1, 2, 4, 8, 5}) {
      std::string s;
      for (std::size_t i = 0; i < m; ++i) s += block.cells;
      EXPECT_NEAR(bdm_1d(s, t).bits, bits + std::log2(double(m)), 1e-12);
    }
  }
}

TEST(Bdm1d, BlockOrderInvariantAndMonotone) {
  const auto t = toy_table_1d();
  std::mt19937_64 rng(41);
  const std::vector<std::string> blocks = {"00", "01", "10", "11"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> parts(1 + rng() % 10);
    for (auto& p : parts) p = blocks[rng() % 4];
    std::string a;
    for (auto& p : parts) a += p;
    std::shuffle(parts.begin(), parts.end(), rng);
    std::string b;
    for (auto& p : parts) b += p;
    const auto va = bdm_1d(a, t);
    EXPECT_DOUBLE_EQ(va.bits, bdm_1d(b, t).bits);
    double max_ctm = 0;
    for (auto& p : parts) max_ctm = std::max(max_ctm, *t.find(p));
    EXPECT_GE(va.bits, max_ctm);
    for (const auto& nb : blocks) {
      if (std::find(parts.begin(), parts.end(), nb) == parts.end()) {
        EXPECT_GT(bdm_1d(a + nb, t).bits, va.bits);
      }
    }
  }
}

TEST(Bdm1d, BoundaryAndOverlap) {
  const auto t = toy_table_1d();
  BdmParams ignore;
  EXPECT_DOUBLE_EQ(bdm_1d("01011", t, ignore).bits, 4.0);
  BdmParams pad;
  pad.boundary = Boundary::kPad;
  // "01","01","10" -> 3 + 1 + 2.5
  EXPECT_DOUBLE_EQ(bdm_1d("01011", t, pad).bits, 6.5);
  BdmParams overlap;
  overlap.overlap = 1;
  // 01 10 01 -> 3 + 1 + 2.5
  EXPECT_DOUBLE_EQ(bdm_1d("0101", t, overlap).bits, 6.5);
  overlap.overlap = 2;
  EXPECT_THROW(bdm_1d("0101", t, overlap), cplx::InvalidArgument);
}

TEST(Bdm1d, MissingBlocks) {
  const auto t = toy_table_1d();
  BdmParams p;
  p.block_size = 3;
  try {
    bdm_1d("010", t, p);
    FAIL();
  } catch (const cplx::InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("'010'"), std::string::npos);
  }
  p.missing_block = MissingBlock::kEntropySurrogate;
  const auto v = bdm_1d("010010", t, p);
  // 3 * H(010) + 1 + log2 2
  const double h = -(2.0 / 3) * std::log2(2.0 / 3) - (1.0 / 3) * std::log2(1.0 / 3);
  EXPECT_NEAR(v.bits, 3 * h + 2, 1e-12);
  EXPECT_EQ(v.surrogate_blocks, 1u);
  EXPECT_THROW(bdm_1d("0120", t), cplx::InvalidArgument);
  EXPECT_THROW(bdm_1d("0", t), cplx::InvalidArgument);
}

TEST(Bdm1d, EnumeratedTable) {
  const auto& t = enumerated();
  const auto v = bdm_1d("00000000", t);
  EXPECT_NEAR(v.bits, *t.find("00") + 2.0, 1e-12);
}

TEST(Bdm2d, ToyExamples) {
  const auto t = toy_table_2d();
  EXPECT_DOUBLE_EQ(bdm_2d(BinaryMatrix(4, 4, 0), t).bits, 6.0);
  EXPECT_DOUBLE_EQ(bdm_2d(BinaryMatrix(2, 2, 1), t).bits, 4.0);
  EXPECT_DOUBLE_EQ(bdm_2d(BinaryMatrix(5, 5, 0), t).bits, 6.0);
  BdmParams pad;
  pad.boundary = Boundary::kPad;
  // 4 zero blocks + 5 partial blocks that pad to zeros -> 9 copies.
  EXPECT_NEAR(bdm_2d(BinaryMatrix(5, 5, 0), t, pad).bits, 4.0 + std::log2(9.0),
              1e-12);
}

TEST(Bdm2d, MixedBlocks) {
  const auto t = toy_table_2d();
  BinaryMatrix m(2, 4, 0);
  m(0, 2) = 1;
  m(1, 3) = 1;
  // Left block 0000 (4), right block 1001 (6.5).
  EXPECT_DOUBLE_EQ(bdm_2d(m, t).bits, 10.5);
  EXPECT_THROW(bdm_2d(BinaryMatrix(1, 4, 0), t), cplx::InvalidArgument);
  EXPECT_THROW(bdm_2d(m, toy_table_1d()), cplx::InvalidArgument);
  EXPECT_THROW(bdm_1d("0000", t), cplx::InvalidArgument);
}

TEST(Bdm2d, CustomShapeFromLoadedTable) {
  auto t = ctm_from_csv("rows,cols,block,ctm_bits\n1,3,000,2\n1,3,101,7\n");
  BdmParams p;
  p.block_rows = 1;
  p.block_cols = 3;
  BinaryMatrix m(2, 3, 0);
  m(1, 0) = 1;
  m(1, 2) = 1;
  EXPECT_DOUBLE_EQ(bdm_2d(m, t, p).bits, 9.0);
}

}  // namespace
