#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "cplx/assembly.hpp"
#include "cplx/error.hpp"
#include "oracles.hpp"

namespace {

using namespace cplx::assembly;

std::size_t exact(const std::string& s) { return assembly_index_exact(s).index; }
std::size_t split(const std::string& s) { return assembly_index_split(s).index; }

std::string binary_string(unsigned bits, unsigned n) {
  std::string s;
  for (unsigned i = 0; i < n; ++i) s.push_back((bits >> i) & 1 ? 'B' : 'A');
  return s;
}

std::size_t count_substr(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos;
       pos = s.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

AssemblyPathway figure_pathway() {
  return pathway_from_results("ABRACADABRA",
                              {"AB", "ABR", "ABRA", "ABRAC", "ABRACA",
                               "ABRACAD", "ABRACADABRA"});
}

TEST(AssemblyExact, Examples) {
  EXPECT_EQ(exact("A"), 0u);
  EXPECT_EQ(exact("AA"), 1u);
  EXPECT_EQ(exact("ABRACADABRA"), 7u);
  EXPECT_EQ(exact("AAAAAAAA"), 3u);
  EXPECT_EQ(exact("ABCB"), 3u);
}

TEST(AssemblyExact, AbracadabraWitnessIsTheFigurePathway) {
  auto r = assembly_index_exact("ABRACADABRA");
  EXPECT_TRUE(verify_pathway(r.pathway, "ABRACADABRA"));
  EXPECT_EQ(r.pathway, figure_pathway());
}

TEST(AssemblyExact, RepeatedSymbolMatchesAdditionChains) {
  for (unsigned n = 1; n <= 16; ++n) {
    EXPECT_EQ(exact(std::string(n, 'A')), oracle::addition_chain_length(n))
        << "n=" << n;
  }
  for (unsigned k = 0; k <= 4; ++k) {
    EXPECT_EQ(exact(std::string(std::size_t{1} << k, 'A')), k);
  }
}

TEST(AssemblyExact, MatchesForwardSearchOracle) {
  for (unsigned n = 1; n <= 8; ++n) {
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
      const auto s = binary_string(bits, n);
      EXPECT_EQ(exact(s), oracle::assembly_index(s)) << s;
    }
  }
  std::mt19937_64 rng(23);
  for (int i = 0; i < 150; ++i) {
    std::string s(2 + rng() % 7, 'A');
    for (char& c : s) c = static_cast<char>('A' + rng() % 3);
    EXPECT_EQ(exact(s), oracle::assembly_index(s)) << s;
  }
}

TEST(AssemblyExact, Bounds) {
  for (unsigned n = 1; n <= 12; ++n) {
    const std::size_t lo = std::bit_width(n - 1);  // ceil(log2 n)
    for (unsigned bits = 0; bits < (1u << n); bits += 1 + (n > 9) * 7) {
      const auto s = binary_string(bits, n);
      const auto v = exact(s);
      EXPECT_GE(v, lo) << s;
      EXPECT_LE(v, n - 1) << s;
      EXPECT_EQ(v == 0, n == 1) << s;
    }
  }
}

TEST(AssemblyExact, AlgebraicProperties) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    std::string s(1 + rng() % 6, 'A');
    std::string t(1 + rng() % 6, 'A');
    for (char& c : s) c = static_cast<char>('A' + rng() % 3);
    for (char& c : t) c = static_cast<char>('A' + rng() % 3);
    EXPECT_LE(exact(s + s), exact(s) + 1) << s;
    EXPECT_LE(exact(s + t), exact(s) + exact(t) + 1) << s << "|" << t;
    std::string renamed = s;
    for (char& c : renamed) c = c == 'A' ? 'C' : (c == 'C' ? 'A' : 'x');
    EXPECT_EQ(exact(renamed), exact(s)) << s;
  }
}

TEST(AssemblyExact, WitnessesVerify) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    std::string s(1 + rng() % 14, 'A');
    for (char& c : s) c = static_cast<char>('A' + rng() % 3);
    auto r = assembly_index_exact(s);
    EXPECT_TRUE(verify_pathway(r.pathway, s)) << s;
    EXPECT_EQ(r.index, r.pathway.index()) << s;
  }
}

TEST(AssemblyExact, UnicodeSymbols) {
  EXPECT_EQ(exact("\xc3\xa9\xc3\xa9"), 1u);
  EXPECT_EQ(exact("\xc3\xa9x\xc3\xa9x"), 2u);
}

TEST(AssemblyExact, GuardAndEmpty) {
  EXPECT_THROW(assembly_index_exact(""), cplx::InvalidArgument);
  EXPECT_THROW(assembly_index_exact(std::string(26, 'A')),
               cplx::InvalidArgument);
  EXPECT_EQ(assembly_index_exact(std::string(26, 'A'), 30).index, 6u);
  try {
    assembly_index_exact(std::string(10, 'A'), 5);
    FAIL();
  } catch (const cplx::InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("split"), std::string::npos);
  }
}

TEST(AssemblySplit, Examples) {
  EXPECT_EQ(split("A"), 0u);
  EXPECT_EQ(split("AA"), 1u);
  EXPECT_EQ(split(std::string(16, 'A')), 4u);
  const auto v = split("ABRACADABRA");
  EXPECT_GE(v, 7u);
  EXPECT_LE(v, 10u);
  EXPECT_EQ(v, 7u);
}

TEST(AssemblySplit, DominatesExact) {
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
      const auto s = binary_string(bits, n);
      auto r = assembly_index_split(s);
      EXPECT_GE(r.index, exact(s)) << s;
      EXPECT_TRUE(verify_pathway(r.pathway, s)) << s;
      EXPECT_EQ(r.index, r.pathway.index()) << s;
    }
  }
}

TEST(AssemblySplit, LongInputsVerify) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    std::string s(1 + rng() % 400, 'A');
    for (char& c : s) c = static_cast<char>('A' + rng() % 4);
    auto r = assembly_index_split(s);
    EXPECT_TRUE(verify_pathway(r.pathway, s));
    EXPECT_LE(r.index, s.size() - 1);
  }
  EXPECT_THROW(assembly_index_split(""), cplx::InvalidArgument);
}

TEST(VerifyPathway, Examples) {
  AssemblyPathway aaaa;
  aaaa.basis = {"A"};
  aaaa.target = "AAAA";
  aaaa.steps.push_back({BasisRef{"A"}, BasisRef{"A"}, "AA"});
  aaaa.steps.push_back({StepRef{0}, StepRef{0}, "AAAA"});
  EXPECT_TRUE(verify_pathway(aaaa, "AAAA"));

  AssemblyPathway ab;
  ab.basis = {"A", "B"};
  ab.target = "AB";
  ab.steps.push_back({BasisRef{"A"}, BasisRef{"B"}, "AB"});
  EXPECT_FALSE(verify_pathway(ab, "BA"));

  EXPECT_TRUE(verify_pathway(figure_pathway(), "ABRACADABRA"));
}

TEST(VerifyPathway, RejectsBrokenPathways) {
  AssemblyPathway p;
  p.basis = {"A"};
  p.target = "AA";
  p.steps.push_back({StepRef{0}, BasisRef{"A"}, "AA"});  // self reference
  EXPECT_FALSE(verify_pathway(p, "AA"));
  p.steps = {{BasisRef{"A"}, BasisRef{"B"}, "AB"}};  // B not in basis
  p.target = "AB";
  EXPECT_FALSE(verify_pathway(p, "AB"));
  p.basis = {"A", "B"};
  p.steps = {{BasisRef{"A"}, BasisRef{"B"}, "BA"}};  // wrong result
  p.target = "BA";
  EXPECT_FALSE(verify_pathway(p, "BA"));
  AssemblyPathway single;
  single.basis = {"A"};
  single.target = "A";
  EXPECT_TRUE(verify_pathway(single, "A"));
  single.basis = {"AB"};
  EXPECT_FALSE(verify_pathway(single, "A"));
}

TEST(AssemblyDot, Counts) {
  const auto aa = assembly_tree_dot(assembly_index_exact("AA").pathway);
  EXPECT_EQ(count_substr(aa, "shape=ellipse"), 1u);
  EXPECT_EQ(count_substr(aa, "shape=box"), 1u);
  EXPECT_EQ(count_substr(aa, "->"), 2u);

  const auto abra = assembly_tree_dot(figure_pathway());
  EXPECT_EQ(count_substr(abra, "shape=ellipse"), 7u);

  AssemblyPathway single;
  single.basis = {"A"};
  single.target = "A";
  const auto a = assembly_tree_dot(single);
  EXPECT_EQ(count_substr(a, "shape=box"), 1u);
  EXPECT_EQ(count_substr(a, "shape=ellipse"), 0u);

  AssemblyPathway bad;
  bad.target = "AB";
  EXPECT_THROW(assembly_tree_dot(bad), cplx::InvalidArgument);
}

}  // namespace
