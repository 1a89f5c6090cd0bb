#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "cplx/csv.hpp"
#include "cplx/ingest.hpp"
#include "cplx/measures.hpp"

namespace {

using namespace cplx::cli;
namespace fs = std::filesystem;

const std::string kData = CPLX_TEST_DATA_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cplx_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string write(const std::string& name, const std::string& text) const {
    cplx::csv::write_file(path(name), text);
    return path(name);
  }

  int run(int (*cmd)(const RunConfig&, std::ostream&, std::ostream&),
          const RunConfig& cfg) {
    out_.str("");
    err_.str("");
    return cmd(cfg, out_, err_);
  }

  std::size_t lines() const {
    const auto s = out_.str();
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const char* kHeader = "id,category,payload_kind,payload,reference_value\n";

TEST_F(CliTest, MeasureShapeAndOrder) {
  RunConfig cfg;
  cfg.input = write("d.csv", std::string(kHeader) +
                                 "a,x,string,ABAB,\nb,x,string,AAAA,\n"
                                 "c,y,string,ABCD,\n");
  cfg.measures = {cplx::Measure::kHuffman, cplx::Measure::kRle};
  ASSERT_EQ(run(cmd_measure, cfg), kExitOk) << err_.str();
  EXPECT_EQ(lines(), 7u);
  auto rows = cplx::ingest::parse_results(out_.str());
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].id, "a");
  EXPECT_EQ(rows[0].measure, "huffman");
  EXPECT_EQ(rows[1].measure, "rle");
  EXPECT_EQ(rows[5].id, "c");
  EXPECT_EQ(*rows[3].value, 2.0);  // rle("AAAA") = "A4"
}

TEST_F(CliTest, MeasureAbracadabraExact) {
  RunConfig cfg;
  cfg.input = kData + "/sample.csv";
  cfg.measures = {cplx::Measure::kMaExact};
  ASSERT_EQ(run(cmd_measure, cfg), kExitOk) << err_.str();
  auto rows = cplx::ingest::parse_results(out_.str());
  EXPECT_EQ(rows[0].id, "abra11");
  EXPECT_EQ(*rows[0].value, 7.0);
  EXPECT_EQ(*rows[1].value, 3.0);
}

TEST_F(CliTest, MeasureMatrixRecords) {
  RunConfig cfg;
  cfg.input = kData + "/sample.csv";
  cfg.measures = {cplx::Measure::kBdm2d, cplx::Measure::kEntropy};
  cfg.toy_ctm = true;
  ASSERT_EQ(run(cmd_measure, cfg), kExitOk) << err_.str();
  auto rows = cplx::ingest::parse_results(out_.str());
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_FALSE(rows[0].value.has_value());  // bdm2d on a string
  // grid.csv at threshold 3: blocks 0110 (twice), 1001, 0000.
  EXPECT_DOUBLE_EQ(*rows[4].value, 6.5 + 1 + 6.5 + 4);
  EXPECT_NE(rows[4].metadata.find("threshold=3"), std::string::npos);
}

TEST_F(CliTest, MeasureErrors) {
  RunConfig cfg;
  cfg.input = kData + "/sample.csv";
  cfg.measures = {cplx::Measure::kBdm1d};
  EXPECT_EQ(run(cmd_measure, cfg), kExitUsage);
  EXPECT_NE(err_.str().find("bdm1d"), std::string::npos);

  cfg.input = path("missing.csv");
  cfg.measures = {cplx::Measure::kRle};
  EXPECT_EQ(run(cmd_measure, cfg), kExitIo);

  cfg.input = write("long.csv", std::string(kHeader) + "l,x,string," +
                                    std::string(30, 'A') + ",\n");
  cfg.measures = {cplx::Measure::kMaExact};
  EXPECT_EQ(run(cmd_measure, cfg), kExitUsage);
  EXPECT_NE(err_.str().find("'l'"), std::string::npos);

  cfg.input = write("bad.csv", "id,category\n");
  EXPECT_EQ(run(cmd_measure, cfg), kExitIo);
}

TEST_F(CliTest, MeasureStableUnderReordering) {
  RunConfig cfg;
  cfg.measures = cplx::parse_measure_list("entropy,huffman,lzw,ma_split");
  cfg.input = write("a.csv", std::string(kHeader) +
                                 "p,x,string,ABRACADABRA,\nq,y,string,XYZZY,\n");
  ASSERT_EQ(run(cmd_measure, cfg), kExitOk);
  auto forward = cplx::ingest::parse_results(out_.str());
  cfg.input = write("b.csv", std::string(kHeader) +
                                 "q,y,string,XYZZY,\np,x,string,ABRACADABRA,\n");
  ASSERT_EQ(run(cmd_measure, cfg), kExitOk);
  auto backward = cplx::ingest::parse_results(out_.str());
  ASSERT_EQ(forward.size(), 8u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(forward[i], backward[i + 4]);
    EXPECT_EQ(forward[i + 4], backward[i]);
  }
}

TEST_F(CliTest, Correlate) {
  RunConfig cfg;
  cfg.input = write(
      "r.csv",
      "id,category,measure,value,metadata\n"
      "a,x,m1,1,\na,x,m2,2,\nb,x,m1,2,\nb,x,m2,1,\n"
      "c,y,m1,3,\nc,y,m2,3,\nd,y,m1,4,\n");
  cfg.x_measure = "m1";
  cfg.y_measure = "m1";
  ASSERT_EQ(run(cmd_correlate, cfg), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("m1,m1,spearman,1,"), std::string::npos);

  cfg.y_measure = "m2";
  cfg.method = "pearson";
  ASSERT_EQ(run(cmd_correlate, cfg), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("m1,m2,pearson,0.5,"), std::string::npos);

  cfg.y_measure = "nope";
  EXPECT_EQ(run(cmd_correlate, cfg), kExitUsage);
  EXPECT_NE(err_.str().find("nope"), std::string::npos);

  cfg.input = write("few.csv",
                    "id,category,measure,value,metadata\n"
                    "a,x,m1,1,\na,x,m2,2,\nb,x,m1,2,\nb,x,m2,1,\n");
  cfg.y_measure = "m2";
  EXPECT_EQ(run(cmd_correlate, cfg), kExitUsage);
}

TEST_F(CliTest, Classify) {
  RunConfig cfg;
  cfg.input = write("r.csv",
                    "id,category,measure,value,metadata\n"
                    "a,g1,m,1,\nb,g1,m,2,\nc,g1,m,3,\n"
                    "d,g2,m,4,\ne,g2,m,5,\nf,g2,m,6,\n");
  cfg.test = "ks";
  ASSERT_EQ(run(cmd_classify, cfg), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("m,g1,g2,ks,3,3,1,"), std::string::npos);

  cfg.input = write("same.csv",
                    "id,category,measure,value,metadata\n"
                    "a,g1,m,1,\nb,g1,m,2,\nc,g1,m,3,\n"
                    "a2,g2,m,1,\nb2,g2,m,2,\nc2,g2,m,3,\n");
  cfg.test = "welch_t";
  ASSERT_EQ(run(cmd_classify, cfg), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("m,g1,g2,welch_t,3,3,0,4,0.5,1,"),
            std::string::npos)
      << out_.str();

  cfg.input = write("one.csv",
                    "id,category,measure,value,metadata\na,g1,m,1,\nb,g1,m,2,\n");
  EXPECT_EQ(run(cmd_classify, cfg), kExitUsage);
  EXPECT_NE(err_.str().find("need >= 2 groups"), std::string::npos);

  cfg.input = write("small.csv",
                    "id,category,measure,value,metadata\n"
                    "a,g1,m,1,\nb,g1,m,2,\nc,g2,m,1,\n");
  ASSERT_EQ(run(cmd_classify, cfg), kExitOk);
  EXPECT_NE(out_.str().find("skipped: group 'g2'"), std::string::npos);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
}

TEST_F(CliTest, Tree) {
  RunConfig cfg;
  cfg.text = "ABRACADABRA";
  cfg.method = "assembly";
  ASSERT_EQ(run(cmd_tree, cfg), kExitOk);
  const auto dot = out_.str();
  std::size_t steps = 0;
  for (auto p = dot.find("shape=ellipse"); p != std::string::npos;
       p = dot.find("shape=ellipse", p + 1)) {
    ++steps;
  }
  EXPECT_EQ(steps, 7u);

  cfg.method = "huffman";
  cfg.out = path("h.dot");
  ASSERT_EQ(run(cmd_tree, cfg), kExitOk);
  EXPECT_NE(cplx::csv::read_file(cfg.out).find("digraph huffman"),
            std::string::npos);

  cfg.out.clear();
  cfg.method = "assembly";
  cfg.text = "";
  EXPECT_EQ(run(cmd_tree, cfg), kExitIo);
  cfg.text = std::string(40, 'A') + "B";
  EXPECT_EQ(run(cmd_tree, cfg), kExitUsage);
  EXPECT_NE(err_.str().find("--split"), std::string::npos);
  cfg.split = true;
  EXPECT_EQ(run(cmd_tree, cfg), kExitOk);
}

TEST_F(CliTest, SmallCommands) {
  RunConfig cfg;
  cfg.length = 20;
  cfg.base = 10;
  ASSERT_EQ(run(cmd_champernowne, cfg), kExitOk);
  EXPECT_EQ(out_.str(), "12345678910111213141\n");

  ASSERT_EQ(run(cmd_ctm_gen, cfg), kExitOk);
  auto table = cplx::bdm::ctm_from_csv(out_.str());
  EXPECT_EQ(table.find("0"), table.find("1"));

  cfg.input = kData + "/grid.csv";
  cfg.threshold = 3.0;
  ASSERT_EQ(run(cmd_binarize, cfg), kExitOk);
  EXPECT_EQ(out_.str(), "0,1,1,0\n1,0,0,1\n0,1,0,0\n1,0,0,0\n");

  cfg.input = kData + "/water.sdf";
  cfg.threshold = 1.0;
  ASSERT_EQ(run(cmd_binarize, cfg), kExitOk);
  EXPECT_EQ(out_.str(), "0,0,0\n0,0,1\n0,1,0\n");
  ASSERT_EQ(run(cmd_sdf_matrix, cfg), kExitOk);
  EXPECT_EQ(out_.str().substr(0, 9), "0,0.9572,");

  cfg.input = path("missing.sdf");
  EXPECT_EQ(run(cmd_sdf_matrix, cfg), kExitIo);
}

TEST_F(CliTest, SyntheticIsDeterministic) {
  RunConfig cfg;
  cfg.seed = 42;
  cfg.size = 200;
  cfg.out = path("a.csv");
  ASSERT_EQ(run(cmd_synthetic, cfg), kExitOk);
  cfg.out = path("b.csv");
  ASSERT_EQ(run(cmd_synthetic, cfg), kExitOk);
  const auto a = cplx::csv::read_file(path("a.csv"));
  EXPECT_EQ(a, cplx::csv::read_file(path("b.csv")));
  auto recs = cplx::ingest::parse_dataset(a);
  ASSERT_EQ(recs.size(), 200u);
  std::map<std::string, int> per_category;
  for (const auto& r : recs) {
    ++per_category[r.category];
    EXPECT_GE(r.payload.size(), 20u);
    EXPECT_LE(r.payload.size(), 200u);
    EXPECT_EQ(r.payload.find_first_not_of("ABCDEFGHIJKLMNOP"),
              std::string::npos);
  }
  EXPECT_EQ(per_category,
            (std::map<std::string, int>{{"champernowne", 50},
                                        {"modular", 50},
                                        {"random", 50},
                                        {"repetition", 50}}));
  EXPECT_NE(synthetic_corpus_csv(43, 200), a);
}

TEST_F(CliTest, Deceive) {
  RunConfig cfg;
  cfg.spec_json = R"({"kind":"champernowne","base":10,"length":1000})";
  ASSERT_EQ(run(cmd_deceive, cfg), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("description_bits,28,"), std::string::npos);
  cfg.text = "AB";
  EXPECT_EQ(run(cmd_deceive, cfg), kExitUsage);
  cfg.text.clear();
  cfg.spec_json = "{";
  EXPECT_EQ(run(cmd_deceive, cfg), kExitIo);
}

int system_exit(const std::string& args) {
  const int status =
      std::system((std::string(CPLX_BINARY) + " " + args + " >/dev/null 2>&1")
                      .c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  EXPECT_EQ(system_exit("champernowne -n 5"), 0);
  EXPECT_EQ(system_exit("--help"), 0);
  EXPECT_EQ(system_exit(""), 2);
  EXPECT_EQ(system_exit("frobnicate"), 2);
  EXPECT_EQ(system_exit("measure --input " + kData +
                        "/sample.csv --measures nonsense"),
            2);
  EXPECT_EQ(system_exit("measure --input " + kData +
                        "/sample.csv --measures rle --block-shape 2by2"),
            2);
  EXPECT_EQ(system_exit("measure --input " + kData +
                        "/sample.csv --measures bdm2d --toy-ctm"),
            0);
  EXPECT_EQ(system_exit("deceive --spec " + path("none.json")), 1);
  EXPECT_EQ(system_exit("tree --text ''"), 1);
}

}  // namespace
