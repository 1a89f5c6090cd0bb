#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cplx/assembly.hpp"
#include "cplx/bdm.hpp"
#include "cplx/measures.hpp"
#include "cplx/stats.hpp"

namespace cplx::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;     // unreadable input, parse failure
inline constexpr int kExitUsage = 2;  // bad flags or configuration

struct RunConfig {
  std::string input;
  std::string out;  // empty: write to stdout
  std::vector<Measure> measures;
  std::vector<std::string> ctm_tables;  // at most one per dimension
  bool toy_ctm = false;
  std::optional<double> threshold;  // matrix binarisation, default 3
  bdm::BdmParams bdm_params;
  std::size_t exact_guard = assembly::kDefaultExactGuard;
  std::uint64_t seed = 42;
  std::size_t size = 200;
  double ci_level = stats::kDefaultCiLevel;
  unsigned threads = 0;  // 0: hardware concurrency

  // correlate / classify
  std::string x_measure;
  std::string y_measure;
  std::string method = "spearman";
  std::string group_col = "category";
  std::string test = "welch_t";

  // tree
  std::string text;
  bool split = false;

  // ctm-gen
  int states = 2;
  int symbols = 2;
  int step_bound = 30;

  // champernowne
  std::size_t length = 0;
  unsigned base = 10;

  // deceive
  std::string spec_json;
};

// Each command writes its primary output to cfg.out (or `out` when that is
// empty) and diagnostics to `err`, and returns an exit code.
int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_correlate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ctm_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_binarize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sdf_matrix(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_champernowne(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_synthetic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_deceive(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// The seeded benchmark corpus as dataset CSV text: `size` strings over
// the letters A-P with lengths in [20, 200], cycling through the categories
// repetition, modular, champernowne and random.
std::string synthetic_corpus_csv(std::uint64_t seed, std::size_t size);

}  // namespace cplx::cli
