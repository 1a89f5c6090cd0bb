#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "cplx/csv.hpp"
#include "cplx/error.hpp"

namespace {

using cplx::cli::RunConfig;

struct RawFlags {
  std::string measures;
  std::string block_shape;
  std::size_t block = 0;
  std::size_t overlap = 0;
  std::string boundary = "ignore";
  std::string missing_block = "error";
  double threshold = 3.0;
  std::string spec_path;
};

void add_io(CLI::App* sub, RunConfig& cfg, bool input_required = true) {
  auto* in = sub->add_option("--input,-i", cfg.input, "Input file");
  if (input_required) in->required();
  sub->add_option("--out,-o", cfg.out, "Output file (default: stdout)");
}

void add_tables(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--ctm-table", cfg.ctm_tables,
                  "CTM table CSV (1D or 2D; repeatable)");
  sub->add_flag("--toy-ctm", cfg.toy_ctm, "Use the bundled toy CTM tables");
}

void add_bdm(CLI::App* sub, RunConfig& cfg, RawFlags& raw) {
  sub->add_option("--block", raw.block, "1D block size");
  sub->add_option("--block-shape", raw.block_shape, "2D block shape RxC");
  sub->add_option("--overlap", raw.overlap, "Block overlap");
  sub->add_option("--boundary", raw.boundary, "ignore|pad")
      ->check(CLI::IsMember({"ignore", "pad"}));
  sub->add_option("--missing-block", raw.missing_block, "error|entropy")
      ->check(CLI::IsMember({"error", "entropy"}));
  sub->add_option("--exact-guard", cfg.exact_guard,
                  "Longest string accepted by exact assembly search");
}

void add_threshold(CLI::App* sub, RawFlags& raw) {
  sub->add_option("--threshold", raw.threshold,
                  "Binarisation threshold (entries > R become 1)");
}

// Applies the string-valued flags to cfg. Throws InvalidArgument.
void finish(CLI::App& app, RunConfig& cfg, const RawFlags& raw) {
  CLI::App* sub = app.get_subcommands().front();
  bool threshold_given = false;
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--threshold") threshold_given = opt->count() > 0;
  }
  if (threshold_given) cfg.threshold = raw.threshold;
  if (!raw.measures.empty()) {
    cfg.measures = cplx::parse_measure_list(raw.measures);
  }
  auto& p = cfg.bdm_params;
  if (raw.block) p.block_size = raw.block;
  if (!raw.block_shape.empty()) {
    const auto x = raw.block_shape.find('x');
    std::size_t r = 0;
    std::size_t c = 0;
    try {
      if (x == std::string::npos) throw std::invalid_argument("no x");
      std::size_t used = 0;
      r = std::stoul(raw.block_shape.substr(0, x), &used);
      if (used != x) throw std::invalid_argument("rows");
      const std::string cols = raw.block_shape.substr(x + 1);
      c = std::stoul(cols, &used);
      if (used != cols.size()) throw std::invalid_argument("cols");
    } catch (const std::logic_error&) {
      throw cplx::InvalidArgument("--block-shape must look like RxC, got '" +
                                  raw.block_shape + "'");
    }
    p.block_rows = r;
    p.block_cols = c;
  }
  p.overlap = raw.overlap;
  p.boundary = raw.boundary == "pad" ? cplx::bdm::Boundary::kPad
                                     : cplx::bdm::Boundary::kIgnore;
  p.missing_block = raw.missing_block == "entropy"
                        ? cplx::bdm::MissingBlock::kEntropySurrogate
                        : cplx::bdm::MissingBlock::kError;
  if (sub->get_name() == "deceive") {
    cfg.spec_json = cplx::csv::read_file(raw.spec_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  RawFlags raw;
  CLI::App app{"Complexity measures: coding, assembly index, BDM, statistics"};
  app.require_subcommand(1);

  auto* measure = app.add_subcommand("measure", "Measure every dataset record");
  add_io(measure, cfg);
  measure->add_option("--measures", raw.measures,
                      "Comma-separated: entropy,huffman,rle,lzw,ma_exact,"
                      "ma_split,bdm1d,bdm2d")
      ->required();
  add_tables(measure, cfg);
  add_bdm(measure, cfg, raw);
  add_threshold(measure, raw);
  measure->add_option("--threads", cfg.threads, "Worker threads (0: all)");

  auto* correlate =
      app.add_subcommand("correlate", "Correlate two measures by id");
  add_io(correlate, cfg);
  correlate->add_option("--x", cfg.x_measure, "First measure")->required();
  correlate->add_option("--y", cfg.y_measure, "Second measure")->required();
  correlate->add_option("--method", cfg.method, "pearson|spearman")
      ->check(CLI::IsMember({"pearson", "spearman"}));
  correlate->add_option("--ci", cfg.ci_level, "Confidence level");

  auto* classify =
      app.add_subcommand("classify", "Compare measure values across groups");
  add_io(classify, cfg);
  classify->add_option("--group-col", cfg.group_col,
                       "category|id|metadata");
  classify->add_option("--test", cfg.test, "welch_t|ks")
      ->check(CLI::IsMember({"welch_t", "ks"}));
  classify->add_option("--ci", cfg.ci_level, "Confidence level");

  auto* tree = app.add_subcommand("tree", "Write a DOT tree for a string");
  tree->add_option("--text", cfg.text, "Input string")->required();
  tree->add_option("--out,-o", cfg.out, "DOT output (default: stdout)");
  tree->add_option("--method", cfg.method, "assembly|huffman")
      ->check(CLI::IsMember({"assembly", "huffman"}));
  tree->add_flag("--split", cfg.split, "Use the split heuristic pathway");
  tree->add_option("--exact-guard", cfg.exact_guard,
                   "Longest string accepted by exact assembly search");

  auto* ctm_gen =
      app.add_subcommand("ctm-gen", "Enumerate Turing machines into a table");
  ctm_gen->add_option("--states", cfg.states, "Machine states (1 or 2)");
  ctm_gen->add_option("--symbols", cfg.symbols, "Tape symbols (2)");
  ctm_gen->add_option("--steps", cfg.step_bound, "Step bound per machine");
  ctm_gen->add_option("--out,-o", cfg.out, "Output CSV (default: stdout)");

  auto* binarize = app.add_subcommand(
      "binarize", "Threshold a matrix CSV or SDF distance matrix into 0/1");
  add_io(binarize, cfg);
  add_threshold(binarize, raw);

  auto* sdf = app.add_subcommand("sdf-matrix",
                                 "Atom distance matrix from a V2000 SDF file");
  add_io(sdf, cfg);

  auto* champ = app.add_subcommand("champernowne",
                                   "Print a Champernowne prefix");
  champ->add_option("--n,-n", cfg.length, "Prefix length")->required();
  champ->add_option("--base", cfg.base, "Base (2-36)");
  champ->add_option("--out,-o", cfg.out, "Output file (default: stdout)");

  auto* synth = app.add_subcommand("synthetic",
                                   "Write the seeded synthetic corpus");
  synth->add_option("--seed", cfg.seed, "RNG seed");
  synth->add_option("--size", cfg.size, "Number of strings");
  synth->add_option("--out,-o", cfg.out, "Output CSV (default: stdout)");

  auto* deceive = app.add_subcommand(
      "deceive", "Compare a generator's description length with measures");
  deceive->add_option("--spec", raw.spec_path, "GeneratorSpec JSON file")
      ->required();
  deceive->add_option("--text", cfg.text,
                      "Payload to check (default: generate from spec)");
  deceive->add_option("--measures", raw.measures, "Comma-separated measures");
  deceive->add_option("--out,-o", cfg.out, "Output CSV (default: stdout)");
  add_tables(deceive, cfg);
  add_bdm(deceive, cfg, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cplx::cli::kExitOk : cplx::cli::kExitUsage;
  }

  try {
    finish(app, cfg, raw);
  } catch (const cplx::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cplx::cli::kExitIo;
  } catch (const cplx::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cplx::cli::kExitUsage;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*measure) return cplx::cli::cmd_measure(cfg, out, err);
  if (*correlate) return cplx::cli::cmd_correlate(cfg, out, err);
  if (*classify) return cplx::cli::cmd_classify(cfg, out, err);
  if (*tree) {
    if (!tree->count("--method")) cfg.method = "assembly";
    return cplx::cli::cmd_tree(cfg, out, err);
  }
  if (*ctm_gen) return cplx::cli::cmd_ctm_gen(cfg, out, err);
  if (*binarize) return cplx::cli::cmd_binarize(cfg, out, err);
  if (*sdf) return cplx::cli::cmd_sdf_matrix(cfg, out, err);
  if (*champ) return cplx::cli::cmd_champernowne(cfg, out, err);
  if (*synth) return cplx::cli::cmd_synthetic(cfg, out, err);
  if (*deceive) return cplx::cli::cmd_deceive(cfg, out, err);
  return cplx::cli::kExitUsage;
}
