#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "cplx/coding.hpp"
#include "cplx/csv.hpp"
#include "cplx/deceiver.hpp"
#include "cplx/error.hpp"
#include "cplx/ingest.hpp"

namespace cplx::cli {

namespace {

constexpr double kDefaultThreshold = 3.0;

// Maps library exceptions onto the exit-code contract.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

void emit(const RunConfig& cfg, std::ostream& out, std::string_view text) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    csv::write_file(cfg.out, text);
  }
}

std::string opt_real(const std::optional<double>& v) {
  return v ? csv::format_real(*v) : std::string();
}

struct Tables {
  std::optional<bdm::CtmTable> one_d;
  std::optional<bdm::CtmTable> two_d;
  std::string label;
};

Tables load_tables(const RunConfig& cfg) {
  Tables t;
  if (cfg.toy_ctm) {
    t.one_d = bdm::toy_table_1d();
    t.two_d = bdm::toy_table_2d();
    t.label = "toy";
  }
  for (const auto& path : cfg.ctm_tables) {
    auto table = bdm::ctm_load(path);
    auto& slot = table.dimension() == 1 ? t.one_d : t.two_d;
    if (slot && !cfg.toy_ctm) {
      throw InvalidArgument("more than one " +
                            std::to_string(table.dimension()) +
                            "D CTM table given");
    }
    slot = std::move(table);
    t.label = cfg.toy_ctm ? "mixed" : "file";
  }
  return t;
}

MeasureContext make_context(const RunConfig& cfg, const Tables& tables) {
  MeasureContext ctx;
  ctx.table_1d = tables.one_d ? &*tables.one_d : nullptr;
  ctx.table_2d = tables.two_d ? &*tables.two_d : nullptr;
  ctx.table_label = tables.label;
  ctx.bdm_params = cfg.bdm_params;
  ctx.exact_guard = cfg.exact_guard;
  ctx.threshold = cfg.threshold.value_or(kDefaultThreshold);
  return ctx;
}

bool contains(const std::vector<Measure>& ms, Measure m) {
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

// Runs f(i) for i in [0, n) on a small worker pool. The first exception in
// index order is rethrown after all workers finish.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.measures.empty()) {
      throw InvalidArgument("no measures requested (--measures)");
    }
    const Tables tables = load_tables(cfg);
    if (contains(cfg.measures, Measure::kBdm1d) && !tables.one_d) {
      throw InvalidArgument(
          "bdm1d requires a 1D table via --ctm-table or --toy-ctm");
    }
    if (contains(cfg.measures, Measure::kBdm2d) && !tables.two_d) {
      throw InvalidArgument(
          "bdm2d requires a 2D table via --ctm-table or --toy-ctm");
    }
    const auto records = ingest::load_dataset(cfg.input);
    if (contains(cfg.measures, Measure::kMaExact)) {
      for (const auto& r : records) {
        if (r.payload_kind == ingest::PayloadKind::kString &&
            coding::decode_utf8(r.payload).size() > cfg.exact_guard) {
          throw InvalidArgument("record '" + r.id +
                                "' exceeds the exact-search guard of " +
                                std::to_string(cfg.exact_guard) +
                                "; use ma_split or raise --exact-guard");
        }
      }
    }
    const MeasureContext ctx = make_context(cfg, tables);

    const std::size_t per_record = cfg.measures.size();
    std::vector<ingest::MeasureResult> rows(records.size() * per_record);
    parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
      const auto& rec = records[i];
      for (std::size_t k = 0; k < per_record; ++k) {
        const Measure m = cfg.measures[k];
        MeasureValue v;
        try {
          v = rec.payload_kind == ingest::PayloadKind::kString
                  ? measure_string(m, rec.payload, ctx)
                  : measure_matrix(m, rec.matrix, ctx);
        } catch (const InvalidArgument& e) {
          throw InvalidArgument("record '" + rec.id + "', " +
                                std::string(to_string(m)) + ": " + e.what());
        }
        rows[i * per_record + k] = {rec.id, rec.category,
                                    std::string(to_string(m)), v.value,
                                    std::move(v.metadata)};
      }
    });
    emit(cfg, out, ingest::results_to_csv(rows));
    return kExitOk;
  });
}

namespace {

// id -> value for one measure, in first-appearance order.
std::vector<std::pair<std::string, double>> column(
    const std::vector<ingest::MeasureResult>& results, const std::string& m) {
  std::vector<std::pair<std::string, double>> out;
  std::set<std::string> seen;
  bool present = false;
  for (const auto& r : results) {
    if (r.measure != m) continue;
    present = true;
    if (!seen.insert(r.id).second) {
      throw ParseError("duplicate id '" + r.id + "' for measure '" + m + "'");
    }
    if (r.value) out.emplace_back(r.id, *r.value);
  }
  if (!present) {
    throw InvalidArgument("measure '" + m + "' not found in results");
  }
  return out;
}

std::string report_header() {
  return "statistic,df,p_one_tail,p_two_tail,ci_low,ci_high,ci_level,n,notes";
}

std::vector<std::string> report_fields(const stats::StatReport& r) {
  return {csv::format_real(r.statistic), opt_real(r.df),
          csv::format_real(r.p_one_tail), csv::format_real(r.p_two_tail),
          opt_real(r.ci_low), opt_real(r.ci_high),
          csv::format_real(r.ci_level), std::to_string(r.n), r.notes};
}

}  // namespace

int cmd_correlate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.method != "pearson" && cfg.method != "spearman") {
      throw InvalidArgument("--method must be pearson or spearman");
    }
    if (cfg.x_measure.empty() || cfg.y_measure.empty()) {
      throw InvalidArgument("--x and --y are required");
    }
    const auto results = ingest::load_results(cfg.input);
    const auto xs = column(results, cfg.x_measure);
    const auto ys = column(results, cfg.y_measure);
    std::map<std::string, double> y_by_id(ys.begin(), ys.end());
    std::vector<double> x, y;
    for (const auto& [id, v] : xs) {
      if (auto it = y_by_id.find(id); it != y_by_id.end()) {
        x.push_back(v);
        y.push_back(it->second);
      }
    }
    if (x.size() < 3) {
      throw InvalidArgument("need at least 3 shared ids, found " +
                            std::to_string(x.size()));
    }
    const auto report = cfg.method == "pearson"
                            ? stats::pearson(x, y, cfg.ci_level)
                            : stats::spearman(x, y, cfg.ci_level);
    std::vector<std::string> fields = {cfg.x_measure, cfg.y_measure,
                                       cfg.method};
    const auto rf = report_fields(report);
    fields.insert(fields.end(), rf.begin(), rf.end());
    emit(cfg, out, "x,y,method," + report_header() + "\n" + csv::join(fields) +
                       "\n");
    return kExitOk;
  });
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.test != "welch_t" && cfg.test != "ks") {
      throw InvalidArgument("--test must be welch_t or ks");
    }
    const auto results = ingest::load_results(cfg.input);
    auto group_of = [&](const ingest::MeasureResult& r) -> const std::string& {
      if (cfg.group_col == "category") return r.category;
      if (cfg.group_col == "id") return r.id;
      if (cfg.group_col == "metadata") return r.metadata;
      throw InvalidArgument("unknown group column '" + cfg.group_col + "'");
    };

    std::vector<std::string> measures;
    std::set<std::string> groups;
    // measure -> group -> values
    std::map<std::string, std::map<std::string, std::vector<double>>> values;
    for (const auto& r : results) {
      const std::string& g = group_of(r);
      groups.insert(g);
      if (!values.count(r.measure)) measures.push_back(r.measure);
      auto& bucket = values[r.measure][g];
      if (r.value) bucket.push_back(*r.value);
    }
    if (groups.size() < 2) {
      throw InvalidArgument("need >= 2 groups in column '" + cfg.group_col +
                            "', found " + std::to_string(groups.size()));
    }
    const std::vector<std::string> group_list(groups.begin(), groups.end());
    const std::size_t min_size = cfg.test == "welch_t" ? 2 : 1;

    std::string text = "measure,group_a,group_b,test,n_a,n_b," +
                       report_header() + "\n";
    for (const auto& m : measures) {
      for (std::size_t i = 0; i < group_list.size(); ++i) {
        for (std::size_t j = i + 1; j < group_list.size(); ++j) {
          const auto& a = values[m][group_list[i]];
          const auto& b = values[m][group_list[j]];
          std::vector<std::string> fields = {m, group_list[i], group_list[j],
                                             cfg.test, std::to_string(a.size()),
                                             std::to_string(b.size())};
          std::string skip;
          for (const auto* g : {&group_list[i], &group_list[j]}) {
            const auto& vs = values[m][*g];
            if (vs.size() < min_size && skip.empty()) {
              skip = "skipped: group '" + *g + "' has fewer than " +
                     std::to_string(min_size) + " values";
            }
          }
          std::vector<std::string> rf;
          if (skip.empty()) {
            try {
              rf = report_fields(cfg.test == "welch_t"
                                     ? stats::welch_t(a, b, cfg.ci_level)
                                     : stats::ks_two_sample(a, b));
            } catch (const InvalidArgument& e) {
              skip = std::string("skipped: ") + e.what();
            }
          }
          if (!skip.empty()) {
            err << "warning: " << m << " " << group_list[i] << " vs "
                << group_list[j] << ": " << skip << '\n';
            rf.assign(9, std::string());
            rf[8] = skip;
          }
          fields.insert(fields.end(), rf.begin(), rf.end());
          text += csv::join(fields);
          text.push_back('\n');
        }
      }
    }
    emit(cfg, out, text);
    return kExitOk;
  });
}

int cmd_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.text.empty()) {
      throw IoError("empty input string");
    }
    std::string dot;
    if (cfg.method == "huffman") {
      dot = coding::huffman_tree_dot(coding::huffman(cfg.text));
    } else if (cfg.method == "assembly") {
      if (cfg.split) {
        dot = assembly::assembly_tree_dot(
            assembly::assembly_index_split(cfg.text).pathway);
      } else {
        if (coding::decode_utf8(cfg.text).size() > cfg.exact_guard) {
          throw InvalidArgument(
              "input exceeds the exact-search guard; use --split");
        }
        dot = assembly::assembly_tree_dot(
            assembly::assembly_index_exact(cfg.text, cfg.exact_guard).pathway);
      }
    } else {
      throw InvalidArgument("--method must be assembly or huffman");
    }
    emit(cfg, out, dot);
    return kExitOk;
  });
}

int cmd_ctm_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto table = bdm::ctm_enumerate(cfg.states, cfg.symbols,
                                          cfg.step_bound);
    emit(cfg, out, bdm::ctm_to_csv(table));
    return kExitOk;
  });
}

namespace {

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

RealMatrix load_any_matrix(const std::string& path) {
  if (has_suffix(path, ".sdf") || has_suffix(path, ".mol")) {
    try {
      return ingest::sdf_distance_matrix(csv::read_file(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return ingest::load_matrix_csv(path);
}

}  // namespace

int cmd_binarize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RealMatrix m = load_any_matrix(cfg.input);
    const auto binary =
        ingest::binarize_matrix(m, cfg.threshold.value_or(kDefaultThreshold));
    RealMatrix as_real(binary.rows, binary.cols);
    for (std::size_t i = 0; i < binary.data.size(); ++i) {
      as_real.data[i] = binary.data[i];
    }
    emit(cfg, out, ingest::matrix_to_csv(as_real));
    return kExitOk;
  });
}

int cmd_sdf_matrix(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::string text = csv::read_file(cfg.input);
    RealMatrix m;
    try {
      m = ingest::sdf_distance_matrix(text);
    } catch (const ParseError& e) {
      throw ParseError(cfg.input + ": " + e.what());
    }
    emit(cfg, out, ingest::matrix_to_csv(m));
    return kExitOk;
  });
}

int cmd_champernowne(const RunConfig& cfg, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    emit(cfg, out, deceiver::champernowne(cfg.length, cfg.base) + "\n");
    return kExitOk;
  });
}

int cmd_synthetic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.size == 0) throw InvalidArgument("--size must be positive");
    emit(cfg, out, synthetic_corpus_csv(cfg.seed, cfg.size));
    return kExitOk;
  });
}

int cmd_deceive(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto spec = deceiver::parse_spec_json(cfg.spec_json);
    const Tables tables = load_tables(cfg);
    std::vector<Measure> measures = cfg.measures;
    if (measures.empty()) {
      measures = {Measure::kEntropy, Measure::kHuffman, Measure::kRle,
                  Measure::kLzw, Measure::kMaSplit};
      if (tables.one_d) measures.push_back(Measure::kBdm1d);
    }
    if (contains(measures, Measure::kBdm1d) && !tables.one_d) {
      throw InvalidArgument(
          "bdm1d requires a 1D table via --ctm-table or --toy-ctm");
    }
    const std::string payload =
        cfg.text.empty() ? deceiver::generate(spec) : cfg.text;
    const auto report = deceiver::divergence_report(
        payload, spec, measures, make_context(cfg, tables));
    std::string text = "quantity,value,metadata\n";
    text += csv::join({"length", std::to_string(report.length), ""}) + "\n";
    text += csv::join({"description_bits",
                       std::to_string(report.description_bits),
                       deceiver::encode_spec_bits(spec)}) +
            "\n";
    text += csv::join({"normalized_entropy",
                       csv::format_real(report.normalized_entropy), ""}) +
            "\n";
    for (const auto& [m, v] : report.measures) {
      text += csv::join({std::string(to_string(m)), opt_real(v.value),
                         v.metadata}) +
              "\n";
    }
    emit(cfg, out, text);
    return kExitOk;
  });
}

}  // namespace cplx::cli
