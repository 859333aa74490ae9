#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "skopus/report.hpp"
#include "skopus/search.hpp"
#include "skopus/synthgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitEmptyData = 3;

struct MineArgs {
  std::string input;
  std::string output;
  std::int64_t k = 20;
  std::string measure = "leverage";
  std::string agg = "mean";
  std::uint32_t max_length = 0;
  bool no_bootstrap = false;
  bool stats = false;
};

int run_mine(const MineArgs& args) {
  skopus::SearchConfig cfg;
  cfg.k = args.k;
  cfg.max_pattern_length = args.max_length;
  cfg.measure.measure_kind =
      args.measure == "support" ? skopus::MeasureKind::support : skopus::MeasureKind::leverage;
  cfg.measure.aggregation =
      args.agg == "min" ? skopus::Aggregation::min : skopus::Aggregation::mean;
  cfg.bootstrap_enabled = !args.no_bootstrap;

  skopus::SequenceDatabase db = skopus::load_database(args.input);
  if (db.record_count() == 0) {
    std::cerr << "skopus: empty database: " << args.input << '\n';
    return kExitEmptyData;
  }

  const auto started = std::chrono::steady_clock::now();
  skopus::MineResult result = skopus::mine_topk(db, cfg);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  std::ostringstream body;
  skopus::write_ranking_tsv(body, result.ranking, db.items());
  if (args.output.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(args.output);
    if (!out) {
      std::cerr << "skopus: cannot write output file: " << args.output << '\n';
      return kExitUsage;
    }
    out << body.str();
  }

  if (args.stats) {
    std::cerr << "time_ms\t" << elapsed.count() << '\n'
              << "nodes_expanded\t" << result.stats.nodes_expanded << '\n'
              << "patterns_scored\t" << result.stats.patterns_scored << '\n'
              << "pruned_subtrees\t" << result.stats.pruned_subtrees << '\n'
              << "bootstrap_pairs\t" << result.stats.bootstrap_pairs << '\n';
  }
  return kExitOk;
}

struct GenArgs {
  std::uint32_t items = 10;
  std::int64_t sequences = 10000;
  std::int64_t patterns = 0;
  std::uint64_t seed = 0;
  double base_rate = 9.0;
  double pattern_rate = 1.0;
  std::string out_data;
  std::string out_truth;
};

int run_gen(const GenArgs& args) {
  skopus::GenConfig cfg;
  cfg.vocab_size = args.items;
  cfg.n_sequences = args.sequences;
  cfg.n_patterns = args.patterns;
  cfg.seed = args.seed;
  cfg.base_length_rate = args.base_rate;
  cfg.pattern_length_rate = args.pattern_rate;

  skopus::Generated gen = skopus::generate(cfg);

  std::ofstream data(args.out_data);
  if (!data) {
    std::cerr << "skopus: cannot write data file: " << args.out_data << '\n';
    return kExitUsage;
  }
  skopus::serialize_database(gen.db, data);

  std::ofstream truth(args.out_truth);
  if (!truth) {
    std::cerr << "skopus: cannot write truth file: " << args.out_truth << '\n';
    return kExitUsage;
  }
  skopus::write_truth(truth, gen.truth, gen.db.items(), cfg);
  return kExitOk;
}

struct EvalArgs {
  std::string truth;
  std::string ranking;
  std::size_t k = 20;
};

int run_eval(const EvalArgs& args) {
  std::ifstream truth_in(args.truth);
  if (!truth_in) {
    std::cerr << "skopus: cannot open truth file: " << args.truth << '\n';
    return kExitUsage;
  }
  skopus::TruthFile truth = skopus::read_truth(truth_in);

  std::ifstream ranking_in(args.ranking);
  if (!ranking_in) {
    std::cerr << "skopus: cannot open ranking file: " << args.ranking << '\n';
    return kExitUsage;
  }
  std::vector<skopus::RankingRow> rows = skopus::read_ranking_tsv(ranking_in);

  std::vector<std::vector<std::string>> ranked;
  ranked.reserve(rows.size());
  for (const skopus::RankingRow& row : rows) {
    std::istringstream tokens(row.pattern);
    std::vector<std::string> pattern;
    std::string tok;
    while (tokens >> tok) pattern.push_back(tok);
    ranked.push_back(std::move(pattern));
  }

  const skopus::RecallReport report = skopus::recall_at_k(truth.patterns, ranked, args.k);

  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", report.recall);
  std::cout << "recall\t" << buf << '\n';
  for (std::size_t t = 0; t < truth.patterns.size(); ++t) {
    std::cout << "embedded\t";
    for (std::size_t i = 0; i < truth.patterns[t].size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << truth.patterns[t][i];
    }
    if (report.found_rank[t] > 0)
      std::cout << "\tfound@" << report.found_rank[t] << '\n';
    else
      std::cout << "\tmissing\n";
  }
  for (std::size_t r = 0; r < report.ranked_kind.size(); ++r) {
    if (report.ranked_kind[r] == skopus::RankedKind::subpattern)
      std::cout << "subpattern\t" << (r + 1) << '\t' << rows[r].pattern << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skopus: exact top-k sequential pattern mining under leverage"};
  app.require_subcommand(1);

  MineArgs mine_args;
  CLI::App* mine = app.add_subcommand("mine", "Mine the top-k patterns of a sequence database");
  mine->add_option("--input", mine_args.input, "input database (one record per line)")
      ->required();
  mine->add_option("--k", mine_args.k, "number of patterns to return")->default_val(20);
  mine->add_option("--measure", mine_args.measure, "interestingness measure")
      ->check(CLI::IsMember({"leverage", "support"}))
      ->default_val("leverage");
  mine->add_option("--agg", mine_args.agg,
                   "aggregation of composition supports within a partition")
      ->check(CLI::IsMember({"mean", "min"}))
      ->default_val("mean");
  mine->add_option("--max-length", mine_args.max_length, "pattern length cap (0 = unlimited)")
      ->default_val(0);
  mine->add_flag("--no-bootstrap", mine_args.no_bootstrap, "skip the two-item bootstrap pass");
  mine->add_option("--output", mine_args.output, "output TSV path (default: stdout)");
  mine->add_flag("--stats", mine_args.stats, "report runtime and search counters on stderr");
  mine->footer(
      "Ranking order: score, then support, then lexicographically smaller\n"
      "token-id sequences first. Ties at the k-th place are resolved by that\n"
      "same order, so output is reproducible across runs.");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic corpus with embedded patterns");
  gen->add_option("--items", gen_args.items, "vocabulary size")->default_val(10);
  gen->add_option("--sequences", gen_args.sequences, "number of records")->default_val(10000);
  gen->add_option("--patterns", gen_args.patterns, "number of embedded patterns")->default_val(0);
  gen->add_option("--seed", gen_args.seed, "random seed")->default_val(0);
  gen->add_option("--base-rate", gen_args.base_rate, "record length Poisson rate (+1 shift)")
      ->default_val(9.0);
  gen->add_option("--pattern-rate", gen_args.pattern_rate,
                  "pattern length Poisson rate (+2 shift)")
      ->default_val(1.0);
  gen->add_option("--out-data", gen_args.out_data, "output database path")->required();
  gen->add_option("--out-truth", gen_args.out_truth, "output ground-truth path")->required();

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Recall of a ranking against a ground truth");
  eval->add_option("--truth", eval_args.truth, "ground-truth file from gen")->required();
  eval->add_option("--ranking", eval_args.ranking, "ranking TSV from mine")->required();
  eval->add_option("--k", eval_args.k, "evaluate the top k rows")->default_val(20);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (mine->parsed()) return run_mine(mine_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (eval->parsed()) return run_eval(eval_args);
  } catch (const std::exception& e) {
    std::cerr << "skopus: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
