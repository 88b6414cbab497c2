#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "synthpara/alignment.hpp"
#include "synthpara/corpus.hpp"
#include "synthpara/error.hpp"
#include "synthpara/obfuscation.hpp"
#include "synthpara/phrase.hpp"
#include "synthpara/sharding.hpp"
#include "synthpara/stats.hpp"
#include "synthpara/synth_tasks.hpp"
#include "synthpara/toxicity.hpp"

namespace synthpara::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Pairs generated per block inside a shard; bounds token-level memory.
constexpr std::uint64_t kBlockPairs = 8192;

// Fixed stream ids so different stages of one run never share draws.
constexpr std::uint64_t kStreamGenerate = 0;
constexpr std::uint64_t kStreamObfuscationMap = 1;
constexpr std::uint64_t kStreamObfuscationDraws = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned shards = 1;
  bool json_logs = false;
};

class StageLog {
 public:
  StageLog(const GlobalOptions& globals, std::ostream& err) : globals_(globals), err_(err) {}

  void record(const std::string& stage, Clock::time_point started,
              const std::vector<fs::path>& outputs, std::uint64_t records) const {
    if (!globals_.json_logs) return;
    const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : outputs) paths.push_back(p.string());
    nlohmann::json line = {{"stage", stage},
                           {"wall_seconds", seconds},
                           {"outputs", std::move(paths)},
                           {"records", records}};
    err_ << line.dump() << '\n';
  }

 private:
  const GlobalOptions& globals_;
  std::ostream& err_;
};

// Runs `body` and prefixes any runtime error with the stage name.
template <class Body>
auto in_stage(const std::string& stage, Body&& body) {
  try {
    return body();
  } catch (const InvalidConfig&) {
    throw;
  } catch (const std::exception& e) {
    throw Error("stage " + stage + ": " + e.what());
  }
}

CLI::Validator unit_interval() {
  return CLI::Validator(
      [](std::string& value) -> std::string {
        double v = 0.0;
        try {
          std::size_t used = 0;
          v = std::stod(value, &used);
          if (used != value.size()) return "'" + value + "' is not a number";
        } catch (const std::exception&) {
          return "'" + value + "' is not a number";
        }
        if (!(v >= 0.0 && v <= 1.0)) {
          return "value " + value + " is outside the valid range [0,1]";
        }
        return {};
      },
      "in [0,1]", "UNIT_INTERVAL");
}

void reject_overwrite(const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs) {
  for (const auto& out : outputs) {
    for (const auto& in : inputs) {
      std::error_code ec;
      if (fs::exists(out, ec) && fs::exists(in, ec) && fs::equivalent(in, out, ec)) {
        throw UsageError("output '" + out.string() + "' would overwrite input '" + in.string() + "'");
      }
    }
  }
}

fs::path with_suffix(const std::string& prefix, const std::string& suffix) {
  return fs::path(prefix + suffix);
}

void emit_report(const nlohmann::json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
  }
}

// Streams generated pairs to disk. `block(first, count, src, trg, deriv)`
// appends serialized lines for pairs [first, first+count); deriv is null
// when no sidecar is requested. Shard buffers are written in shard order.
template <class Block>
void generate_to_files(std::uint64_t pairs, unsigned shards, const fs::path& src_path,
                       const fs::path& trg_path, const std::optional<fs::path>& deriv_path,
                       Block&& block) {
  struct Buffers {
    std::string src;
    std::string trg;
    std::string deriv;
  };
  const auto ranges = split_shards(pairs, shards);
  std::vector<Buffers> buffers(ranges.size());
  for_each_shard(pairs, shards, [&](const ShardRange& range) {
    auto& buf = buffers[range.shard];
    for (std::uint64_t first = range.begin; first < range.end; first += kBlockPairs) {
      const std::uint64_t count = std::min(kBlockPairs, range.end - first);
      block(first, count, buf.src, buf.trg, deriv_path ? &buf.deriv : nullptr);
    }
  });

  auto write_all = [&](const fs::path& path, std::string Buffers::*member) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    for (const auto& buf : buffers) {
      const std::string& text = buf.*member;
      out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    out.flush();
    if (!out) throw Error("write failure on '" + path.string() + "'");
  };
  write_all(src_path, &Buffers::src);
  write_all(trg_path, &Buffers::trg);
  if (deriv_path) write_all(*deriv_path, &Buffers::deriv);
}

// --- option bundles ----------------------------------------------------------

struct LengthFlags {
  LengthDistribution dist;

  void add(CLI::App* app, const std::string& prefix, const std::string& what) {
    app->add_option("--" + prefix + "-mean", dist.mean, "Mean " + what)->capture_default_str();
    app->add_option("--" + prefix + "-std", dist.stddev, "Stddev of " + what)->capture_default_str();
    app->add_option("--" + prefix + "-min", dist.min_len, "Minimum " + what)->capture_default_str();
    app->add_option("--" + prefix + "-max", dist.max_len, "Maximum " + what)->capture_default_str();
  }
};

struct SyntheticFlags {
  std::uint64_t pairs = 0;
  std::string out;
  int token_len = 3;
  std::size_t vocab_size = 0;
  LengthFlags length;

  void add(CLI::App* app) {
    app->add_option("--pairs", pairs, "Number of sentence pairs")->required()->check(
        CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    app->add_option("--out", out, "Output prefix; writes PREFIX.src and PREFIX.trg")->required();
    app->add_option("--token-len", token_len, "Synthetic token length")
        ->capture_default_str()->check(CLI::Range(1, 5));
    app->add_option("--vocab-size", vocab_size, "Paired vocabulary size (0 = all 26^len)")
        ->capture_default_str();
    length.add(app, "len", "sentence length");
  }
};

struct PhraseCatFlags {
  std::uint64_t pairs = 0;
  std::string out;
  std::string phrases;
  std::string train_src;
  std::string train_trg;
  int iterations = 5;
  std::string heuristic = "grow-diag-final-and";
  int max_len = 7;
  bool no_unaligned_extension = false;
  std::string weighting = "uniform";
  LengthFlags count;

  void add(CLI::App* app) {
    app->add_option("--pairs", pairs, "Number of sentence pairs")->required()->check(
        CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    app->add_option("--out", out, "Output prefix; writes PREFIX.src and PREFIX.trg")->required();
    auto* table = app->add_option("--phrases", phrases, "Existing phrase table (TSV)");
    auto* src = app->add_option("--train-src", train_src, "Parallel source file for the full pipeline");
    auto* trg = app->add_option("--train-trg", train_trg, "Parallel target file for the full pipeline");
    src->needs(trg);
    trg->needs(src);
    table->excludes(src)->excludes(trg);
    app->add_option("--iterations", iterations, "IBM Model 1 EM iterations")->capture_default_str();
    app->add_option("--heuristic", heuristic, "Symmetrization heuristic")->capture_default_str();
    app->add_option("--max-len", max_len, "Maximum phrase length")->capture_default_str();
    app->add_flag("--no-unaligned-extension", no_unaligned_extension,
                  "Keep only phrases with aligned boundary words");
    app->add_option("--weighting", weighting, "uniform | frequency")->capture_default_str();
    count.dist = PhraseCatConfig{}.phrase_count_dist;
    count.add(app, "count", "phrases per sentence");
  }
};

// --- commands ------------------------------------------------------------------

void cmd_gen_identity(const SyntheticFlags& f, const GlobalOptions& g, const StageLog& log) {
  f.length.dist.validate("sentence length distribution");
  const auto vocab = SyntheticVocabulary::make(f.token_len, f.vocab_size, g.seed);
  const RandomSource rng(g.seed, kStreamGenerate);
  const auto started = Clock::now();
  const auto src = with_suffix(f.out, ".src");
  const auto trg = with_suffix(f.out, ".trg");
  generate_to_files(f.pairs, g.shards, src, trg, std::nullopt,
                    [&](std::uint64_t first, std::uint64_t count, std::string& s, std::string& t,
                        std::string*) {
                      serialize_pairs(gen_identity_range(vocab, first, count, f.length.dist, rng), s, t);
                    });
  log.record("gen-identity", started, {src, trg}, f.pairs);
}

void cmd_gen_case_map(const SyntheticFlags& f, double ds, double dt, const GlobalOptions& g,
                      const StageLog& log) {
  CaseMapConfig config{ds, dt, f.length.dist, RandomSource(g.seed, kStreamGenerate)};
  config.validate();
  const auto vocab = SyntheticVocabulary::make(f.token_len, f.vocab_size, g.seed);
  const auto started = Clock::now();
  const auto src = with_suffix(f.out, ".src");
  const auto trg = with_suffix(f.out, ".trg");
  generate_to_files(f.pairs, g.shards, src, trg, std::nullopt,
                    [&](std::uint64_t first, std::uint64_t count, std::string& s, std::string& t,
                        std::string*) {
                      serialize_pairs(gen_case_map_range(vocab, first, count, config), s, t);
                    });
  log.record("gen-case-map", started, {src, trg}, f.pairs);
}

void cmd_gen_pb_trees(const SyntheticFlags& f, double r, const std::string& derivations,
                      const GlobalOptions& g, const StageLog& log) {
  PbTreesConfig config{r, f.length.dist, RandomSource(g.seed, kStreamGenerate), !derivations.empty()};
  config.validate();
  const auto vocab = SyntheticVocabulary::make(f.token_len, f.vocab_size, g.seed);
  const auto started = Clock::now();
  const auto src = with_suffix(f.out, ".src");
  const auto trg = with_suffix(f.out, ".trg");
  std::optional<fs::path> deriv;
  if (!derivations.empty()) deriv = derivations;
  generate_to_files(f.pairs, g.shards, src, trg, deriv,
                    [&](std::uint64_t first, std::uint64_t count, std::string& s, std::string& t,
                        std::string* d) {
                      const auto batch = gen_pb_trees_range(vocab, first, count, config);
                      serialize_pairs(batch.pairs, s, t);
                      if (!d) return;
                      for (std::size_t k = 0; k < batch.pairs.size(); ++k) {
                        *d += format_derivation(batch.derivations[k], batch.pairs[k].source);
                        d->push_back('\n');
                      }
                    });
  std::vector<fs::path> outputs{src, trg};
  if (deriv) outputs.push_back(*deriv);
  log.record("gen-pb-trees", started, outputs, f.pairs);
}

// Trains both directions, Viterbi-aligns and symmetrizes. Persists the two
// translation tables when table_prefix is set.
std::vector<AlignmentLinks> align_corpus(const ParallelCorpus& corpus, int iterations,
                                         Symmetrization heuristic, const std::string& table_prefix,
                                         const StageLog& log) {
  auto started = Clock::now();
  const auto forward = in_stage("train-forward", [&] { return train_ibm1(corpus, iterations); });
  std::vector<fs::path> fwd_out;
  if (!table_prefix.empty()) {
    fwd_out.push_back(with_suffix(table_prefix, ".fwd.ttable.tsv"));
    in_stage("train-forward", [&] { write_table(forward, fwd_out.back()); });
  }
  log.record("train-forward", started, fwd_out, forward.entry_count());

  started = Clock::now();
  const auto reverse = in_stage("train-reverse", [&] { return train_ibm1(reversed(corpus), iterations); });
  std::vector<fs::path> rev_out;
  if (!table_prefix.empty()) {
    rev_out.push_back(with_suffix(table_prefix, ".rev.ttable.tsv"));
    in_stage("train-reverse", [&] { write_table(reverse, rev_out.back()); });
  }
  log.record("train-reverse", started, rev_out, reverse.entry_count());

  std::vector<AlignmentLinks> alignments;
  alignments.reserve(corpus.size());
  for (const auto& pair : corpus.pairs) {
    alignments.push_back(symmetrize(viterbi_align(pair, forward, Direction::kForward),
                                    viterbi_align(pair, reverse, Direction::kReverse), heuristic));
  }
  return alignments;
}

void cmd_gen_phrase_cat(const PhraseCatFlags& f, const GlobalOptions& g, const StageLog& log) {
  PhraseCatConfig config;
  config.phrase_count_dist = f.count.dist;
  config.weighting = parse_phrase_weighting(f.weighting);
  config.rng = RandomSource(g.seed, kStreamGenerate);
  config.validate();
  ExtractionOptions extraction{f.max_len, !f.no_unaligned_extension};
  extraction.validate();
  const auto heuristic = parse_symmetrization(f.heuristic);
  if (f.iterations < 1) throw InvalidConfig("--iterations must be >= 1");
  if (f.phrases.empty() && f.train_src.empty()) {
    throw UsageError("gen phrase-cat needs --phrases TABLE or --train-src/--train-trg");
  }

  const auto src = with_suffix(f.out, ".src");
  const auto trg = with_suffix(f.out, ".trg");
  PhraseTable table;
  if (!f.phrases.empty()) {
    reject_overwrite({f.phrases}, {src, trg});
    table = in_stage("load-phrases", [&] { return read_phrase_table(f.phrases); });
  } else {
    const auto align_path = with_suffix(f.out, ".align");
    const auto table_path = with_suffix(f.out, ".phrases.tsv");
    reject_overwrite({f.train_src, f.train_trg},
                     {src, trg, align_path, table_path, with_suffix(f.out, ".fwd.ttable.tsv"),
                      with_suffix(f.out, ".rev.ttable.tsv")});
    auto started = Clock::now();
    const auto corpus = in_stage("read", [&] { return read_parallel(f.train_src, f.train_trg); });
    log.record("read", started, {}, corpus.size());

    const auto alignments = align_corpus(corpus, f.iterations, heuristic, f.out, log);
    started = Clock::now();
    in_stage("symmetrize", [&] { write_alignments(alignments, align_path); });
    log.record("symmetrize", started, {align_path}, alignments.size());

    started = Clock::now();
    table = in_stage("extract", [&] {
      auto t = extract_phrases(corpus, alignments, extraction);
      write_phrase_table(t, table_path);
      return t;
    });
    log.record("extract", started, {table_path}, table.size());
  }
  if (table.empty()) throw Error("stage generate: phrase table is empty");

  const auto started = Clock::now();
  in_stage("generate", [&] {
    generate_to_files(f.pairs, g.shards, src, trg, std::nullopt,
                      [&](std::uint64_t first, std::uint64_t count, std::string& s, std::string& t,
                          std::string*) {
                        serialize_pairs(gen_phrase_cat_range(table, first, count, config), s, t);
                      });
  });
  log.record("gen-phrase-cat", started, {src, trg}, f.pairs);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seeded synthetic parallel-corpus generators and corpus audits", "synthpara"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");

  GlobalOptions globals;
  app.add_option("--seed", globals.seed, "Global 64-bit seed")->capture_default_str();
  app.add_option("--shards", globals.shards, "Parallel generation shards")
      ->capture_default_str()
      ->check(CLI::Range(1u, 4096u));
  app.add_flag("--json-logs", globals.json_logs, "Emit one JSON record per completed stage");

  auto fallthrough = [](CLI::App* sub) { sub->fallthrough(); return sub; };

  // gen
  auto* gen = fallthrough(app.add_subcommand("gen", "Generate a synthetic parallel corpus"));
  gen->require_subcommand(1);

  SyntheticFlags identity_flags;
  auto* gen_identity_cmd = fallthrough(gen->add_subcommand("identity", "Target copies the source"));
  identity_flags.add(gen_identity_cmd);

  SyntheticFlags case_flags;
  double ds = 0.0;
  double dt = 0.0;
  auto* gen_case_cmd = fallthrough(gen->add_subcommand("case-map", "Lowercase source, uppercase target"));
  case_flags.add(gen_case_cmd);
  gen_case_cmd->add_option("--ds", ds, "Source deletion probability")->capture_default_str()->check(unit_interval());
  gen_case_cmd->add_option("--dt", dt, "Target deletion probability")->capture_default_str()->check(unit_interval());

  SyntheticFlags tree_flags;
  double swap_r = 0.15;
  std::string derivations;
  auto* gen_trees_cmd = fallthrough(gen->add_subcommand("pb-trees", "Permuted binary trees"));
  tree_flags.add(gen_trees_cmd);
  gen_trees_cmd->add_option("--r", swap_r, "Subtree swap probability")->capture_default_str()->check(unit_interval());
  gen_trees_cmd->add_option("--derivations", derivations, "Write derivation sidecar to PATH");

  PhraseCatFlags phrase_flags;
  auto* gen_phrase_cmd = fallthrough(gen->add_subcommand("phrase-cat", "Concatenated aligned phrases"));
  phrase_flags.add(gen_phrase_cmd);

  // obfuscate
  std::string ob_src, ob_trg, ob_out;
  double ratio = 0.0;
  int ob_token_len = 5;
  auto* obfuscate_cmd = fallthrough(app.add_subcommand("obfuscate", "Replace words by nonsense tokens with probability R"));
  obfuscate_cmd->add_option("--src", ob_src, "Source file")->required();
  obfuscate_cmd->add_option("--trg", ob_trg, "Target file")->required();
  obfuscate_cmd->add_option("--ratio", ratio, "Obfuscation ratio R")->required()->check(unit_interval());
  obfuscate_cmd->add_option("--token-len", ob_token_len, "Nonsense token length")
      ->capture_default_str()->check(CLI::Range(1, 64));
  obfuscate_cmd->add_option("--out", ob_out, "Output prefix; writes PREFIX.src, PREFIX.trg, PREFIX.map.{src,trg}.tsv")
      ->required();

  // align
  std::string al_src, al_trg, al_out, al_tables, al_heuristic = "grow-diag-final-and";
  int al_iterations = 5;
  auto* align_cmd = fallthrough(app.add_subcommand("align", "IBM Model 1 word alignment, symmetrized"));
  align_cmd->add_option("--src", al_src, "Source file")->required();
  align_cmd->add_option("--trg", al_trg, "Target file")->required();
  align_cmd->add_option("--out", al_out, "Pharaoh alignment output file")->required();
  align_cmd->add_option("--iterations", al_iterations, "EM iterations")->capture_default_str();
  align_cmd->add_option("--heuristic", al_heuristic, "intersection | union | grow-diag-final-and")
      ->capture_default_str();
  align_cmd->add_option("--tables", al_tables, "Also write PREFIX.fwd.ttable.tsv and PREFIX.rev.ttable.tsv");

  // extract-phrases
  std::string ex_src, ex_trg, ex_align, ex_out;
  int ex_max_len = 7;
  bool ex_tight = false;
  auto* extract_cmd = fallthrough(app.add_subcommand("extract-phrases", "Extract consistent phrase pairs"));
  extract_cmd->add_option("--src", ex_src, "Source file")->required();
  extract_cmd->add_option("--trg", ex_trg, "Target file")->required();
  extract_cmd->add_option("--align", ex_align, "Pharaoh alignment file")->required();
  extract_cmd->add_option("--out", ex_out, "Phrase table output (TSV)")->required();
  extract_cmd->add_option("--max-len", ex_max_len, "Maximum phrase length")->capture_default_str();
  extract_cmd->add_flag("--no-unaligned-extension", ex_tight, "Keep only phrases with aligned boundary words");

  // toxicity
  std::string tx_src, tx_hyp, tx_src_list, tx_trg_list, tx_out;
  std::string tx_src_lang = "src", tx_trg_lang = "trg";
  bool tx_substring = false;
  auto* toxicity_cmd = fallthrough(app.add_subcommand("toxicity", "Hallucinated-toxicity rate of translations"));
  toxicity_cmd->add_option("--src", tx_src, "Source sentences")->required();
  toxicity_cmd->add_option("--hyp", tx_hyp, "Translations, line-aligned with --src")->required();
  toxicity_cmd->add_option("--src-list", tx_src_list, "Source-language word list")->required();
  toxicity_cmd->add_option("--trg-list", tx_trg_list, "Target-language word list")->required();
  toxicity_cmd->add_option("--src-lang", tx_src_lang, "Source list language label");
  toxicity_cmd->add_option("--trg-lang", tx_trg_lang, "Target list language label");
  toxicity_cmd->add_flag("--substring", tx_substring, "Substring matching for unsegmented scripts");
  toxicity_cmd->add_option("--out", tx_out, "Write the JSON report here instead of stdout");

  // overlap
  std::string ov_pt, ov_ft, ov_label, ov_out;
  auto* overlap_cmd = fallthrough(app.add_subcommand("overlap", "Token-type overlap of two tokenized files"));
  overlap_cmd->add_option("--pt", ov_pt, "Pre-training side")->required();
  overlap_cmd->add_option("--ft", ov_ft, "Fine-tuning side")->required();
  overlap_cmd->add_option("--label", ov_label, "Label copied into the report");
  overlap_cmd->add_option("--out", ov_out, "Write the JSON report here instead of stdout");

  // summary
  std::string su_src, su_trg, su_out;
  auto* summary_cmd = fallthrough(app.add_subcommand("summary", "Corpus statistics"));
  summary_cmd->add_option("--src", su_src, "Source file")->required();
  summary_cmd->add_option("--trg", su_trg, "Target file")->required();
  summary_cmd->add_option("--out", su_out, "Write the JSON report here instead of stdout");

  // filter
  std::string fi_src, fi_trg, fi_out;
  double fi_ratio = 3.0;
  bool fi_no_dedup = false;
  auto* filter_cmd = fallthrough(app.add_subcommand("filter", "Deduplicate and drop extreme length ratios"));
  filter_cmd->add_option("--src", fi_src, "Source file")->required();
  filter_cmd->add_option("--trg", fi_trg, "Target file")->required();
  filter_cmd->add_option("--out", fi_out, "Output prefix; writes PREFIX.src and PREFIX.trg")->required();
  filter_cmd->add_option("--max-ratio", fi_ratio, "Maximum longer/shorter token ratio (inf disables)")
      ->capture_default_str();
  filter_cmd->add_flag("--no-dedup", fi_no_dedup, "Keep duplicate pairs");

  // CLI11 reports a stray word as "subcommand required"; name it instead.
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--seed" || a == "--shards" || a == "--config") {
      ++i;
      continue;
    }
    if (!a.empty() && a[0] == '-') continue;
    if (!app.get_subcommand_no_throw(a)) {
      err << "synthpara: unknown subcommand '" << a
          << "' (expected gen, obfuscate, align, extract-phrases, toxicity, overlap, summary or "
             "filter)\n";
      return kExitUsage;
    }
    break;
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "synthpara: " << e.what() << "\n";
    return kExitUsage;
  }

  const StageLog log(globals, err);
  try {
    if (gen_identity_cmd->parsed()) {
      cmd_gen_identity(identity_flags, globals, log);
    } else if (gen_case_cmd->parsed()) {
      cmd_gen_case_map(case_flags, ds, dt, globals, log);
    } else if (gen_trees_cmd->parsed()) {
      cmd_gen_pb_trees(tree_flags, swap_r, derivations, globals, log);
    } else if (gen_phrase_cmd->parsed()) {
      cmd_gen_phrase_cat(phrase_flags, globals, log);
    } else if (obfuscate_cmd->parsed()) {
      ObfuscationConfig config{ratio, RandomSource(globals.seed, kStreamObfuscationDraws)};
      config.validate();
      const auto src = with_suffix(ob_out, ".src");
      const auto trg = with_suffix(ob_out, ".trg");
      const auto map_src = with_suffix(ob_out, ".map.src.tsv");
      const auto map_trg = with_suffix(ob_out, ".map.trg.tsv");
      reject_overwrite({ob_src, ob_trg}, {src, trg, map_src, map_trg});
      const auto started = Clock::now();
      const auto corpus = read_parallel(ob_src, ob_trg);
      const auto map = build_obfuscation_map(corpus, ob_token_len,
                                             RandomSource(globals.seed, kStreamObfuscationMap));
      write_parallel(obfuscate_corpus(corpus, map, config), src, trg);
      write_word_map(map.source_map, map_src);
      write_word_map(map.target_map, map_trg);
      log.record("obfuscate", started, {src, trg, map_src, map_trg}, corpus.size());
    } else if (align_cmd->parsed()) {
      if (al_iterations < 1) throw InvalidConfig("--iterations must be >= 1");
      const auto heuristic = parse_symmetrization(al_heuristic);
      std::vector<fs::path> outputs{al_out};
      if (!al_tables.empty()) {
        outputs.push_back(with_suffix(al_tables, ".fwd.ttable.tsv"));
        outputs.push_back(with_suffix(al_tables, ".rev.ttable.tsv"));
      }
      reject_overwrite({al_src, al_trg}, outputs);
      auto started = Clock::now();
      const auto corpus = read_parallel(al_src, al_trg);
      log.record("read", started, {}, corpus.size());
      const auto alignments = align_corpus(corpus, al_iterations, heuristic, al_tables, log);
      started = Clock::now();
      write_alignments(alignments, al_out);
      log.record("symmetrize", started, {al_out}, alignments.size());
    } else if (extract_cmd->parsed()) {
      ExtractionOptions options{ex_max_len, !ex_tight};
      options.validate();
      reject_overwrite({ex_src, ex_trg, ex_align}, {ex_out});
      const auto started = Clock::now();
      const auto corpus = read_parallel(ex_src, ex_trg);
      const auto table = extract_phrases(corpus, read_alignments(ex_align), options);
      write_phrase_table(table, ex_out);
      log.record("extract", started, {ex_out}, table.size());
    } else if (toxicity_cmd->parsed()) {
      const auto started = Clock::now();
      const auto report = hallucinated_toxicity(
          read_sentences(tx_src, true), read_sentences(tx_hyp, true),
          load_toxicity_list(tx_src_list, tx_src_lang), load_toxicity_list(tx_trg_list, tx_trg_lang),
          tx_substring ? MatchMode::kSubstring : MatchMode::kToken);
      emit_report(to_json(report), tx_out, out);
      log.record("toxicity", started, tx_out.empty() ? std::vector<fs::path>{} : std::vector<fs::path>{tx_out},
                 report.total_sentences);
    } else if (overlap_cmd->parsed()) {
      const auto started = Clock::now();
      const auto report = vocab_overlap(fs::path(ov_pt), fs::path(ov_ft), ov_label);
      emit_report(to_json(report), ov_out, out);
      log.record("overlap", started, ov_out.empty() ? std::vector<fs::path>{} : std::vector<fs::path>{ov_out},
                 report.overlap);
    } else if (summary_cmd->parsed()) {
      const auto started = Clock::now();
      const auto summary = corpus_summary(read_parallel(su_src, su_trg));
      emit_report(to_json(summary), su_out, out);
      log.record("summary", started, su_out.empty() ? std::vector<fs::path>{} : std::vector<fs::path>{su_out},
                 summary.pairs);
    } else if (filter_cmd->parsed()) {
      if (std::isnan(fi_ratio) || fi_ratio < 1.0) throw InvalidConfig("--max-ratio must be >= 1");
      const auto src = with_suffix(fi_out, ".src");
      const auto trg = with_suffix(fi_out, ".trg");
      reject_overwrite({fi_src, fi_trg}, {src, trg});
      const auto started = Clock::now();
      const auto filtered = filter_corpus(read_parallel(fi_src, fi_trg), fi_ratio, !fi_no_dedup);
      write_parallel(filtered, src, trg);
      log.record("filter", started, {src, trg}, filtered.size());
    }
  } catch (const UsageError& e) {
    err << "synthpara: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidConfig& e) {
    err << "synthpara: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "synthpara: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace synthpara::cli
