// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "oracles/brute_force_phrases.hpp"
#include "synthpara/alignment.hpp"
#include "synthpara/corpus.hpp"
#include "synthpara/obfuscation.hpp"
#include "synthpara/phrase.hpp"
#include "synthpara/synth_tasks.hpp"
#include "synthpara/toxicity.hpp"

namespace fs = std::filesystem;
using namespace synthpara;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Scratch {
 public:
  Scratch() {
    path_ = fs::temp_directory_path() /
            ("synthpara_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "synthpara");
  std::ostringstream o;
  std::ostringstream e;
  const int code = cli::run(args, o, e);
  if (code != 0) {
    std::string cmd;
    for (const auto& a : args) cmd += a + " ";
    throw std::runtime_error("`" + cmd + "` exited " + std::to_string(code) + ": " + e.str());
  }
  if (out) *out = o.str();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Zipf-like natural-language stand-in: 40,000 source tokens over a 3,000-word
// vocabulary, target side a noisy word-for-word rendering.
ParallelCorpus zipf_corpus(std::size_t source_tokens) {
  RandomSource rng(2024, 99);
  std::vector<double> cumulative;
  double total = 0.0;
  for (int rank = 1; rank <= 3000; ++rank) cumulative.push_back(total += 1.0 / rank);
  auto draw = [&] {
    const double u = rng.uniform01() * total;
    return static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                    cumulative.begin());
  };
  ParallelCorpus corpus;
  std::size_t emitted = 0;
  while (emitted < source_tokens) {
    SentencePair p;
    const std::size_t len = std::min<std::size_t>(3 + rng.uniform_below(20), source_tokens - emitted);
    for (std::size_t k = 0; k < len; ++k) {
      const auto w = draw();
      p.source.push_back("Wort" + std::to_string(w));
      p.target.push_back("word" + std::to_string(w));
      if (rng.bernoulli(0.1)) p.target.push_back("the");
    }
    emitted += len;
    corpus.pairs.push_back(std::move(p));
  }
  return corpus;
}

struct ObfuscationRuns {
  ParallelCorpus input;
  std::map<std::string, ParallelCorpus> outputs;  // keyed by ratio text
  std::string input_src_bytes;
  std::string input_trg_bytes;
  std::map<std::string, std::pair<std::string, std::string>> output_bytes;
  double seconds = 0.0;
};

const std::vector<std::string> kRatios{"0", "0.25", "0.5", "0.75", "1"};

ObfuscationRuns run_obfuscation(const Scratch& dir) {
  ObfuscationRuns runs;
  runs.input = zipf_corpus(40000);
  write_parallel(runs.input, dir / "ob.src", dir / "ob.trg");
  runs.input_src_bytes = slurp(dir / "ob.src");
  runs.input_trg_bytes = slurp(dir / "ob.trg");
  const auto start = std::chrono::steady_clock::now();
  for (const auto& r : kRatios) {
    run_cli({"--seed", "17", "obfuscate", "--src", (dir / "ob.src").string(), "--trg",
             (dir / "ob.trg").string(), "--ratio", r, "--out", (dir / ("ob_" + r)).string()});
  }
  runs.seconds = seconds_since(start);
  for (const auto& r : kRatios) {
    const auto prefix = dir / ("ob_" + r);
    runs.outputs[r] = read_parallel(prefix.string() + ".src", prefix.string() + ".trg");
    runs.output_bytes[r] = {slurp(prefix.string() + ".src"), slurp(prefix.string() + ".trg")};
  }
  return runs;
}

Outcome ac1(const ObfuscationRuns& runs) {
  Outcome o;
  std::size_t total = 0;
  for (const auto& p : runs.input.pairs) total += p.source.size() + p.target.size();
  for (const auto& r : kRatios) {
    const auto& out = runs.outputs.at(r);
    std::size_t replaced = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t k = 0; k < out.pairs[i].source.size(); ++k) {
        replaced += out.pairs[i].source[k] != runs.input.pairs[i].source[k];
      }
      for (std::size_t k = 0; k < out.pairs[i].target.size(); ++k) {
        replaced += out.pairs[i].target[k] != runs.input.pairs[i].target[k];
      }
    }
    const double frac = static_cast<double>(replaced) / static_cast<double>(total);
    if (std::abs(frac - std::stod(r)) > 0.02) o.ok = false;
    o.detail += "R=" + r + ":" + fmt(frac) + " ";
  }
  const bool r0_identical = runs.output_bytes.at("0").first == runs.input_src_bytes &&
                            runs.output_bytes.at("0").second == runs.input_trg_bytes;
  std::unordered_set<std::string> vocab;
  for (const auto& p : runs.input.pairs) {
    vocab.insert(p.source.begin(), p.source.end());
    vocab.insert(p.target.begin(), p.target.end());
  }
  std::size_t shared = 0;
  std::unordered_set<std::string> r1_types;
  for (const auto& p : runs.outputs.at("1").pairs) {
    r1_types.insert(p.source.begin(), p.source.end());
    r1_types.insert(p.target.begin(), p.target.end());
  }
  for (const auto& t : r1_types) shared += vocab.contains(t);
  o.ok = o.ok && r0_identical && shared == 0 && runs.seconds < 5.0;
  o.detail += "| R=0 byte-identical=" + std::string(r0_identical ? "yes" : "no") +
              " | R=1 shared types=" + std::to_string(shared) + " | " + std::to_string(total) +
              " tokens | " + fmt(runs.seconds, 2) + "s (< 5s)";
  return o;
}

Outcome ac2(const ObfuscationRuns& runs, const Scratch& dir) {
  std::size_t violations = 0;
  std::size_t checked = 0;
  for (const auto& r : kRatios) {
    const auto prefix = (dir / ("ob_" + r)).string();
    const auto src_map = read_word_map(prefix + ".map.src.tsv");
    const auto trg_map = read_word_map(prefix + ".map.trg.tsv");
    for (const auto* side : {&src_map, &trg_map}) {
      std::unordered_set<std::string> tokens;
      for (const auto& [w, t] : *side) violations += !tokens.insert(t).second;
    }
    const auto& out = runs.outputs.at(r);
    for (int s = 0; s < 2; ++s) {
      std::unordered_map<std::string, std::string> word_to_token;
      std::unordered_map<std::string, std::string> token_to_word;
      for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& in_side = s == 0 ? runs.input.pairs[i].source : runs.input.pairs[i].target;
        const auto& out_side = s == 0 ? out.pairs[i].source : out.pairs[i].target;
        if (in_side.size() != out_side.size()) {
          ++violations;
          continue;
        }
        for (std::size_t k = 0; k < in_side.size(); ++k) {
          if (in_side[k] == out_side[k]) continue;
          ++checked;
          auto [it, fresh] = word_to_token.try_emplace(in_side[k], out_side[k]);
          if (!fresh && it->second != out_side[k]) ++violations;
          auto [jt, fresh2] = token_to_word.try_emplace(out_side[k], in_side[k]);
          if (!fresh2 && jt->second != in_side[k]) ++violations;
          const auto& map = s == 0 ? src_map : trg_map;
          if (map.at(in_side[k]) != out_side[k]) ++violations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(checked) + " replaced occurrences checked, " +
                               std::to_string(violations) + " violations"};
}

ParallelCorpus gen_via_cli(const Scratch& dir, const std::string& name,
                           std::vector<std::string> args) {
  const auto prefix = (dir / name).string();
  args.insert(args.end(), {"--out", prefix});
  run_cli(args);
  return read_parallel(prefix + ".src", prefix + ".trg");
}

Tokens upper(const Tokens& t) {
  Tokens out;
  for (const auto& w : t) out.push_back(to_upper_ascii(w));
  return out;
}

Outcome ac3(const Scratch& dir) {
  const auto r0 = gen_via_cli(dir, "r0", {"--seed", "3", "gen", "pb-trees", "--pairs", "1000", "--r", "0"});
  const auto r1 = gen_via_cli(dir, "r1", {"--seed", "3", "gen", "pb-trees", "--pairs", "1000", "--r", "1"});
  std::size_t ok0 = 0;
  std::size_t ok1 = 0;
  for (const auto& p : r0.pairs) ok0 += p.target == upper(p.source);
  for (const auto& p : r1.pairs) {
    auto rev = upper(p.source);
    std::reverse(rev.begin(), rev.end());
    ok1 += p.target == rev;
  }
  return {ok0 == 1000 && ok1 == 1000 && r0.size() == 1000 && r1.size() == 1000,
          "r=0 exact " + std::to_string(ok0) + "/1000, r=1 reversed " + std::to_string(ok1) + "/1000"};
}

Outcome ac4(const Scratch& dir) {
  const auto deriv = (dir / "ac4.deriv").string();
  const auto corpus = gen_via_cli(
      dir, "ac4", {"--seed", "4", "gen", "pb-trees", "--pairs", "10000", "--r", "0.15", "--derivations", deriv});
  const auto lines = read_lines(deriv);
  if (lines.size() != corpus.size()) return {false, "sidecar line count mismatch"};
  std::size_t contiguous = 0;
  std::size_t internal = 0;
  std::size_t swapped = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto d = parse_derivation(lines[i]);
    contiguous += check_span_contiguity(corpus.pairs[i], d);
    internal += d.tree.internal_count();
    swapped += d.tree.swapped_count();
  }
  const double frac = static_cast<double>(swapped) / static_cast<double>(internal);
  return {contiguous == corpus.size() && corpus.size() == 10000 && frac >= 0.14 && frac <= 0.16,
          "contiguity " + std::to_string(contiguous) + "/" + std::to_string(corpus.size()) +
              ", swapped " + std::to_string(swapped) + "/" + std::to_string(internal) + " = " +
              fmt(frac) + " (in [0.14,0.16])"};
}

bool is_subsequence(const Tokens& sub, const Tokens& seq) {
  std::size_t k = 0;
  for (const auto& t : seq) {
    if (k < sub.size() && sub[k] == t) ++k;
  }
  return k == sub.size();
}

Outcome ac5(const Scratch& dir) {
  const auto exact = gen_via_cli(dir, "cm0", {"--seed", "5", "gen", "case-map", "--pairs", "10000"});
  std::size_t exact_ok = 0;
  for (const auto& p : exact.pairs) exact_ok += p.target == upper(p.source);

  const auto vocab = SyntheticVocabulary::make();
  CaseMapConfig config;
  config.d_s = 0.15;
  config.d_t = 0.15;
  config.rng = RandomSource(5, 0);
  std::vector<std::vector<std::uint32_t>> underlying;
  const auto corpus = gen_case_map(vocab, 120000, config, &underlying);
  std::size_t total = 0;
  std::size_t kept_s = 0;
  std::size_t kept_t = 0;
  std::size_t subseq_ok = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    total += underlying[i].size();
    kept_s += corpus.pairs[i].source.size();
    kept_t += corpus.pairs[i].target.size();
    if (i < 10000) {
      Tokens lo;
      Tokens up;
      for (auto id : underlying[i]) {
        lo.push_back(vocab.source[id]);
        up.push_back(vocab.target[id]);
      }
      subseq_ok += is_subsequence(corpus.pairs[i].source, lo) && is_subsequence(corpus.pairs[i].target, up);
    }
  }
  // Same configuration through the CLI must give the same pairs.
  const auto via_cli = gen_via_cli(dir, "cm15", {"--seed", "5", "gen", "case-map", "--pairs", "10000",
                                                 "--ds", "0.15", "--dt", "0.15"});
  const bool cli_match = std::equal(via_cli.pairs.begin(), via_cli.pairs.end(), corpus.pairs.begin());
  const double ds = 1.0 - static_cast<double>(kept_s) / static_cast<double>(total);
  const double dt = 1.0 - static_cast<double>(kept_t) / static_cast<double>(total);
  return {exact_ok == 10000 && total >= 1000000 && std::abs(ds - 0.15) <= 0.005 &&
              std::abs(dt - 0.15) <= 0.005 && subseq_ok == 10000 && cli_match,
          "d=0 exact " + std::to_string(exact_ok) + "/10000; d=0.15 over " + std::to_string(total) +
              " tokens: d_s=" + fmt(ds) + " d_t=" + fmt(dt) + "; subsequence " +
              std::to_string(subseq_ok) + "/10000; CLI agrees=" + (cli_match ? "yes" : "no")};
}

Outcome ac6() {
  RandomSource rng(6);
  std::size_t agree = 0;
  std::size_t cases = 0;
  for (bool extend : {true, false}) {
    for (int c = 0; c < 200; ++c) {
      const auto slen = 1 + rng.uniform_below(8);
      const auto tlen = 1 + rng.uniform_below(8);
      const double density = 0.05 + 0.35 * rng.uniform01();
      AlignmentLinks links;
      for (std::uint32_t i = 0; i < slen; ++i) {
        for (std::uint32_t j = 0; j < tlen; ++j) {
          if (rng.bernoulli(density)) links.push_back({i, j});
        }
      }
      const ExtractionOptions opts{7, extend};
      ++cases;
      agree += extract_spans(slen, tlen, links, opts) ==
               oracle::brute_force_spans(slen, tlen, links, 7, extend);
    }
  }
  return {agree == cases, std::to_string(agree) + "/" + std::to_string(cases) +
                              " instances equal the brute-force span enumeration (both toggle states)"};
}

Outcome ac7() {
  ParallelCorpus toy;
  toy.pairs.push_back({{"la", "maison"}, {"the", "house"}});
  toy.pairs.push_back({{"la"}, {"the"}});
  const auto table = train_ibm1(toy, 10);
  const double t_the = table.prob("la", "the");
  const double t_house = table.prob("maison", "house");

  RandomSource rng(7);
  ParallelCorpus corpus;
  for (int i = 0; i < 1000; ++i) {
    SentencePair p;
    const auto ls = 1 + rng.uniform_below(15);
    const auto lt = 1 + rng.uniform_below(15);
    for (std::uint64_t k = 0; k < ls; ++k) p.source.push_back("f" + std::to_string(rng.uniform_below(300)));
    for (std::uint64_t k = 0; k < lt; ++k) p.target.push_back("e" + std::to_string(rng.uniform_below(300)));
    corpus.pairs.push_back(std::move(p));
  }
  Ibm1Trainer trainer(corpus);
  double worst_norm = trainer.table().max_normalization_error();
  double prev = trainer.log_likelihood();
  double worst_drop = 0.0;
  for (int it = 0; it < 20; ++it) {
    trainer.em_step();
    const double ll = trainer.log_likelihood();
    worst_drop = std::max(worst_drop, prev - ll);
    prev = ll;
    worst_norm = std::max(worst_norm, trainer.table().max_normalization_error());
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "; 20 iterations: worst LL decrease %.3g, worst normalization error %.3g",
                worst_drop, worst_norm);
  return {t_the > 0.9 && t_house > 0.9 && worst_drop <= 1e-9 && worst_norm <= 1e-6,
          "t(the|la)=" + fmt(t_the) + " t(house|maison)=" + fmt(t_house) + buf};
}

Outcome ac8() {
  RandomSource rng(8);
  std::size_t violations = 0;
  for (int c = 0; c < 500; ++c) {
    const double density = 0.05 + 0.3 * rng.uniform01();
    AlignmentLinks f;
    AlignmentLinks r;
    for (std::uint32_t i = 0; i < 6; ++i) {
      for (std::uint32_t j = 0; j < 6; ++j) {
        if (rng.bernoulli(density)) f.push_back({i, j});
        if (rng.bernoulli(density)) r.push_back({i, j});
      }
    }
    const auto inter = symmetrize(f, r, Symmetrization::kIntersection);
    const auto uni = symmetrize(f, r, Symmetrization::kUnion);
    const auto g = symmetrize(f, r, Symmetrization::kGrowDiagFinalAnd);
    violations += !std::includes(g.begin(), g.end(), inter.begin(), inter.end());
    violations += !std::includes(uni.begin(), uni.end(), g.begin(), g.end());
  }
  return {violations == 0, "500 random 6x6 cases, " + std::to_string(violations) + " violations"};
}

Outcome ac9() {
  const auto vocab = SyntheticVocabulary::make();
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < vocab.size(); ++i) index.emplace(vocab.source[i], i);
  std::vector<double> counts(vocab.size(), 0.0);
  std::unordered_set<std::string> types;
  std::size_t tokens = 0;
  std::size_t identity_violations = 0;
  const RandomSource rng(9, 0);
  const std::uint64_t total_pairs = 2000000;
  for (std::uint64_t first = 0; first < total_pairs; first += 100000) {
    for (const auto& p : gen_identity_range(vocab, first, 100000, {}, rng)) {
      identity_violations += p.source != p.target;
      for (const auto& t : p.source) {
        const auto it = index.find(t);
        if (it == index.end()) {
          types.insert(t);  // would be an out-of-vocabulary type
          continue;
        }
        counts[it->second] += 1.0;
        ++tokens;
      }
    }
  }
  std::size_t present = types.size();
  for (const double c : counts) present += c > 0.0;
  const double expected = static_cast<double>(tokens) / static_cast<double>(vocab.size());
  double stat = 0.0;
  for (const double c : counts) stat += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(vocab.size() - 1));
  const double critical = boost::math::quantile(dist, 0.99);
  return {present <= 17576 && present > 17000 && stat < critical && identity_violations == 0,
          std::to_string(present) + " distinct source types (<= 17576, > 17000) over " +
              std::to_string(tokens) + " tokens; chi2=" + fmt(stat, 1) + " < " + fmt(critical, 1) +
              " (alpha=0.01)"};
}

Outcome ac10(const Scratch& dir) {
  std::string src;
  std::string hyp;
  for (int i = 0; i < 100; ++i) {
    std::string s = "ein satz " + std::to_string(i);
    std::string t = "a sentence " + std::to_string(i);
    if (i < 5) t += " badword";                      // hallucinated
    if (i >= 5 && i < 8) {                           // both sides toxic
      s += " schimpfwort";
      t += " BadWord";
    }
    if (i >= 8 && i < 10) s += " Schimpfwort";       // source only
    src += s + "\n";
    hyp += t + "\n";
  }
  spit(dir / "tx.src", src);
  spit(dir / "tx.hyp", hyp);
  spit(dir / "tx.srclist", "schimpfwort\n");
  spit(dir / "tx.trglist", "badword\nbad word\n");
  std::string out;
  run_cli({"toxicity", "--src", (dir / "tx.src").string(), "--hyp", (dir / "tx.hyp").string(),
           "--src-list", (dir / "tx.srclist").string(), "--trg-list", (dir / "tx.trglist").string()},
          &out);
  const auto report = nlohmann::json::parse(out);
  const auto hallucinated = report.at("hallucinated").get<std::size_t>();
  const double rate = report.at("rate").get<double>();

  const auto list = make_toxicity_list({"bad word"}, "en");
  const bool modes =
      is_toxic(tokenize("a badword here"), list, MatchMode::kToken).empty() &&
      is_toxic(tokenize("such bad wording"), list, MatchMode::kToken).empty() &&
      is_toxic(tokenize("such bad wording"), list, MatchMode::kSubstring).size() == 1 &&
      is_toxic(tokenize("a bad word"), list, MatchMode::kToken).size() == 1;
  return {hallucinated == 5 && std::abs(rate - 0.05) < 1e-12 &&
              report.at("source_toxic").get<int>() == 5 && report.at("target_toxic").get<int>() == 8 &&
              modes,
          "hallucinated=" + std::to_string(hallucinated) + " rate=" + fmt(rate, 3) +
              " source_toxic=" + report.at("source_toxic").dump() + " target_toxic=" +
              report.at("target_toxic").dump() + "; mode fixtures " + (modes ? "distinguish" : "FAIL")};
}

Outcome ac11(const Scratch& dir) {
  spit(dir / "d.src", "la maison bleue\nla maison\nla fleur\nune fleur bleue\n");
  spit(dir / "d.trg", "the blue house\nthe house\nthe flower\na blue flower\n");
  const std::vector<std::vector<std::string>> commands{
      {"gen", "identity", "--pairs", "5000"},
      {"gen", "case-map", "--pairs", "5000", "--ds", "0.15", "--dt", "0.1"},
      {"gen", "pb-trees", "--pairs", "5000", "--derivations", "@DERIV"},
      {"gen", "phrase-cat", "--pairs", "5000", "--train-src", (dir / "d.src").string(),
       "--train-trg", (dir / "d.trg").string()},
      {"obfuscate", "--src", (dir / "d.src").string(), "--trg", (dir / "d.trg").string(),
       "--ratio", "0.5"},
  };
  std::size_t checks = 0;
  std::size_t failures = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::vector<std::string> seen;
    for (const std::string variant : {"a1", "b1", "c4"}) {
      const auto prefix = (dir / ("det" + std::to_string(c) + variant)).string();
      auto args = commands[c];
      for (auto& a : args) {
        if (a == "@DERIV") a = prefix + ".deriv";
      }
      args.insert(args.begin(), {"--seed", "11", "--shards", variant.substr(1)});
      args.insert(args.end(), {"--out", prefix});
      run_cli(args);
      std::string bytes = slurp(prefix + ".src") + "\x1f" + slurp(prefix + ".trg");
      if (fs::exists(prefix + ".deriv")) bytes += "\x1f" + slurp(prefix + ".deriv");
      seen.push_back(std::move(bytes));
    }
    checks += 2;
    failures += seen[0] != seen[1];  // rerun
    failures += seen[0] != seen[2];  // 1 vs 4 shards
  }
  return {failures == 0, std::to_string(commands.size()) + " generators, " + std::to_string(checks) +
                             " comparisons (rerun and 1-vs-4 shards), " + std::to_string(failures) +
                             " differences"};
}

Outcome ac12(const Scratch& dir) {
  auto timed = [&](const std::string& shards, const std::string& name) {
    const auto start = std::chrono::steady_clock::now();
    run_cli({"--seed", "12", "--shards", shards, "gen", "pb-trees", "--pairs", "2000000", "--out",
             (dir / name).string()});
    return seconds_since(start);
  };
  const double single = timed("1", "tp1");
  const double sharded = timed("8", "tp8");
  const bool same = slurp(dir / "tp1.src") == slurp(dir / "tp8.src") &&
                    slurp(dir / "tp1.trg") == slurp(dir / "tp8.trg");
  const auto lines = read_lines(dir / "tp8.trg").size();
  return {single < 300.0 && sharded < 90.0 && same && lines == 2000000,
          "2M pairs: 1 shard " + fmt(single, 1) + "s (< 300s), 8 shards " + fmt(sharded, 1) +
              "s (< 90s), outputs identical=" + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  Scratch dir;
  int failed = 0;
  auto report = [&](const std::string& id, const std::string& name, const std::function<Outcome()>& fn) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << id << " " << name << ": " << o.detail << " ["
              << fmt(seconds_since(start), 2) << "s]" << std::endl;
  };

  ObfuscationRuns runs;
  report("AC1", "obfuscation ratio law", [&] {
    runs = run_obfuscation(dir);
    return ac1(runs);
  });
  report("AC2", "obfuscation consistency/injectivity", [&] { return ac2(runs, dir); });
  report("AC3", "pb-trees boundary permutations", [&] { return ac3(dir); });
  report("AC4", "pb-trees span contiguity", [&] { return ac4(dir); });
  report("AC5", "case-map deletions", [&] { return ac5(dir); });
  report("AC6", "phrase extraction oracle", [] { return ac6(); });
  report("AC7", "IBM Model 1", [] { return ac7(); });
  report("AC8", "symmetrization sandwich", [] { return ac8(); });
  report("AC9", "synthetic vocabulary", [] { return ac9(); });
  report("AC10", "toxicity counting", [&] { return ac10(dir); });
  report("AC11", "determinism", [&] { return ac11(dir); });
  report("AC12", "pb-trees throughput", [&] { return ac12(dir); });

  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
