#include "synthpara/alignment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "synthpara/error.hpp"

namespace synthpara {
namespace {

std::uint32_t find_id(const WordIndex& index, std::string_view word) {
  auto it = index.find(word);
  return it == index.end() ? TranslationTable::kUnknown : it->second;
}

double scored(const TranslationTable& table, std::uint32_t f, std::uint32_t e) {
  if (f == TranslationTable::kUnknown || e == TranslationTable::kUnknown) {
    return kFloorProbability;
  }
  const auto& raw = table.raw();
  auto it = raw.find(TranslationTable::key(f, e));
  return it == raw.end() ? kFloorProbability : it->second;
}

AlignmentLinks align_forward(const SentencePair& pair, const TranslationTable& table) {
  std::vector<std::uint32_t> f_ids;
  f_ids.reserve(pair.source.size());
  for (const auto& f : pair.source) f_ids.push_back(table.source_id(f));

  AlignmentLinks links;
  for (std::size_t j = 0; j < pair.target.size(); ++j) {
    const std::uint32_t e = table.target_id(pair.target[j]);
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t i = 0; i < f_ids.size(); ++i) {
      const double p = scored(table, f_ids[i], e);
      if (p > best_p) {
        best_p = p;
        best = i;
      }
    }
    const double null_p = scored(table, TranslationTable::kNullId, e);
    if (f_ids.empty() || null_p > best_p) continue;
    links.push_back({static_cast<std::uint32_t>(best), static_cast<std::uint32_t>(j)});
  }
  normalize_links(links);
  return links;
}

bool parse_index(std::string_view text, std::uint32_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

void normalize_links(AlignmentLinks& links) {
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
}

// --- TranslationTable -------------------------------------------------------

TranslationTable::TranslationTable() {
  source_words_.emplace_back(kNullWord);
  source_index_.emplace(std::string(kNullWord), kNullId);
}

std::uint32_t TranslationTable::source_id(std::string_view f) const {
  return find_id(source_index_, f);
}

std::uint32_t TranslationTable::target_id(std::string_view e) const {
  return find_id(target_index_, e);
}

std::uint32_t TranslationTable::add_source(std::string_view f) {
  auto [it, inserted] =
      source_index_.try_emplace(std::string(f), static_cast<std::uint32_t>(source_words_.size()));
  if (inserted) source_words_.emplace_back(f);
  return it->second;
}

std::uint32_t TranslationTable::add_target(std::string_view e) {
  auto [it, inserted] =
      target_index_.try_emplace(std::string(e), static_cast<std::uint32_t>(target_words_.size()));
  if (inserted) target_words_.emplace_back(e);
  return it->second;
}

double TranslationTable::prob(std::string_view f, std::string_view e) const {
  const auto fid = source_id(f);
  const auto eid = target_id(e);
  if (fid == kUnknown || eid == kUnknown) return 0.0;
  return prob(fid, eid);
}

double TranslationTable::prob(std::uint32_t f, std::uint32_t e) const {
  auto it = probs_.find(key(f, e));
  return it == probs_.end() ? 0.0 : it->second;
}

bool TranslationTable::contains(std::uint32_t f, std::uint32_t e) const {
  return probs_.count(key(f, e)) != 0;
}

void TranslationTable::set(std::uint32_t f, std::uint32_t e, double p) {
  probs_[key(f, e)] = p;
}

double TranslationTable::max_normalization_error() const {
  std::vector<double> sums(source_words_.size(), 0.0);
  std::vector<bool> present(source_words_.size(), false);
  for (const auto& [k, p] : probs_) {
    const auto f = static_cast<std::uint32_t>(k >> 32);
    sums[f] += p;
    present[f] = true;
  }
  double worst = 0.0;
  for (std::size_t f = 0; f < sums.size(); ++f) {
    if (present[f]) worst = std::max(worst, std::abs(sums[f] - 1.0));
  }
  return worst;
}

// --- IBM Model 1 -------------------------------------------------------------

Ibm1Trainer::Ibm1Trainer(const ParallelCorpus& corpus) {
  if (corpus.empty()) throw Error("IBM Model 1 training needs a non-empty corpus");
  pairs_.reserve(corpus.size());
  for (const auto& pair : corpus.pairs) {
    EncodedPair enc;
    enc.source.reserve(pair.source.size());
    enc.target.reserve(pair.target.size());
    for (const auto& f : pair.source) enc.source.push_back(table_.add_source(f));
    for (const auto& e : pair.target) enc.target.push_back(table_.add_target(e));
    pairs_.push_back(std::move(enc));
  }

  // Uniform over the target words each source word co-occurs with.
  auto& probs = table_.raw();
  for (const auto& enc : pairs_) {
    for (const auto e : enc.target) {
      probs.try_emplace(TranslationTable::key(TranslationTable::kNullId, e), 0.0);
      for (const auto f : enc.source) probs.try_emplace(TranslationTable::key(f, e), 0.0);
    }
  }
  std::vector<std::size_t> fanout(table_.source_vocab_size(), 0);
  for (const auto& kv : probs) ++fanout[kv.first >> 32];
  for (auto& [k, p] : probs) p = 1.0 / static_cast<double>(fanout[k >> 32]);
}

double Ibm1Trainer::em_step() {
  auto& probs = table_.raw();
  std::unordered_map<std::uint64_t, double> counts;
  counts.reserve(probs.size());
  std::vector<double> totals(table_.source_vocab_size(), 0.0);
  std::vector<double*> column;
  double ll = 0.0;

  for (const auto& enc : pairs_) {
    const double log_norm = std::log(static_cast<double>(enc.source.size() + 1));
    for (const auto e : enc.target) {
      column.clear();
      column.push_back(&probs.at(TranslationTable::key(TranslationTable::kNullId, e)));
      for (const auto f : enc.source) column.push_back(&probs.at(TranslationTable::key(f, e)));
      double denom = 0.0;
      for (const double* p : column) denom += *p;
      ll += std::log(denom) - log_norm;
      if (denom <= 0.0) continue;

      auto credit = [&](std::uint32_t f, double p) {
        const double c = p / denom;
        counts[TranslationTable::key(f, e)] += c;
        totals[f] += c;
      };
      credit(TranslationTable::kNullId, *column[0]);
      for (std::size_t i = 0; i < enc.source.size(); ++i) credit(enc.source[i], *column[i + 1]);
    }
  }

  for (auto& [k, p] : probs) {
    const double total = totals[k >> 32];
    auto it = counts.find(k);
    p = (total > 0.0 && it != counts.end()) ? it->second / total : 0.0;
  }
  ++iterations_;
  return ll;
}

double Ibm1Trainer::log_likelihood() const {
  const auto& probs = table_.raw();
  double ll = 0.0;
  for (const auto& enc : pairs_) {
    const double log_norm = std::log(static_cast<double>(enc.source.size() + 1));
    for (const auto e : enc.target) {
      double denom = probs.at(TranslationTable::key(TranslationTable::kNullId, e));
      for (const auto f : enc.source) denom += probs.at(TranslationTable::key(f, e));
      ll += std::log(denom) - log_norm;
    }
  }
  return ll;
}

TranslationTable train_ibm1(const ParallelCorpus& corpus, int iterations) {
  if (iterations < 1) throw InvalidConfig("IBM Model 1 iterations must be >= 1");
  Ibm1Trainer trainer(corpus);
  for (int i = 0; i < iterations; ++i) trainer.em_step();
  return trainer.table();
}

ParallelCorpus reversed(const ParallelCorpus& corpus) {
  ParallelCorpus out;
  out.provenance = corpus.provenance;
  out.pairs.reserve(corpus.size());
  for (const auto& pair : corpus.pairs) out.pairs.push_back({pair.target, pair.source});
  return out;
}

// --- Viterbi & symmetrization -------------------------------------------------

AlignmentLinks viterbi_align(const SentencePair& pair, const TranslationTable& table,
                             Direction direction) {
  if (direction == Direction::kForward) return align_forward(pair, table);
  AlignmentLinks links = align_forward({pair.target, pair.source}, table);
  for (auto& link : links) std::swap(link.source, link.target);
  normalize_links(links);
  return links;
}

Symmetrization parse_symmetrization(std::string_view name) {
  if (name == "intersection") return Symmetrization::kIntersection;
  if (name == "union") return Symmetrization::kUnion;
  if (name == "grow-diag-final-and" || name == "gdfa") return Symmetrization::kGrowDiagFinalAnd;
  throw InvalidConfig("unknown symmetrization heuristic '" + std::string(name) +
                      "' (expected intersection, union or grow-diag-final-and)");
}

std::string_view to_string(Symmetrization heuristic) {
  switch (heuristic) {
    case Symmetrization::kIntersection: return "intersection";
    case Symmetrization::kUnion: return "union";
    case Symmetrization::kGrowDiagFinalAnd: return "grow-diag-final-and";
  }
  return "?";
}

AlignmentLinks symmetrize(const AlignmentLinks& forward, const AlignmentLinks& reverse,
                          Symmetrization heuristic) {
  AlignmentLinks fwd = forward;
  AlignmentLinks rev = reverse;
  normalize_links(fwd);
  normalize_links(rev);

  AlignmentLinks inter;
  std::set_intersection(fwd.begin(), fwd.end(), rev.begin(), rev.end(),
                        std::back_inserter(inter));
  AlignmentLinks uni;
  std::set_union(fwd.begin(), fwd.end(), rev.begin(), rev.end(), std::back_inserter(uni));
  if (heuristic == Symmetrization::kIntersection) return inter;
  if (heuristic == Symmetrization::kUnion) return uni;
  if (uni.empty()) return inter;

  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& l : uni) {
    rows = std::max<std::size_t>(rows, l.source + 1);
    cols = std::max<std::size_t>(cols, l.target + 1);
  }
  auto grid = [cols](std::size_t i, std::size_t j) { return i * cols + j; };
  std::vector<char> in_union(rows * cols, 0);
  std::vector<char> in_fwd(rows * cols, 0);
  std::vector<char> in_rev(rows * cols, 0);
  std::vector<char> aligned(rows * cols, 0);
  std::vector<char> row_covered(rows, 0);
  std::vector<char> col_covered(cols, 0);
  for (const auto& l : uni) in_union[grid(l.source, l.target)] = 1;
  for (const auto& l : fwd) in_fwd[grid(l.source, l.target)] = 1;
  for (const auto& l : rev) in_rev[grid(l.source, l.target)] = 1;
  auto add = [&](std::size_t i, std::size_t j) {
    aligned[grid(i, j)] = 1;
    row_covered[i] = 1;
    col_covered[j] = 1;
  };
  for (const auto& l : inter) add(l.source, l.target);

  static constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                           {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  // grow-diag
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (!aligned[grid(i, j)]) continue;
        for (const auto& d : kNeighbors) {
          const long ni = static_cast<long>(i) + d[0];
          const long nj = static_cast<long>(j) + d[1];
          if (ni < 0 || nj < 0 || ni >= static_cast<long>(rows) || nj >= static_cast<long>(cols))
            continue;
          const auto u = static_cast<std::size_t>(ni);
          const auto v = static_cast<std::size_t>(nj);
          if (aligned[grid(u, v)] || !in_union[grid(u, v)]) continue;
          if (!row_covered[u] || !col_covered[v]) {
            add(u, v);
            grew = true;
          }
        }
      }
    }
  }
  // final-and, forward then reverse
  for (const auto* direction : {&in_fwd, &in_rev}) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if ((*direction)[grid(i, j)] && !row_covered[i] && !col_covered[j]) add(i, j);
      }
    }
  }

  AlignmentLinks out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (aligned[grid(i, j)]) {
        out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      }
    }
  }
  return out;
}

// --- Persistence ------------------------------------------------------------

std::string format_pharaoh(const AlignmentLinks& links) {
  std::string out;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (k) out.push_back(' ');
    out += std::to_string(links[k].source);
    out.push_back('-');
    out += std::to_string(links[k].target);
  }
  return out;
}

AlignmentLinks parse_pharaoh(std::string_view line) {
  AlignmentLinks links;
  for (const auto& token : tokenize(line)) {
    const auto dash = token.find('-');
    Link link;
    if (dash == std::string::npos ||
        !parse_index(std::string_view(token).substr(0, dash), link.source) ||
        !parse_index(std::string_view(token).substr(dash + 1), link.target)) {
      throw Error("malformed alignment link '" + token + "' (expected i-j)");
    }
    links.push_back(link);
  }
  normalize_links(links);
  return links;
}

std::vector<AlignmentLinks> read_alignments(const std::filesystem::path& path) {
  std::vector<AlignmentLinks> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    try {
      out.push_back(parse_pharaoh(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_alignments(const std::vector<AlignmentLinks>& alignments,
                      const std::filesystem::path& path) {
  std::string text;
  for (const auto& links : alignments) {
    text += format_pharaoh(links);
    text.push_back('\n');
  }
  write_text(path, text);
}

void write_table(const TranslationTable& table, const std::filesystem::path& path) {
  struct Row {
    const std::string* f;
    const std::string* e;
    double p;
  };
  std::vector<Row> rows;
  rows.reserve(table.entry_count());
  for (const auto& [k, p] : table.raw()) {
    rows.push_back({&table.source_word(static_cast<std::uint32_t>(k >> 32)),
                    &table.target_word(static_cast<std::uint32_t>(k & 0xffffffffu)), p});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (*a.f != *b.f) return *a.f < *b.f;
    return *a.e < *b.e;
  });
  std::string text;
  char buf[32];
  for (const auto& r : rows) {
    text += *r.f;
    text.push_back('\t');
    text += *r.e;
    text.push_back('\t');
    std::snprintf(buf, sizeof buf, "%.17g", r.p);
    text += buf;
    text.push_back('\n');
  }
  write_text(path, text);
}

TranslationTable read_table(const std::filesystem::path& path) {
  TranslationTable table;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected f<TAB>e<TAB>prob");
    }
    const auto f = table.add_source(std::string_view(line).substr(0, t1));
    const auto e = table.add_target(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
    double p = 0.0;
    const char* begin = line.data() + t2 + 1;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, p);
    if (ec != std::errc() || ptr != end) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": bad probability");
    }
    table.set(f, e, p);
  }
  return table;
}

}  // namespace synthpara
