#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "synthpara/corpus.hpp"

namespace synthpara {

struct VocabOverlapReport {
  std::size_t v_pt = 0;
  std::size_t v_ft = 0;
  std::size_t overlap = 0;
  std::string label;
};

VocabOverlapReport vocab_overlap(const std::vector<Tokens>& pretrain,
                                 const std::vector<Tokens>& finetune, std::string label = {});
// Files are read as whitespace-tokenized text; a file without tokens is an error.
VocabOverlapReport vocab_overlap(const std::filesystem::path& pretrain_path,
                                 const std::filesystem::path& finetune_path,
                                 std::string label = {});

struct SideSummary {
  std::size_t tokens = 0;
  std::size_t types = 0;
  double mean_length = 0.0;
  double stddev_length = 0.0;  // population
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::map<std::size_t, std::size_t> length_histogram;
};

struct CorpusSummary {
  std::size_t pairs = 0;
  SideSummary source;
  SideSummary target;
};

CorpusSummary corpus_summary(const ParallelCorpus& corpus);

nlohmann::json to_json(const VocabOverlapReport& report);
nlohmann::json to_json(const CorpusSummary& summary);

}  // namespace synthpara
