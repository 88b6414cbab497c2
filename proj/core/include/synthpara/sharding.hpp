#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace synthpara {

struct ShardRange {
  unsigned shard = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

// Shard k of n covers a contiguous block of [0, total); earlier shards take
// the remainder items. Concatenating shard outputs in shard order therefore
// reproduces global item order.
inline std::vector<ShardRange> split_shards(std::uint64_t total, unsigned shards) {
  shards = std::max(1u, shards);
  std::vector<ShardRange> ranges;
  ranges.reserve(shards);
  const std::uint64_t base = total / shards;
  const std::uint64_t extra = total % shards;
  std::uint64_t begin = 0;
  for (unsigned k = 0; k < shards; ++k) {
    const std::uint64_t len = base + (k < extra ? 1 : 0);
    ranges.push_back({k, begin, begin + len});
    begin += len;
  }
  return ranges;
}

// Runs fn(range) once per shard, one thread each (inline when shards == 1).
// The first exception by shard index is rethrown after all threads join.
template <class Fn>
void for_each_shard(std::uint64_t total, unsigned shards, Fn&& fn) {
  const auto ranges = split_shards(total, shards);
  if (ranges.size() == 1) {
    fn(ranges.front());
    return;
  }
  std::vector<std::exception_ptr> errors(ranges.size());
  {
    std::vector<std::jthread> workers;
    workers.reserve(ranges.size());
    for (std::size_t k = 0; k < ranges.size(); ++k) {
      workers.emplace_back([&, k] {
        try {
          fn(ranges[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace synthpara
