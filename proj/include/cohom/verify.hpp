#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cohom/cochain.hpp"
#include "cohom/cohomology.hpp"

namespace cohom {

/// Outcome of a sweep over n-tuples of a group (or of a listed subset).
struct SweepReport {
  std::string mode;  // "exhaustive" or "sampled"
  std::uint64_t seed = 0;
  std::uint64_t checked = 0;
  bool ok = true;
  Tuple witness;
};

inline constexpr std::uint64_t kSweepBlock = 1 << 16;

/// Runs `check(tuple) -> bool` over all n-tuples drawn from `elements`
/// (exhaustive when there are at most limits.exhaustive_threshold of them),
/// or over limits.samples uniform tuples. Sampled block j draws from
/// mt19937_64(seed + j), so the result does not depend on the thread count.
/// `make_checker()` is called once per worker.
template <class Factory>
SweepReport sweep_tuples(const std::vector<GroupElement>& elements, std::size_t n, const Limits& limits,
                         std::uint64_t seed, unsigned threads, Factory&& make_checker) {
  SweepReport rep;
  rep.seed = seed;
  const std::uint64_t base = elements.size();
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < n && !overflow; ++i) overflow = __builtin_mul_overflow(total, base, &total);
  const bool exhaustive = !overflow && total <= limits.exhaustive_threshold;
  rep.mode = exhaustive ? "exhaustive" : "sampled";
  const std::uint64_t count = exhaustive ? total : limits.samples;
  if (count == 0 || base == 0) return rep;
  const std::uint64_t blocks = (count + kSweepBlock - 1) / kSweepBlock;

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_fail{std::numeric_limits<std::uint64_t>::max()};
  std::vector<Tuple> fail_tuple(blocks);
  std::vector<std::uint64_t> fail_pos(blocks, std::numeric_limits<std::uint64_t>::max());

  auto worker = [&] {
    auto check = make_checker();
    Tuple t(n);
    for (;;) {
      const std::uint64_t blk = next.fetch_add(1);
      if (blk >= blocks || blk > first_fail.load()) return;
      const std::uint64_t lo = blk * kSweepBlock, hi = std::min(count, lo + kSweepBlock);
      std::mt19937_64 rng(seed + blk);
      for (std::uint64_t pos = lo; pos < hi; ++pos) {
        if (exhaustive) {
          std::uint64_t x = pos;
          for (std::size_t i = n; i-- > 0;) {
            t[i] = elements[x % base];
            x /= base;
          }
        } else {
          for (std::size_t i = 0; i < n; ++i) t[i] = elements[rng() % base];
        }
        if (!check(TupleView(t))) {
          fail_pos[blk] = pos;
          fail_tuple[blk] = t;
          std::uint64_t cur = first_fail.load();
          while (blk < cur && !first_fail.compare_exchange_weak(cur, blk)) {
          }
          break;
        }
      }
    }
  };
  const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const std::uint64_t ff = first_fail.load();
  if (ff != std::numeric_limits<std::uint64_t>::max()) {
    rep.ok = false;
    rep.witness = fail_tuple[ff];
    rep.checked = fail_pos[ff] + 1;
  } else {
    rep.checked = count;
  }
  return rep;
}

inline std::vector<GroupElement> all_elements(const FiniteGroup& g) {
  std::vector<GroupElement> v(g.order());
  for (GroupElement x = 0; x < g.order(); ++x) v[x] = x;
  return v;
}

}  // namespace cohom
