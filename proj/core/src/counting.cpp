#include "bh/counting.hpp"

#include "bh/error.hpp"
#include "bh/modular.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace bh {

namespace {

constexpr std::uint64_t kMaxPresieveBound = UINT32_MAX;

struct Tally {
  std::vector<std::uint64_t> buckets;
  bool probable = false;
};

// Tests every f_i(n) for primality, short-circuiting on the first failure.
bool all_prime(const PolySystem& system, std::uint64_t n, bool& probable) {
  for (const auto& f : system.polys) {
    const PrimalityResult r = is_prime(evaluate(f, static_cast<std::int64_t>(n)));
    if (!r.prime) return false;
    if (r.certainty == Certainty::probable) probable = true;
  }
  return true;
}

void validate(const PolySystem& system, std::span<const std::uint64_t> checkpoints, const CountConfig& config) {
  if (!system.admissible) {
    throw Error(ErrorCode::inadmissible,
                "system is not admissible (witness prime " + std::to_string(system.witness.value_or(0)) + ")",
                system.witness);
  }
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw Error(ErrorCode::invalid_argument, "checkpoints must be ascending");
  }
  if (!checkpoints.empty() && checkpoints.back() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw Error(ErrorCode::invalid_argument, "count bound exceeds the signed 64-bit range");
  }
  if (config.segment_size == 0 || !std::has_single_bit(config.segment_size)) {
    throw Error(ErrorCode::invalid_argument, "segment size must be a power of two");
  }
  if (config.workers == 0) throw Error(ErrorCode::invalid_argument, "at least one worker is required");
  if (config.presieve_bound > kMaxPresieveBound) {
    throw Error(ErrorCode::invalid_argument, "pre-sieve bound must be below 2^32");
  }
}

}  // namespace

Presieve::Presieve(const PolySystem& system, std::uint64_t bound) : bound_(bound) {
  if (bound > kMaxPresieveBound) throw Error(ErrorCode::invalid_argument, "pre-sieve bound must be below 2^32");
  if (bound < 2) return;
  threshold_ = static_cast<std::uint64_t>(
      last_n_at_most(system.polys, static_cast<i128>(bound), 0).value_or(0));
  for_each_prime(2, bound, [&](std::uint64_t p) {
    for (const auto& f : system.polys) {
      for (const std::uint64_t r : list_roots(f, p).roots) {
        residues_.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r)});
      }
    }
  });
  std::sort(residues_.begin(), residues_.end(), [](const Residue& a, const Residue& b) {
    return a.p != b.p ? a.p < b.p : a.root < b.root;
  });
  residues_.erase(std::unique(residues_.begin(), residues_.end(),
                              [](const Residue& a, const Residue& b) { return a.p == b.p && a.root == b.root; }),
                  residues_.end());
}

void Presieve::mark(std::uint64_t lo, std::span<std::uint8_t> rejected) const {
  const std::size_t len = rejected.size();
  for (const Residue& r : residues_) {
    const std::uint64_t p = r.p;
    const std::uint64_t shift = lo % p;
    std::uint64_t k = r.root >= shift ? r.root - shift : r.root + p - shift;
    for (; k < len; k += p) rejected[k] = 1;
  }
}

std::vector<CountResult> count_series(const PolySystem& system, std::span<const std::uint64_t> checkpoints,
                                      const CountConfig& config) {
  validate(system, checkpoints, config);
  if (checkpoints.empty()) return {};
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t x = checkpoints.back();
  const std::size_t buckets = checkpoints.size();
  const auto bucket_of = [&](std::uint64_t n) {
    return static_cast<std::size_t>(std::lower_bound(checkpoints.begin(), checkpoints.end(), n) -
                                    checkpoints.begin());
  };

  const Presieve presieve(system, config.presieve_bound);
  Tally total{std::vector<std::uint64_t>(buckets, 0), false};

  // Direct phase: values may be at or below the pre-sieve bound.
  const std::uint64_t direct_end = std::min(presieve.threshold(), x);
  for (std::uint64_t n = 1; n <= direct_end; ++n) {
    if (all_prime(system, n, total.probable)) ++total.buckets[bucket_of(n)];
  }

  // Sieved phase over (direct_end, x] in fixed segments.
  const std::uint64_t start = std::max<std::uint64_t>(direct_end + 1, 1);
  const std::uint64_t span_len = x >= start ? x - start + 1 : 0;
  const std::uint64_t segment = config.segment_size;
  const std::uint64_t segments = (span_len + segment - 1) / segment;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(config.workers, std::max<std::uint64_t>(segments, 1)));

  std::atomic<std::uint64_t> next_segment{0};
  std::atomic<bool> abort{false};
  std::mutex mutex;
  std::exception_ptr failure;
  std::uint64_t processed = direct_end;
  std::uint64_t running = 0;
  for (const auto c : total.buckets) running += c;
  if (config.progress && direct_end > 0) config.progress(processed, running);
  std::vector<Tally> tallies(workers, Tally{std::vector<std::uint64_t>(buckets, 0), false});

  const auto work = [&](unsigned id) {
    Tally& tally = tallies[id];
    std::vector<std::uint8_t> rejected(segment);
    try {
      for (;;) {
        if (abort.load(std::memory_order_relaxed)) return;
        const std::uint64_t s = next_segment.fetch_add(1);
        if (s >= segments) return;
        const std::uint64_t lo = start + s * segment;
        const std::uint64_t len = std::min<std::uint64_t>(segment, x - lo + 1);
        std::fill(rejected.begin(), rejected.end(), 0);
        presieve.mark(lo, std::span<std::uint8_t>(rejected.data(), len));
        std::uint64_t hits = 0;
        std::size_t bucket = bucket_of(lo);
        for (std::uint64_t k = 0; k < len; ++k) {
          if (rejected[k]) continue;
          const std::uint64_t n = lo + k;
          if (!all_prime(system, n, tally.probable)) continue;
          while (checkpoints[bucket] < n) ++bucket;
          ++tally.buckets[bucket];
          ++hits;
        }
        if (config.progress) {
          const std::lock_guard lock(mutex);
          processed += len;
          running += hits;
          config.progress(processed, running);
        }
      }
    } catch (...) {
      const std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
      abort = true;
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned id = 0; id < workers; ++id) threads.emplace_back(work, id);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const Tally& tally : tallies) {
    for (std::size_t i = 0; i < buckets; ++i) total.buckets[i] += tally.buckets[i];
    total.probable = total.probable || tally.probable;
  }

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::vector<CountResult> results;
  results.reserve(buckets);
  std::uint64_t cumulative = 0;
  for (std::size_t i = 0; i < buckets; ++i) {
    cumulative += total.buckets[i];
    results.push_back({checkpoints[i], cumulative,
                       total.probable ? Certainty::probable : Certainty::deterministic, elapsed});
  }
  return results;
}

CountResult count_simultaneous_primes(const PolySystem& system, std::uint64_t x, const CountConfig& config) {
  if (x < 1) throw Error(ErrorCode::invalid_argument, "count bound must be at least 1");
  const std::uint64_t checkpoint[] = {x};
  return count_series(system, checkpoint, config).front();
}

}  // namespace bh
