#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace csr {

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t n_samples = 0;
};

/// Welford accumulator with an order-dependent (hence deterministic) merge.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(n_ + o.n_);
    const double delta = o.mean_ - mean_;
    mean_ += delta * static_cast<double>(o.n_) / n;
    m2_ += o.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
    n_ += o.n_;
  }

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

  McEstimate estimate() const { return {mean_, std_error(), n_}; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

using Rng = std::mt19937_64;

inline constexpr std::size_t kChunkSize = 4096;

// Substream for one chunk. Chunk boundaries do not depend on the worker
// count, so results are identical for any number of threads.
inline Rng chunk_rng(std::uint64_t seed, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs `sample(rng, acc)` n times split into fixed-size chunks, each with its
/// own substream, and merges chunk accumulators in chunk order.
template <typename Accumulator, typename SampleFn>
Accumulator run_chunked(std::size_t n, std::uint64_t seed, unsigned threads, SampleFn sample) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Accumulator> partial(chunks);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t c = first; c < chunks; c += stride) {
      Rng rng = chunk_rng(seed, c);
      const std::size_t begin = c * kChunkSize;
      const std::size_t end = std::min(n, begin + kChunkSize);
      for (std::size_t i = begin; i < end; ++i) sample(rng, partial[c]);
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  Accumulator total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

/// Uniform point on the unit sphere from a normalized Gaussian triple.
inline Eigen::Vector3d uniform_unit_vector(Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(normal(rng), normal(rng), normal(rng));
  } while (v.squaredNorm() < 1e-24);
  return v.normalized();
}

}  // namespace csr
