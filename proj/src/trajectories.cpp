#include "mirrordip/trajectories.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mirrordip/errors.hpp"

namespace mirrordip {

namespace {

constexpr std::size_t kChunk = 64;
constexpr int kBisectionIters = 128;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Amplitudes in the collective basis (|11>, |+>, |->, |22>). All reachable
// states have real amplitudes: the supported initial states are real and
// both jump maps are real.
using Amplitudes = std::array<double, 4>;

Amplitudes initial_amplitudes(const InitialState& initial, SplitMix64& rng) {
  switch (initial.tag) {
    case StateTag::Ground:
      return {1.0, 0.0, 0.0, 0.0};
    case StateTag::Plus:
      return {0.0, 1.0, 0.0, 0.0};
    case StateTag::Minus:
      return {0.0, 0.0, 1.0, 0.0};
    case StateTag::DoublyExcited:
      return {0.0, 0.0, 0.0, 1.0};
    case StateTag::ProductMixture:
      break;
  }
  // Product mixture: draw one of the four product states.
  const double p = initial.p;
  const double u = rng.next_double();
  const double r = 1.0 / std::sqrt(2.0);
  if (u < (1.0 - p) * (1.0 - p)) return {1.0, 0.0, 0.0, 0.0};
  if (u < (1.0 - p)) return {0.0, r, r, 0.0};                  // |12>
  if (u < (1.0 - p) + p * (1.0 - p)) return {0.0, r, -r, 0.0};  // |21>
  return {0.0, 0.0, 0.0, 1.0};
}

double survival(const Amplitudes& c, const std::array<double, 4>& lam, double s) {
  double total = 0.0;
  for (int k = 0; k < 4; ++k) total += c[k] * c[k] * std::exp(-2.0 * lam[k] * s);
  return total;
}

// Solves survival(s) = u for the next jump delay; +inf when the surviving
// ground component already exceeds u (no further jump).
double next_jump_delay(const Amplitudes& c, const std::array<double, 4>& lam,
                       double u) {
  const double s_inf = c[0] * c[0];
  if (u <= s_inf) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 1100 && survival(c, lam, hi) > u; ++i) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < kBisectionIters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (survival(c, lam, mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void normalize(Amplitudes& c) {
  const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
  for (double& a : c) a /= norm;
}

// Per-channel running sums over trajectories; channels are
// (pop_11, pop_plus, pop_minus, pop_22, p0).
struct Accum {
  std::array<std::vector<double>, 5> sum, sumsq;

  explicit Accum(std::size_t n_points) {
    for (auto& v : sum) v.assign(n_points, 0.0);
    for (auto& v : sumsq) v.assign(n_points, 0.0);
  }

  void add(std::size_t g, const std::array<double, 5>& val) {
    for (int ch = 0; ch < 5; ++ch) {
      sum[ch][g] += val[ch];
      sumsq[ch][g] += val[ch] * val[ch];
    }
  }
};

void run_trajectory(const LindbladGenerator& gen, const InitialState& initial,
                    const std::vector<double>& t_grid, std::uint64_t key,
                    Accum& acc) {
  SplitMix64 rng(key);
  const std::array<double, 4> lam = {0.0, 0.5 * gen.gamma_plus, 0.5 * gen.gamma_minus,
                                     gen.gamma_free};

  Amplitudes c = initial_amplitudes(initial, rng);
  double t0 = 0.0;
  int n_jumps = 0;
  double t_jump = next_jump_delay(c, lam, rng.next_double());

  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    while (t_jump <= t_grid[g]) {
      const double s = t_jump - t0;
      for (int k = 0; k < 4; ++k) c[k] *= std::exp(-lam[k] * s);

      const double w_plus = gen.gamma_plus * (c[1] * c[1] + c[3] * c[3]);
      const double w_minus = gen.gamma_minus * (c[2] * c[2] + c[3] * c[3]);
      if (w_plus + w_minus <= 0.0) {
        t_jump = std::numeric_limits<double>::infinity();
        break;
      }
      const double u = rng.next_double();
      if (u * (w_plus + w_minus) < w_plus) {
        c = {c[1], c[3], 0.0, 0.0};  // L+: |+> -> |11>, |22> -> |+>
      } else {
        c = {-c[2], 0.0, c[3], 0.0};  // L-: |-> -> -|11>, |22> -> |->
      }
      normalize(c);
      ++n_jumps;
      t0 = t_jump;
      const double delay = next_jump_delay(c, lam, rng.next_double());
      t_jump = t0 + delay;
    }

    const double s = t_grid[g] - t0;
    std::array<double, 5> val{};
    double norm = 0.0;
    for (int k = 0; k < 4; ++k) {
      val[k] = c[k] * c[k] * std::exp(-2.0 * lam[k] * s);
      norm += val[k];
    }
    for (int k = 0; k < 4; ++k) val[k] /= norm;
    val[4] = (n_jumps == 0) ? 1.0 : 0.0;
    acc.add(g, val);
  }
}

}  // namespace

std::uint64_t SplitMix64::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double SplitMix64::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t trajectory_stream_key(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
}

TimeSeries mc_trajectories(const LindbladGenerator& gen, const InitialState& initial,
                           const std::vector<double>& t_grid, long n_trajectories,
                           std::uint64_t seed, const McOptions& opt) {
  if (n_trajectories < 1) {
    throw ConstraintViolation("mc_trajectories: n_trajectories must be >= 1");
  }
  validate_time_grid(t_grid);

  const std::size_t n = static_cast<std::size_t>(n_trajectories);
  const std::size_t n_points = t_grid.size();
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;

  std::vector<Accum> partials(n_chunks, Accum(n_points));
  std::atomic<std::size_t> next_chunk{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t chunk = next_chunk.fetch_add(1);
      if (chunk >= n_chunks) return;
      const std::size_t begin = chunk * kChunk;
      const std::size_t end = std::min(begin + kChunk, n);
      for (std::size_t idx = begin; idx < end; ++idx) {
        run_trajectory(gen, initial, t_grid, trajectory_stream_key(seed, idx),
                       partials[chunk]);
      }
    }
  };

  unsigned n_workers = opt.n_workers > 0
                           ? static_cast<unsigned>(opt.n_workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(
      std::min<std::size_t>(n_workers, n_chunks));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  // Chunk-index-order reduction keeps the result independent of scheduling.
  Accum total(n_points);
  for (const Accum& part : partials) {
    for (int ch = 0; ch < 5; ++ch) {
      for (std::size_t g = 0; g < n_points; ++g) {
        total.sum[ch][g] += part.sum[ch][g];
        total.sumsq[ch][g] += part.sumsq[ch][g];
      }
    }
  }

  TimeSeries out;
  out.t = t_grid;
  std::array<std::vector<double>*, 5> means = {&out.pop_11, &out.pop_plus,
                                               &out.pop_minus, &out.pop_22, &out.p0};
  std::array<std::vector<double>*, 5> sems = {&out.pop_11_sem, &out.pop_plus_sem,
                                              &out.pop_minus_sem, &out.pop_22_sem,
                                              &out.p0_sem};
  const double count = static_cast<double>(n);
  for (int ch = 0; ch < 5; ++ch) {
    means[ch]->resize(n_points);
    sems[ch]->resize(n_points);
    for (std::size_t g = 0; g < n_points; ++g) {
      const double mean = total.sum[ch][g] / count;
      (*means[ch])[g] = mean;
      if (n < 2) {
        (*sems[ch])[g] = 0.0;
        continue;
      }
      const double var =
          std::max(0.0, (total.sumsq[ch][g] - count * mean * mean) / (count - 1.0));
      (*sems[ch])[g] = std::sqrt(var / count);
    }
  }
  return out;
}

}  // namespace mirrordip
