#ifndef MIRRORDIP_TRAJECTORIES_HPP
#define MIRRORDIP_TRAJECTORIES_HPP

#include <cstdint>
#include <vector>

#include "mirrordip/dynamics.hpp"

// Quantum-jump unraveling of the coupled decay. Trajectories are sampled
// exactly: between jumps the state follows the closed-form no-jump decay,
// jump times are solved from the survival probability by bisection, and the
// jump channel (L+ or L-) is drawn from the instantaneous channel weights.
//
// Determinism contract: every trajectory owns an RNG stream derived only
// from (seed, trajectory index), and per-point statistics are reduced over
// fixed 64-trajectory chunks in chunk-index order. Output is therefore
// byte-identical for any worker count.

namespace mirrordip {

// splitmix64: 64-bit state, one additive step plus finalizer per draw.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_double();  // uniform on [0, 1), 53 bits
 private:
  std::uint64_t state_;
};

// Decorrelated stream key for one trajectory; two finalizer rounds keep
// neighbouring indices statistically independent.
std::uint64_t trajectory_stream_key(std::uint64_t seed, std::uint64_t index);

struct McOptions {
  int n_workers = 0;  // 0 = hardware concurrency
};

// Averages n_trajectories jump unravelings on t_grid. Fills the four
// population channels and p0 (fraction of trajectories with no jump yet)
// together with their standard errors of the mean.
TimeSeries mc_trajectories(const LindbladGenerator& gen, const InitialState& initial,
                           const std::vector<double>& t_grid, long n_trajectories,
                           std::uint64_t seed, const McOptions& opt = {});

}  // namespace mirrordip

#endif  // MIRRORDIP_TRAJECTORIES_HPP
