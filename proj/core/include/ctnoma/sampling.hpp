#pragma once

#include <cstdint>

#include "ctnoma/ts_solver.hpp"
#include "ctnoma/types.hpp"

namespace ctnoma {

/// Population the Monte Carlo harness draws users from: compute intensity
/// uniform on a range, distance uniform in a disk annulus (floor to cell
/// edge), Rayleigh fading as unit-mean exponential power.
struct InstanceModel {
  double cycles_min = 10.0;          // per-unit compute intensity range
  double cycles_max = 40.0;
  double data_samples = 1e6;         // local dataset size per user
  double max_cpu_hz = 1.5e9;
  double distance_min_m = kDefaultDistanceFloorM;
  double distance_max_m = 500.0;

  void validate() const;
};

/// Draws one round's users deterministically from (seed, trial): user i of
/// trial k reads Philox stream (seed, stream=i, element=k), so the same
/// trial produces the same instance no matter which sweep point, protocol
/// or worker asks for it. max_energy_j and cfg.payload_bits carry the sweep
/// point's values.
TsInstance draw_instance(const SystemConfig& cfg, const InstanceModel& model,
                         double max_energy_j, std::uint64_t seed,
                         std::uint64_t trial);

}  // namespace ctnoma
