#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctnoma {

// Relative tolerance used for feasibility and invariant checks throughout.
inline constexpr double kRelEps = 1e-9;

// Minimum user distance in meters; the path-loss model diverges at d = 0, so
// samplers clamp draws to this floor.
inline constexpr double kDefaultDistanceFloorM = 1.0;

/// Cell-wide constants shared by every user in one upload round.
struct SystemConfig {
  double bandwidth_hz = 1e6;                       // uplink bandwidth B
  double noise_psd_w_per_hz = 3.9810717055e-21;    // noise PSD N0 (linear, -174 dBm/Hz)
  double payload_bits = 8e5;                       // per-user upload size Z
  double hardware_coeff = 1e-27;                   // CPU energy coefficient (J*s^2/cycle^3)
  std::size_t num_users = 1;

  void validate() const;  // throws std::invalid_argument on a non-physical value
};

/// Per-user compute load, hardware limits and channel state.
struct UserProfile {
  double cycles_per_sample = 0;  // CPU cycles needed per data unit
  double data_samples = 0;       // local dataset size (units matching cycles_per_sample)
  double max_cpu_hz = 0;         // CPU frequency cap
  double max_energy_j = 0;       // round energy budget (compute + transmit)
  double channel_gain = 0;       // composite gain |h|^2 / d^2

  void validate() const;
};

/// Raw channel randomness before it is folded into a composite gain.
struct ChannelDraw {
  double fading_power = 1.0;  // |h|^2, exponential with unit mean under Rayleigh fading
  double distance_m = 1.0;    // user-to-base-station distance
};

/// Optimal allocation for one round: common compute deadline, transmit
/// duration, and the per-user energy/frequency split that achieves them.
struct RoundSolution {
  double tau_s = 0;                // compute phase length
  double t_s = 0;                  // transmit phase length
  double total_delay_s = 0;        // tau_s + t_s
  std::vector<double> tx_energy_j; // transmit energy per user
  std::vector<double> cpu_hz;      // CPU frequency per user
};

/// Diagnostics from a delay minimization: bracket used and work done.
struct SolveStats {
  double tau_low_s = 0;          // lower end of the compute-time bracket
  double tau_feasible_s = 0;     // first evaluated tau with a finite delay
  double tau_up_initial_s = 0;   // initial upper end of the bracket
  int bisection_iterations = 0;  // halving steps of the outer search
  int refinement_evaluations = 0;// objective evaluations spent polishing
};

/// A given compute deadline cannot be met within the energy/frequency caps.
struct InfeasibleTauError : std::runtime_error {
  explicit InfeasibleTauError(const std::string& what) : std::runtime_error(what) {}
};

/// No finite round delay exists (some user cannot deliver the payload at all).
struct InfeasibleInstanceError : std::runtime_error {
  explicit InfeasibleInstanceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ctnoma
