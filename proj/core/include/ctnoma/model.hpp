#pragma once

#include <span>

#include "ctnoma/types.hpp"

namespace ctnoma {

/// Time for one local training pass at CPU frequency cpu_hz:
///   cycles_per_sample * data_samples / cpu_hz.
double local_compute_time(const UserProfile& user, double cpu_hz);

/// Energy for one local training pass when it is stretched to exactly tau_s
/// seconds (the CPU runs at the slowest frequency that still meets the
/// deadline): hardware_coeff * (c*D)^3 / tau^2.
double local_compute_energy(const UserProfile& user, double hardware_coeff,
                            double tau_s);

/// Composite channel gain |h|^2 / d^2 with quadratic path loss.
/// Distances below the floor throw std::domain_error.
double channel_gain(const ChannelDraw& draw,
                    double distance_floor_m = kDefaultDistanceFloorM);

/// Smallest common compute deadline any allocation can meet: the larger of
/// the frequency-cap bound max_n c*D/f_max and the energy-cap bound
/// max_n sqrt(hardware_coeff * (c*D)^3 / E_max).
double tau_lower_bound(const SystemConfig& cfg,
                       std::span<const UserProfile> users);

/// Energy left for transmission after computing at deadline tau_s:
///   E_max - hardware_coeff * (c*D)^3 / tau^2.
/// Negative results beyond the kRelEps tolerance throw InfeasibleTauError;
/// results within tolerance of zero clamp to exactly zero.
double residual_tx_energy(const UserProfile& user, const SystemConfig& cfg,
                          double tau_s);

}  // namespace ctnoma
