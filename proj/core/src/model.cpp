#include "ctnoma/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctnoma {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void SystemConfig::validate() const {
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0,
          "SystemConfig: bandwidth_hz must be positive");
  require(std::isfinite(noise_psd_w_per_hz) && noise_psd_w_per_hz > 0,
          "SystemConfig: noise_psd_w_per_hz must be positive");
  require(std::isfinite(payload_bits) && payload_bits >= 0,
          "SystemConfig: payload_bits must be non-negative");
  require(std::isfinite(hardware_coeff) && hardware_coeff >= 0,
          "SystemConfig: hardware_coeff must be non-negative");
  require(num_users >= 1, "SystemConfig: num_users must be at least 1");
}

void UserProfile::validate() const {
  require(std::isfinite(cycles_per_sample) && cycles_per_sample > 0,
          "UserProfile: cycles_per_sample must be positive");
  require(std::isfinite(data_samples) && data_samples > 0,
          "UserProfile: data_samples must be positive");
  require(std::isfinite(max_cpu_hz) && max_cpu_hz > 0,
          "UserProfile: max_cpu_hz must be positive");
  require(std::isfinite(max_energy_j) && max_energy_j > 0,
          "UserProfile: max_energy_j must be positive");
  require(std::isfinite(channel_gain) && channel_gain > 0,
          "UserProfile: channel_gain must be positive");
}

double local_compute_time(const UserProfile& user, double cpu_hz) {
  if (!(cpu_hz > 0))
    throw std::domain_error("local_compute_time: cpu_hz must be positive");
  return user.cycles_per_sample * user.data_samples / cpu_hz;
}

double local_compute_energy(const UserProfile& user, double hardware_coeff,
                            double tau_s) {
  if (!(tau_s > 0))
    throw std::domain_error("local_compute_energy: tau_s must be positive");
  if (!(hardware_coeff >= 0))
    throw std::domain_error(
        "local_compute_energy: hardware_coeff must be non-negative");
  const double cycles = user.cycles_per_sample * user.data_samples;
  return hardware_coeff * cycles * cycles * cycles / (tau_s * tau_s);
}

double channel_gain(const ChannelDraw& draw, double distance_floor_m) {
  if (!(draw.fading_power >= 0))
    throw std::domain_error("channel_gain: fading_power must be non-negative");
  if (!(draw.distance_m >= distance_floor_m))
    throw std::domain_error(
        "channel_gain: distance_m is below the path-loss floor");
  return draw.fading_power / (draw.distance_m * draw.distance_m);
}

double tau_lower_bound(const SystemConfig& cfg,
                       std::span<const UserProfile> users) {
  cfg.validate();
  if (users.empty())
    throw std::invalid_argument("tau_lower_bound: no users");
  double bound = 0;
  for (const UserProfile& u : users) {
    u.validate();
    const double cycles = u.cycles_per_sample * u.data_samples;
    const double freq_limited = cycles / u.max_cpu_hz;
    const double energy_limited =
        std::sqrt(cfg.hardware_coeff * cycles * cycles * cycles /
                  u.max_energy_j);
    bound = std::max({bound, freq_limited, energy_limited});
  }
  return bound;
}

double residual_tx_energy(const UserProfile& user, const SystemConfig& cfg,
                          double tau_s) {
  const double residual =
      user.max_energy_j - local_compute_energy(user, cfg.hardware_coeff, tau_s);
  if (residual < 0) {
    // A hair below zero is the energy-cap bound binding exactly, up to
    // floating-point round-off in sqrt/square round trips.
    if (residual >= -kRelEps * user.max_energy_j) return 0.0;
    throw InfeasibleTauError(
        "residual_tx_energy: compute energy exceeds the budget at this tau");
  }
  return residual;
}

}  // namespace ctnoma
