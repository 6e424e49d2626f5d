#pragma once

// Internal helper shared by the time-sharing and TDMA solvers; not installed.

#include <cmath>
#include <limits>

#include "ctnoma/lambert_w.hpp"

namespace ctnoma::detail {

inline constexpr double kLn2 = 0.6931471805599453;

// Smallest t > 0 with
//   z_bits <= t * B * log2(1 + S / (t * B * N0)),
// where S is an effective received energy (sum of energy * gain terms).
//
// The left side is constant and the right side increases in t but saturates
// at S / (N0 * ln 2) bits: with finite energy, stretching the transmission
// trades power for time at a bounded total. Introducing k = z*N0*ln2 / S,
// the saturation test is k < 1 and the binding-time equation inverts through
// the secondary Lambert branch as
//   t = -z * ln2 / (B * (k + W_{-1}(-k * exp(-k)))).
// Returns +infinity when no finite t reaches z_bits (k >= 1 or S == 0).
inline double min_transmit_time(double bandwidth_hz, double noise_psd,
                                double effective_energy_sum, double z_bits) {
  if (z_bits <= 0) return 0.0;
  if (!(effective_energy_sum > 0)) {
    return std::numeric_limits<double>::infinity();
  }
  const double k = z_bits * noise_psd * kLn2 / effective_energy_sum;
  if (k >= 1.0) return std::numeric_limits<double>::infinity();
  const double w = lambert_w_minus1(LambertArg(-k * std::exp(-k)));
  // k + w < 0 away from saturation; round-off can flush the margin to zero
  // when k sits within ulps of 1.
  if (!(k + w < 0)) return std::numeric_limits<double>::infinity();
  return -z_bits * kLn2 / (bandwidth_hz * (k + w));
}

}  // namespace ctnoma::detail
