#pragma once

#include <vector>

#include "ctnoma/ts_solver.hpp"
#include "ctnoma/types.hpp"

namespace ctnoma {

/// Orthogonal baseline: after the common compute phase, users upload one at
/// a time, each over the full bandwidth with its full residual energy.
struct TdmaSolution {
  double tau_s = 0;
  std::vector<double> slot_s;   // per-user transmit slot, user order
  double total_delay_s = 0;     // tau_s + sum of slots
  std::vector<double> tx_energy_j;
};

/// Minimum-delay TDMA allocation. Each slot is the single-user rate
/// inversion at that user's residual energy; the compute deadline is then
/// optimized the same way as the joint solvers. With equal_slots set, all
/// slots are forced to the longest per-user requirement (a weaker baseline
/// kept for sensitivity studies). Throws InfeasibleInstanceError when some
/// user cannot deliver the payload at any deadline.
TdmaSolution minimize_round_delay_tdma(const TsInstance& inst, double tol_s,
                                       bool equal_slots = false,
                                       SolveStats* stats = nullptr);

}  // namespace ctnoma
