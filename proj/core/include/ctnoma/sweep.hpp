#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctnoma/sampling.hpp"
#include "ctnoma/types.hpp"

namespace ctnoma {

enum class Protocol { Ts, Fdo, Tdma };

/// Lowercase stable identifier ("ts", "fdo", "tdma") used in CSV output and
/// on the command line.
const char* protocol_name(Protocol p);

enum class SweepVariable { MaxEnergy, PayloadBits };

const char* sweep_variable_name(SweepVariable v);  // "emax" / "payload"

/// Full description of one Monte Carlo sweep.
struct SweepSpec {
  SystemConfig base;                  // payload_bits used when sweeping emax
  InstanceModel model;
  double base_max_energy_j = 2.0;     // used when sweeping payload
  SweepVariable variable = SweepVariable::MaxEnergy;
  std::vector<double> values;         // strictly increasing, joules or bits
  std::uint64_t trials = 100;
  std::uint64_t seed = 42;
  std::vector<Protocol> protocols = {Protocol::Ts, Protocol::Fdo,
                                     Protocol::Tdma};
  double solver_tol_s = 1e-9;
  unsigned workers = 0;               // 0 -> hardware concurrency
  bool tdma_equal_slots = false;

  void validate() const;
};

/// Aggregates for one (sweep value, protocol) cell. feasible_trials is the
/// count the mean/stddev are taken over; infeasible counts solver errors
/// and genuinely undeliverable instances alike.
struct SweepCell {
  double sweep_value = 0;
  Protocol protocol = Protocol::Ts;
  double mean_delay_s = 0;
  double std_delay_s = 0;             // sample standard deviation
  std::uint64_t feasible_trials = 0;
  std::uint64_t infeasible = 0;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::MaxEnergy;
  std::vector<SweepCell> cells;       // sorted by (sweep_value, name)
};

/// SweepResult plus the per-trial delays behind each cell (+infinity marks
/// an infeasible trial), aligned index-for-index with result.cells.
struct DetailedSweepResult {
  SweepResult summary;
  std::vector<std::vector<double>> delays;  // [cell][trial]
};

/// Runs the sweep across a worker pool. Per-trial instances depend only on
/// (seed, trial), trials are reduced in index order, and every protocol at
/// every sweep value sees the same instance stream, so the output is
/// byte-stable across worker counts and repeat runs.
DetailedSweepResult run_sweep_detailed(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec);

/// CSV rendering: header sweep_var,sweep_value,protocol,mean_delay_s,
/// std_delay_s,trials,infeasible; one row per cell; numbers at 9
/// significant digits.
std::string to_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace ctnoma
