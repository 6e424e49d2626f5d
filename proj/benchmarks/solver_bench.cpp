// Microbenchmarks for the hot paths: per-deadline transmit time, the full
// deadline searches, and the exponential-size region check the validation
// library uses.

#include <benchmark/benchmark.h>

#include "ctnoma/fdo_solver.hpp"
#include "ctnoma/model.hpp"
#include "ctnoma/oracles.hpp"
#include "ctnoma/sampling.hpp"
#include "ctnoma/ts_solver.hpp"

namespace {

using namespace ctnoma;

TsInstance make_instance(std::size_t num_users, std::uint64_t trial) {
  SystemConfig cfg;
  cfg.num_users = num_users;
  InstanceModel model;
  return draw_instance(cfg, model, 2.0, 42, trial);
}

void bm_optimal_t_for_tau(benchmark::State& state) {
  const TsInstance inst =
      make_instance(static_cast<std::size_t>(state.range(0)), 0);
  const double tau = 1.5 * tau_lower_bound(inst.cfg, inst.users);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimal_t_for_tau(inst, tau));
}
BENCHMARK(bm_optimal_t_for_tau)->Arg(4)->Arg(10)->Arg(50);

void bm_minimize_ts(benchmark::State& state) {
  const TsInstance inst =
      make_instance(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(minimize_round_delay_ts(inst, 1e-9));
}
BENCHMARK(bm_minimize_ts)->Arg(4)->Arg(10)->Arg(50);

void bm_minimize_fdo(benchmark::State& state) {
  const TsInstance drawn =
      make_instance(static_cast<std::size_t>(state.range(0)), 2);
  const FdoInstance inst{drawn.cfg, drawn.users,
                         default_decoding_order(drawn.users)};
  for (auto _ : state)
    benchmark::DoNotOptimize(minimize_round_delay_fdo(inst, 1e-9));
}
BENCHMARK(bm_minimize_fdo)->Arg(4)->Arg(10)->Arg(50);

void bm_mac_region_check(benchmark::State& state) {
  const TsInstance inst =
      make_instance(static_cast<std::size_t>(state.range(0)), 3);
  const double tau = 1.5 * tau_lower_bound(inst.cfg, inst.users);
  std::vector<double> effective(inst.users.size());
  for (std::size_t i = 0; i < inst.users.size(); ++i)
    effective[i] = residual_tx_energy(inst.users[i], inst.cfg, tau) *
                   inst.users[i].channel_gain;
  const double t = optimal_t_for_tau(inst, tau);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracles::mac_region_check(
        inst.cfg, effective, t, inst.cfg.payload_bits));
}
BENCHMARK(bm_mac_region_check)->Arg(4)->Arg(10)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
