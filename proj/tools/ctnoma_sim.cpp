// ctnoma-sim: Monte Carlo sweep driver for the round-delay solvers.
//
// Assembles a sweep from built-in defaults, then an optional config file,
// then command-line flags (later wins), optionally self-checks the solvers
// against the brute-force oracles, runs the sweep across a worker pool and
// writes one CSV.

#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctnoma/config.hpp"
#include "ctnoma/fdo_solver.hpp"
#include "ctnoma/model.hpp"
#include "ctnoma/oracles.hpp"
#include "ctnoma/philox.hpp"
#include "ctnoma/sampling.hpp"
#include "ctnoma/sweep.hpp"
#include "ctnoma/ts_solver.hpp"

namespace {

using namespace ctnoma;

// Each failed check prints its own diagnostic; the caller only needs the
// count.
int run_self_checks(const SweepSetup& setup) {
  int failures = 0;
  const std::uint64_t seed = setup.spec.seed ^ 0x5e1fc8ecULL;
  const auto report = [&](const char* name, bool ok, const std::string& why) {
    std::fprintf(stderr, "[%s] %s%s%s\n", ok ? "ok" : "FAIL", name,
                 why.empty() ? "" : ": ", why.c_str());
    if (!ok) ++failures;
  };

  // 1. Subset-enumeration and sorted-tail forms of the capacity region
  //    agree on random near-boundary queries.
  {
    std::string why;
    bool ok = true;
    for (std::uint64_t trial = 0; trial < 200 && ok; ++trial) {
      SystemConfig cfg = setup.spec.base;
      cfg.num_users = 1 + static_cast<std::size_t>(trial % 4);
      const TsInstance inst =
          draw_instance(cfg, setup.spec.model, setup.spec.base_max_energy_j,
                        seed, trial);
      PhiloxStream rng(seed, 1000, trial);
      const double tau_low = tau_lower_bound(cfg, inst.users);
      const double tau = tau_low * (1.0 + std::pow(10.0, rng.uniform(-3, 0)));
      const double t_ref = optimal_t_for_tau(inst, tau);
      if (!std::isfinite(t_ref)) continue;
      const double t = t_ref * std::pow(10.0, rng.uniform(-0.3, 0.3));
      std::vector<double> effective(cfg.num_users);
      for (std::size_t i = 0; i < cfg.num_users; ++i)
        effective[i] = residual_tx_energy(inst.users[i], cfg, tau) *
                       inst.users[i].channel_gain;
      const bool subset = oracles::subset_region_feasible(
          cfg, effective, t, cfg.payload_bits);
      const bool tail = oracles::tail_region_feasible(
          cfg, effective, t, cfg.payload_bits);
      if (subset != tail) {
        ok = false;
        why = "disagreement at trial " + std::to_string(trial);
      }
    }
    report("capacity region: subset vs tail form", ok, why);
  }

  // 2. Lambert closed form vs plain bisection on every tail constraint.
  {
    std::string why;
    bool ok = true;
    for (std::uint64_t trial = 0; trial < 50 && ok; ++trial) {
      SystemConfig cfg = setup.spec.base;
      cfg.num_users = 1 + static_cast<std::size_t>(trial % 6);
      const TsInstance inst =
          draw_instance(cfg, setup.spec.model, setup.spec.base_max_energy_j,
                        seed, 1000 + trial);
      PhiloxStream rng(seed, 1001, trial);
      const double tau_low = tau_lower_bound(cfg, inst.users);
      const double tau = tau_low * (1.0 + std::pow(10.0, rng.uniform(-2, 0)));
      const double closed = optimal_t_for_tau(inst, tau);
      const EffectiveGains gains = effective_gains(inst, tau);
      double reference = 0;
      double tail = 0;
      for (std::size_t j = 1; j <= gains.sorted.size(); ++j) {
        tail += gains.sorted[gains.sorted.size() - j];
        reference = std::max(
            reference,
            oracles::bisect_rate_equation(
                cfg.bandwidth_hz, cfg.noise_psd_w_per_hz, tail,
                static_cast<double>(j) * cfg.payload_bits));
      }
      if (std::isfinite(closed) != std::isfinite(reference) ||
          (std::isfinite(closed) &&
           std::abs(closed - reference) > 1e-8 * reference)) {
        ok = false;
        why = "mismatch at trial " + std::to_string(trial);
      }
    }
    report("transmit time: closed form vs bisection", ok, why);
  }

  // 3. The minimal-energy chain meets every successive-decoding constraint
  //    with equality.
  {
    std::string why;
    bool ok = true;
    for (std::uint64_t trial = 0; trial < 50 && ok; ++trial) {
      SystemConfig cfg = setup.spec.base;
      cfg.num_users = 3;
      const TsInstance drawn =
          draw_instance(cfg, setup.spec.model, setup.spec.base_max_energy_j,
                        seed, 2000 + trial);
      FdoInstance inst{drawn.cfg, drawn.users,
                       default_decoding_order(drawn.users)};
      PhiloxStream rng(seed, 1002, trial);
      const double tau =
          tau_lower_bound(cfg, drawn.users) * (1.0 + rng.uniform(0.1, 2.0));
      const double t = rng.uniform(0.01, 1.0);
      const std::vector<double> chain = minimal_energy_chain(inst, tau, t);
      const double noise_j = t * cfg.bandwidth_hz * cfg.noise_psd_w_per_hz;
      for (std::size_t k = 0; k < 3 && ok; ++k) {
        const std::size_t user = inst.order.order[k];
        double interference = 0;
        for (std::size_t m = k + 1; m < 3; ++m) {
          const std::size_t later = inst.order.order[m];
          interference +=
              chain[later] * inst.users[later].channel_gain;
        }
        const double sinr = chain[user] * inst.users[user].channel_gain /
                            (interference + noise_j);
        const double bits = t * cfg.bandwidth_hz * std::log2(1.0 + sinr);
        if (std::abs(bits - cfg.payload_bits) > 1e-10 * cfg.payload_bits) {
          ok = false;
          why = "slack constraint at trial " + std::to_string(trial);
        }
      }
    }
    report("minimal energies: constraints tight", ok, why);
  }

  // 4. With one user the two protocols solve the same problem.
  {
    std::string why;
    bool ok = true;
    for (std::uint64_t trial = 0; trial < 20 && ok; ++trial) {
      SystemConfig cfg = setup.spec.base;
      cfg.num_users = 1;
      const TsInstance inst =
          draw_instance(cfg, setup.spec.model, setup.spec.base_max_energy_j,
                        seed, 3000 + trial);
      const double tol = 1e-9;
      const double ts = minimize_round_delay_ts(inst, tol).total_delay_s;
      FdoInstance fdo{inst.cfg, inst.users, default_decoding_order(inst.users)};
      const double fd = minimize_round_delay_fdo(fdo, tol).total_delay_s;
      if (std::abs(ts - fd) > std::max(5 * tol, 1e-9 * ts)) {
        ok = false;
        why = "gap " + std::to_string(std::abs(ts - fd)) + " at trial " +
              std::to_string(trial);
      }
    }
    report("single user: shared vs fixed-order solver", ok, why);
  }

  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo sweep of minimum round delay for uplink "
      "compute-then-transmit scheduling (shared-channel, fixed-order and "
      "TDMA uploads)"};

  std::string config_path;
  std::string sweep_name;
  std::string values_text;
  std::string protocols_text;
  std::string out_path;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double tol = 0;
  unsigned workers = 0;
  bool validate_first = false;
  bool tdma_equal_slots = false;

  const auto* config_opt =
      app.add_option("--config", config_path, "Config file (key = value)")
          ->check(CLI::ExistingFile);
  const auto* sweep_opt = app.add_option(
      "--sweep", sweep_name, "Sweep variable: emax (J) or payload (bits)");
  const auto* values_opt = app.add_option(
      "--values", values_text, "Comma-separated sweep values, ascending");
  const auto* trials_opt =
      app.add_option("--trials", trials, "Monte Carlo trials per sweep value");
  const auto* seed_opt = app.add_option("--seed", seed, "Base RNG seed");
  const auto* protocols_opt = app.add_option(
      "--protocols", protocols_text, "Subset of ts,fdo,tdma to run");
  const auto* tol_opt =
      app.add_option("--tol", tol, "Deadline search tolerance in seconds");
  const auto* out_opt = app.add_option("--out", out_path, "Output CSV path");
  const auto* workers_opt = app.add_option(
      "--workers", workers, "Worker threads (0 = hardware concurrency)");
  app.add_flag("--validate", validate_first,
               "Self-check the solvers against the brute-force oracles "
               "before sweeping");
  app.add_flag("--tdma-equal-slots", tdma_equal_slots,
               "Force equal TDMA slots (weaker baseline)");

  CLI11_PARSE(app, argc, argv);

  SweepSetup setup;
  setup.spec.base.num_users = 10;
  try {
    if (config_opt->count()) load_config_file(setup, config_path);
    if (sweep_opt->count())
      setup.spec.variable = parse_sweep_variable(sweep_name);
    if (values_opt->count()) {
      setup.spec.values = parse_value_list(values_text);
      setup.values_explicit = true;
    }
    if (!setup.values_explicit)
      setup.spec.values = default_sweep_values(setup.spec.variable);
    if (trials_opt->count()) setup.spec.trials = trials;
    if (seed_opt->count()) setup.spec.seed = seed;
    if (protocols_opt->count())
      setup.spec.protocols = parse_protocol_list(protocols_text);
    if (tol_opt->count()) setup.spec.solver_tol_s = tol;
    if (workers_opt->count()) setup.spec.workers = workers;
    if (tdma_equal_slots) setup.spec.tdma_equal_slots = true;
    if (out_opt->count()) setup.out_path = out_path;
    setup.spec.validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (validate_first) {
    const int failures = run_self_checks(setup);
    if (failures > 0) {
      std::fprintf(stderr, "error: %d self-check(s) failed\n", failures);
      return 3;
    }
  }

  try {
    const SweepResult result = run_sweep(setup.spec);
    emit_csv(result, setup.out_path);
    std::printf("wrote %s (%zu rows)\n", setup.out_path.c_str(),
                result.cells.size());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
