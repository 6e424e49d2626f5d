#include <cmath>
#include <limits>

#include <doctest.h>

#include "ctnoma/fdo_solver.hpp"
#include "ctnoma/model.hpp"
#include "ctnoma/oracles.hpp"
#include "ctnoma/philox.hpp"
#include "ctnoma/sampling.hpp"
#include "ctnoma/ts_solver.hpp"

namespace {

using namespace ctnoma;

constexpr double kInf = std::numeric_limits<double>::infinity();

TsInstance random_instance(std::size_t n, std::uint64_t trial) {
  SystemConfig cfg;
  cfg.num_users = n;
  return draw_instance(cfg, InstanceModel{}, 2.0, 21, trial);
}

FdoInstance with_default_order(const TsInstance& inst) {
  return FdoInstance{inst.cfg, inst.users,
                     default_decoding_order(inst.users)};
}

TEST_SUITE("oracles") {

TEST_CASE("subset report for two users by hand") {
  SystemConfig cfg;
  cfg.num_users = 2;
  cfg.payload_bits = 1e5;
  cfg.noise_psd_w_per_hz = 1e-20;
  const std::vector<double> effective = {3e-7, 1e-7};  // E_i * g_i
  const double t = 0.2;
  const auto reports =
      oracles::mac_region_check(cfg, effective, t, cfg.payload_bits);
  REQUIRE(reports.size() == 3);
  const double noise_j = t * cfg.bandwidth_hz * cfg.noise_psd_w_per_hz;
  for (const auto& r : reports) {
    double sum = 0;
    int bits = 0;
    for (std::size_t i = 0; i < 2; ++i)
      if (r.subset_mask & (1u << i)) {
        sum += effective[i];
        ++bits;
      }
    CHECK(r.lhs_bits == doctest::Approx(bits * 1e5));
    CHECK(r.rhs_bits ==
          doctest::Approx(t * cfg.bandwidth_hz *
                          std::log2(1.0 + sum / noise_j))
              .epsilon(1e-14));
    CHECK(r.satisfied == (r.lhs_bits <= r.rhs_bits));
  }
  CHECK_THROWS_AS(
      oracles::mac_region_check(cfg, effective, 0.0, cfg.payload_bits),
      std::invalid_argument);
}

TEST_CASE("subset enumeration caps the user count") {
  SystemConfig cfg;
  cfg.num_users = 21;
  const std::vector<double> effective(21, 1e-7);
  CHECK_THROWS_AS(oracles::mac_region_check(cfg, effective, 0.1, 1e5),
                  std::invalid_argument);
}

TEST_CASE("subset and tail forms agree on random near-boundary queries") {
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const TsInstance inst = random_instance(n, trial);
    PhiloxStream rng(33, 0, trial);
    const double tau_low = tau_lower_bound(inst.cfg, inst.users);
    const double tau = tau_low * (1.0 + std::pow(10.0, rng.uniform(-3, 0)));
    const double t_ref = optimal_t_for_tau(inst, tau);
    if (!std::isfinite(t_ref)) continue;
    const double t = t_ref * std::pow(10.0, rng.uniform(-0.3, 0.3));
    std::vector<double> effective(n);
    for (std::size_t i = 0; i < n; ++i)
      effective[i] = residual_tx_energy(inst.users[i], inst.cfg, tau) *
                     inst.users[i].channel_gain;
    CHECK(oracles::subset_region_feasible(inst.cfg, effective, t,
                                          inst.cfg.payload_bits) ==
          oracles::tail_region_feasible(inst.cfg, effective, t,
                                        inst.cfg.payload_bits));
  }
}

TEST_CASE("rate bisection round-trips the rate equation") {
  const double b = 1e6, n0 = 1e-20;
  for (const double s : {1e-12, 3e-13, 5e-14}) {
    for (const double z : {1e5, 8e5, 2e6}) {
      const double t = oracles::bisect_rate_equation(b, n0, s, z);
      REQUIRE(std::isfinite(t));
      const double rate = t * b * std::log2(1.0 + s / (t * b * n0));
      CHECK(rate == doctest::Approx(z).epsilon(1e-11));
    }
  }
  CHECK(oracles::bisect_rate_equation(b, n0, 1e-12, 0.0) == 0.0);
  // ceiling: max deliverable bits are s / (n0 ln 2)
  const double s = 1e-14;
  const double ceiling = s / (n0 * std::log(2.0));
  CHECK(oracles::bisect_rate_equation(b, n0, s, ceiling * 1.01) == kInf);
  CHECK(std::isfinite(
      oracles::bisect_rate_equation(b, n0, s, ceiling * 0.9)));
}

TEST_CASE("deadline grid search brackets the shared-channel solver") {
  const double tol = 1e-9;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const TsInstance inst = random_instance(3, 200 + trial);
    const double solver = minimize_round_delay_ts(inst, tol).total_delay_s;
    const double grid = oracles::grid_min_ts(inst, 10000).total_delay_s;
    CHECK(std::abs(solver - grid) <= std::max(10 * tol, 1e-6 * grid));
  }
}

TEST_CASE("two-axis grid search brackets the fixed-order solver") {
  const double tol = 1e-9;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const FdoInstance inst =
        with_default_order(random_instance(3, 300 + trial));
    const double solver = minimize_round_delay_fdo(inst, tol).total_delay_s;
    const double grid =
        oracles::grid_min_fdo(inst, 2000, 2000).total_delay_s;
    CHECK(std::abs(solver - grid) <= std::max(10 * tol, 1e-3 * grid));
  }
}

TEST_CASE("interior-point descent agrees with the fixed-order solver") {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const FdoInstance inst =
        with_default_order(random_instance(3, 400 + trial));
    const double solver = minimize_round_delay_fdo(inst, 1e-9).total_delay_s;
    const double descent = oracles::convex_descent_fdo(inst);
    CHECK(std::abs(solver - descent) <= 1e-4 * solver);
  }
}

TEST_CASE("descent oracle caps the user count") {
  const FdoInstance inst = with_default_order(random_instance(7, 500));
  CHECK_THROWS_AS(oracles::convex_descent_fdo(inst),
                  std::invalid_argument);
}

TEST_CASE("order enumeration caps the user count") {
  const FdoInstance fits = with_default_order(random_instance(5, 600));
  CHECK_NOTHROW(oracles::exhaustive_order_search(fits, 1e-6));
  const FdoInstance too_many = with_default_order(random_instance(6, 601));
  CHECK_THROWS_AS(oracles::exhaustive_order_search(too_many, 1e-6),
                  std::invalid_argument);
}

}  // TEST_SUITE

}  // namespace
