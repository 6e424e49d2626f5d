#include <cmath>
#include <limits>

#include <doctest.h>

#include "ctnoma/fdo_solver.hpp"
#include "ctnoma/model.hpp"
#include "ctnoma/oracles.hpp"
#include "ctnoma/sampling.hpp"
#include "ctnoma/ts_solver.hpp"

namespace {

using namespace ctnoma;

constexpr double kInf = std::numeric_limits<double>::infinity();

UserProfile make_user(double cycles, double samples, double f_max,
                      double e_max, double gain) {
  return UserProfile{cycles, samples, f_max, e_max, gain};
}

FdoInstance random_instance(std::size_t n, std::uint64_t trial) {
  SystemConfig cfg;
  cfg.num_users = n;
  const TsInstance drawn = draw_instance(cfg, InstanceModel{}, 2.0, 7, trial);
  return FdoInstance{drawn.cfg, drawn.users,
                     default_decoding_order(drawn.users)};
}

TEST_SUITE("fdo") {

TEST_CASE("default order decodes the strongest gain first, ties stable") {
  std::vector<UserProfile> users = {make_user(20, 1e6, 1e9, 1.0, 1e-6),
                                    make_user(20, 1e6, 1e9, 1.0, 3e-6),
                                    make_user(20, 1e6, 1e9, 1.0, 2e-6)};
  CHECK(default_decoding_order(users).order ==
        std::vector<std::size_t>{1, 2, 0});
  users[1].channel_gain = 2e-6;  // tie with users[2]
  CHECK(default_decoding_order(users).order ==
        std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("two-user minimal energies by hand") {
  FdoInstance inst;
  inst.cfg.num_users = 2;
  inst.cfg.payload_bits = 2e5;
  inst.cfg.noise_psd_w_per_hz = 1e-20;
  inst.users = {make_user(20, 1e6, 1e9, 1.0, 1e-6),
                make_user(10, 1e6, 1e9, 1.0, 5e-7)};
  inst.order.order = {0, 1};
  const double tau = 0.05;
  const double t = 0.3;
  const double gamma = std::expm1(inst.cfg.payload_bits /
                                  (t * inst.cfg.bandwidth_hz) *
                                  std::log(2.0));
  const double noise_j =
      t * inst.cfg.bandwidth_hz * inst.cfg.noise_psd_w_per_hz;
  // decoded last: sees only noise; decoded first: also the other's signal
  const double e1 = gamma * noise_j / 5e-7;
  const double e0 = gamma * (noise_j + e1 * 5e-7) / 1e-6;
  const std::vector<double> chain = minimal_energy_chain(inst, tau, t);
  CHECK(chain[0] == doctest::Approx(e0).epsilon(1e-13));
  CHECK(chain[1] == doctest::Approx(e1).epsilon(1e-13));
}

TEST_CASE("minimal energies match the per-position closed form") {
  const FdoInstance inst = random_instance(4, 0);
  const double tau = tau_lower_bound(inst.cfg, inst.users) * 1.5;
  const double t = 0.4;
  const std::vector<double> chain = minimal_energy_chain(inst, tau, t);
  const double gamma = std::expm1(inst.cfg.payload_bits /
                                  (t * inst.cfg.bandwidth_hz) *
                                  std::log(2.0));
  const double noise_j =
      t * inst.cfg.bandwidth_hz * inst.cfg.noise_psd_w_per_hz;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t user = inst.order.order[k];
    const double expected = gamma * std::pow(1.0 + gamma, 3.0 - k) *
                            noise_j / inst.users[user].channel_gain;
    CHECK(chain[user] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("minimal energies hit every decoding constraint exactly") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const FdoInstance inst = random_instance(3, trial);
    const double tau = tau_lower_bound(inst.cfg, inst.users) * 1.3;
    const double t = 0.25;
    const std::vector<double> chain = minimal_energy_chain(inst, tau, t);
    const double noise_j =
        t * inst.cfg.bandwidth_hz * inst.cfg.noise_psd_w_per_hz;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t user = inst.order.order[k];
      double interference = 0;
      for (std::size_t m = k + 1; m < 3; ++m) {
        const std::size_t later = inst.order.order[m];
        interference += chain[later] * inst.users[later].channel_gain;
      }
      const double sinr = chain[user] * inst.users[user].channel_gain /
                          (interference + noise_j);
      const double bits =
          t * inst.cfg.bandwidth_hz * std::log2(1.0 + sinr);
      CHECK(bits ==
            doctest::Approx(inst.cfg.payload_bits).epsilon(1e-10));
    }
  }
}

TEST_CASE("per-deadline transmit time sits on the feasibility boundary") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const FdoInstance inst = random_instance(3, 30 + trial);
    const double tau = tau_lower_bound(inst.cfg, inst.users) * 1.4;
    const double t = optimal_t_for_tau_fdo(inst, tau, 1e-10);
    REQUIRE(std::isfinite(t));
    CHECK(fdo_feasible(inst, tau, t));
    if (t > 2e-9) CHECK_FALSE(fdo_feasible(inst, tau, t * 0.995));
  }
}

TEST_CASE("single user: fixed order equals time sharing") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const FdoInstance inst = random_instance(1, 50 + trial);
    const TsInstance ts{inst.cfg, inst.users};
    const double tol = 1e-9;
    const double a = minimize_round_delay_fdo(inst, tol).total_delay_s;
    const double b = minimize_round_delay_ts(ts, tol).total_delay_s;
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
  }
}

TEST_CASE("fixed order never beats time sharing") {
  for (std::uint64_t trial = 0; trial < 15; ++trial) {
    const FdoInstance inst = random_instance(3, 70 + trial);
    const TsInstance ts{inst.cfg, inst.users};
    const double tol = 1e-9;
    const double fdo = minimize_round_delay_fdo(inst, tol).total_delay_s;
    const double shared = minimize_round_delay_ts(ts, tol).total_delay_s;
    CHECK(shared <= fdo * (1 + 1e-9) + 10 * tol);
  }
}

TEST_CASE("solution reports the minimal energy chain at its optimum") {
  const FdoInstance inst = random_instance(3, 90);
  const RoundSolution sol = minimize_round_delay_fdo(inst, 1e-9);
  const std::vector<double> chain =
      minimal_energy_chain(inst, sol.tau_s, sol.t_s);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sol.tx_energy_j[i] == doctest::Approx(chain[i]).epsilon(1e-12));
    CHECK(sol.tx_energy_j[i] <=
          residual_tx_energy(inst.users[i], inst.cfg, sol.tau_s) *
              (1 + 1e-9));
  }
}

TEST_CASE("searching all orders never loses to the default") {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const FdoInstance inst = random_instance(3, 110 + trial);
    const double tol = 1e-9;
    const auto best = oracles::exhaustive_order_search(inst, tol);
    const double with_default =
        minimize_round_delay_fdo(inst, tol).total_delay_s;
    CHECK(best.total_delay_s <= with_default * (1 + 1e-12) + tol);
  }
}

// How much delay does the descending-gain heuristic leave on the table
// versus the best of all orders? Reported as data: optimality over all
// permutations is not a claimed property, only never losing to the best
// order's result is.
TEST_CASE("default order versus best order, reported") {
  const double tol = 1e-7;
  double worst_excess = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const FdoInstance inst = random_instance(1 + trial % 4, 500 + trial);
    const double with_default =
        minimize_round_delay_fdo(inst, tol).total_delay_s;
    const auto best = oracles::exhaustive_order_search(inst, tol);
    CHECK(best.total_delay_s <= with_default * (1 + 1e-9) + tol);
    worst_excess = std::max(
        worst_excess, (with_default - best.total_delay_s) /
                          best.total_delay_s);
  }
  MESSAGE("descending-gain order trails the best order by at most "
          << worst_excess << " relative over 100 instances");
}

TEST_CASE("order search breaks symmetric ties lexicographically") {
  FdoInstance inst;
  inst.cfg.num_users = 3;
  inst.cfg.payload_bits = 2e5;
  inst.users.assign(3, make_user(20, 1e6, 1e9, 1.0, 1e-6));
  inst.order.order = {0, 1, 2};
  const auto best = oracles::exhaustive_order_search(inst, 1e-9);
  CHECK(best.order.order == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("per-user rate ceiling marks hopeless instances") {
  FdoInstance inst = random_instance(2, 130);
  inst.users[0].channel_gain = 1e-30;
  const double tau = tau_lower_bound(inst.cfg, inst.users) * 1.5;
  CHECK(optimal_t_for_tau_fdo(inst, tau, 1e-10) == kInf);
  CHECK_THROWS_AS(minimize_round_delay_fdo(inst, 1e-9),
                  InfeasibleInstanceError);
}

TEST_CASE("order must be a permutation of the users") {
  FdoInstance inst = random_instance(3, 140);
  inst.order.order = {0, 1};  // wrong size
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.order.order = {0, 1, 1};  // duplicate
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.order.order = {0, 2, 1};
  CHECK_NOTHROW(inst.validate());
}

}  // TEST_SUITE

}  // namespace
