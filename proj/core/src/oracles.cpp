#include "ctnoma/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctnoma/model.hpp"

namespace ctnoma::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

double rate_bits(const SystemConfig& cfg, double effective_sum, double t_s) {
  const double noise_j = t_s * cfg.bandwidth_hz * cfg.noise_psd_w_per_hz;
  return t_s * cfg.bandwidth_hz * std::log2(1.0 + effective_sum / noise_j);
}

}  // namespace

std::vector<SubsetConstraintReport> mac_region_check(
    const SystemConfig& cfg, std::span<const double> effective_energy_j,
    double t_s, double payload_bits) {
  cfg.validate();
  const std::size_t n = effective_energy_j.size();
  if (n != cfg.num_users)
    throw std::invalid_argument("mac_region_check: energy count != num_users");
  if (n > 20)
    throw std::invalid_argument(
        "mac_region_check: refusing num_users > 20 (2^N subsets)");
  if (!(t_s > 0))
    throw std::invalid_argument("mac_region_check: t_s must be positive");
  for (double a : effective_energy_j)
    if (!(a >= 0) || !std::isfinite(a))
      throw std::invalid_argument(
          "mac_region_check: effective energies must be finite and >= 0");

  std::vector<SubsetConstraintReport> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) sum += effective_energy_j[i];
    SubsetConstraintReport row;
    row.subset_mask = mask;
    row.lhs_bits = static_cast<double>(std::popcount(mask)) * payload_bits;
    row.rhs_bits = rate_bits(cfg, sum, t_s);
    row.satisfied = row.lhs_bits <= row.rhs_bits;
    out.push_back(row);
  }
  return out;
}

bool subset_region_feasible(const SystemConfig& cfg,
                            std::span<const double> effective_energy_j,
                            double t_s, double payload_bits) {
  for (const SubsetConstraintReport& row :
       mac_region_check(cfg, effective_energy_j, t_s, payload_bits))
    if (!row.satisfied) return false;
  return true;
}

bool tail_region_feasible(const SystemConfig& cfg,
                          std::span<const double> effective_energy_j,
                          double t_s, double payload_bits) {
  std::vector<double> sorted(effective_energy_j.begin(),
                             effective_energy_j.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double tail = 0;
  for (std::size_t j = 1; j <= sorted.size(); ++j) {
    tail += sorted[sorted.size() - j];
    const double lhs = static_cast<double>(j) * payload_bits;
    if (!(lhs <= rate_bits(cfg, tail, t_s))) return false;
  }
  return true;
}

double bisect_rate_equation(double bandwidth_hz, double noise_psd_w_per_hz,
                            double effective_energy_sum, double z_bits,
                            double rel_tol) {
  if (z_bits <= 0) return 0.0;
  if (!(effective_energy_sum > 0)) return kInf;
  // The rate grows with t but saturates at S/(N0*ln2) bits.
  if (!(effective_energy_sum / (noise_psd_w_per_hz * kLn2) > z_bits))
    return kInf;

  const auto rate = [&](double t) {
    const double noise_j = t * bandwidth_hz * noise_psd_w_per_hz;
    return t * bandwidth_hz * std::log2(1.0 + effective_energy_sum / noise_j);
  };

  double lo = 1e-30;
  double hi = 1.0;
  while (rate(hi) < z_bits) {
    hi *= 2.0;
    if (hi > 1e60)
      throw std::runtime_error("bisect_rate_equation: bracket blew up");
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (rate(mid) >= z_bits)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

// Shared by the grid oracles: first deadline (tau_low + growing offset) whose
// transmit evaluation turns finite, or an infeasible-instance error.
template <class TransmitFn>
double first_finite_deadline(TransmitFn&& transmit, double tau_low) {
  double offset = 1e-12 * std::max(tau_low, 1.0);
  for (int i = 0; i < 400; ++i) {
    const double tau = tau_low + offset;
    if (std::isfinite(transmit(tau))) return tau;
    offset *= 2.0;
  }
  throw InfeasibleInstanceError(
      "grid oracle: no finite transmit time at any deadline");
}

}  // namespace

GridMinimum grid_min_ts(const TsInstance& inst, std::size_t tau_points) {
  inst.validate();
  if (tau_points < 100)
    throw std::invalid_argument("grid_min_ts: need at least 100 grid points");

  const double tau_low = tau_lower_bound(inst.cfg, inst.users);
  const auto transmit = [&](double tau) {
    return optimal_t_for_tau(inst, tau);
  };
  const double tau_bar = first_finite_deadline(transmit, tau_low);
  const double lo = tau_low * (1.0 + 1e-9);
  const double hi = tau_upper_bound(inst, tau_bar);

  GridMinimum best{lo, kInf};
  const double log_lo = std::log(lo);
  const double log_step = (std::log(hi) - log_lo) /
                          static_cast<double>(tau_points - 1);
  for (std::size_t i = 0; i < tau_points; ++i) {
    const double tau = std::exp(log_lo + log_step * static_cast<double>(i));
    const double total = tau + transmit(tau);
    if (total < best.total_delay_s) best = {tau, total};
  }
  return best;
}

namespace {

// Closed-form chain feasibility for the fixed-order protocol, independent of
// the recursive construction in the solver: the user decoded at position k
// (0-based) needs snr_gap * (1+snr_gap)^(N-1-k) * t*B*N0 / g joules.
bool chain_fits_budget(const FdoInstance& inst,
                       std::span<const double> residual_j, double t_s) {
  const double t_b = t_s * inst.cfg.bandwidth_hz;
  const double noise_j = t_b * inst.cfg.noise_psd_w_per_hz;
  const double snr_gap = std::expm1(inst.cfg.payload_bits / t_b * kLn2);
  const std::size_t n = inst.users.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t user = inst.order.order[k];
    const double need =
        snr_gap *
        std::pow(1.0 + snr_gap, static_cast<double>(n - 1 - k)) * noise_j /
        inst.users[user].channel_gain;
    if (!(need <= residual_j[user])) return false;
  }
  return true;
}

std::vector<double> raw_residuals(const FdoInstance& inst, double tau_s) {
  std::vector<double> r(inst.users.size());
  for (std::size_t i = 0; i < inst.users.size(); ++i) {
    const UserProfile& u = inst.users[i];
    const double cycles = u.cycles_per_sample * u.data_samples;
    r[i] = u.max_energy_j -
           inst.cfg.hardware_coeff * cycles * cycles * cycles /
               (tau_s * tau_s);
  }
  return r;
}

// Smallest duration on a log grid that the closed-form chain accepts, or
// +infinity. Grid search, not bisection: the point is to stay structurally
// different from the solver.
double grid_transmit_fdo(const FdoInstance& inst, double tau_s,
                         std::size_t t_points) {
  const std::vector<double> residual = raw_residuals(inst, tau_s);
  const double floor_j =
      inst.cfg.payload_bits * inst.cfg.noise_psd_w_per_hz * kLn2;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (residual[i] < 0) return kInf;
    if (!(residual[i] * inst.users[i].channel_gain > floor_j)) return kInf;
  }
  if (inst.cfg.payload_bits == 0) return 0.0;

  // Bracket the feasibility boundary within one octave, then resolve it on
  // a log grid across that octave; the grid step, not machine precision, is
  // the oracle's resolution and stays proportional to the answer.
  double hi = 1e-3;
  int doublings = 0;
  while (!chain_fits_budget(inst, residual, hi)) {
    hi *= 2.0;
    if (++doublings > 200) return kInf;
  }
  double lo = hi * 0.5;
  if (doublings == 0) {
    while (chain_fits_budget(inst, residual, lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-12) return hi;
    }
  }

  const double log_lo = std::log(lo);
  const double log_step =
      (std::log(hi) - log_lo) / static_cast<double>(t_points - 1);
  // Feasibility is monotone in t, so locate the boundary with a binary
  // search over grid indices.
  std::size_t bad = 0;               // known infeasible
  std::size_t good = t_points - 1;   // known feasible (== hi)
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    const double t = std::exp(log_lo + log_step * static_cast<double>(mid));
    if (chain_fits_budget(inst, residual, t))
      good = mid;
    else
      bad = mid;
  }
  return std::exp(log_lo + log_step * static_cast<double>(good));
}

}  // namespace

GridMinimum grid_min_fdo(const FdoInstance& inst, std::size_t tau_points,
                         std::size_t t_points) {
  inst.validate();
  if (tau_points < 100 || t_points < 100)
    throw std::invalid_argument(
        "grid_min_fdo: need at least 100 points per axis");

  const double tau_low = tau_lower_bound(inst.cfg, inst.users);
  const auto transmit = [&](double tau) {
    return grid_transmit_fdo(inst, tau, t_points);
  };
  const double tau_bar = first_finite_deadline(transmit, tau_low);
  const double lo = tau_low * (1.0 + 1e-9);
  const double hi = tau_bar + transmit(tau_bar);

  GridMinimum best{lo, kInf};
  const double log_lo = std::log(lo);
  const double log_step = (std::log(hi) - log_lo) /
                          static_cast<double>(tau_points - 1);
  for (std::size_t i = 0; i < tau_points; ++i) {
    const double tau = std::exp(log_lo + log_step * static_cast<double>(i));
    const double total = tau + transmit(tau);
    if (total < best.total_delay_s) best = {tau, total};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Log-barrier interior-point descent on the convex form of the fixed-order
// problem. Variables x = (tau, lt, le_0..le_{N-1}) with lt = ln t and
// le_n = ln E_n; constraints
//   energy_n : zeta*q_n^3/tau^2 + exp(le_n) - E_n^max            <= 0
//   rate_k   : ln(expm1(a)) + ln(S_k) - le_{pi_k} - ln g_{pi_k}  <= 0
//   deadline : a1 - tau                                          <= 0
// where a = (Z*ln2/B)*exp(-lt) and S_k sums exp(le)*g over users decoded
// after position k plus exp(lt)*B*N0. All pieces have analytic gradients and
// Hessians (the S_k part is the classic log-sum-exp softmax form).
// ---------------------------------------------------------------------------

namespace {

struct BarrierProblem {
  const FdoInstance* inst;
  std::vector<double> cycles3;  // (c*D)^3 per user
  double freq_deadline;         // max_n c*D/f_max
  double a_coeff;               // Z*ln2/B
  double noise_w;               // B*N0

  std::size_t dim() const { return inst->users.size() + 2; }
  std::size_t constraints() const { return 2 * inst->users.size() + 1; }
};

// Value of constraint j at x; j < N are energies, then N rate rows, then the
// deadline row.
double constraint_value(const BarrierProblem& p, std::span<const double> x,
                        std::size_t j) {
  const std::size_t n = p.inst->users.size();
  const double tau = x[0];
  const double lt = x[1];
  if (j < n) {
    return p.inst->cfg.hardware_coeff * p.cycles3[j] / (tau * tau) +
           std::exp(x[2 + j]) - p.inst->users[j].max_energy_j;
  }
  if (j < 2 * n) {
    const std::size_t k = j - n;
    const std::size_t user = p.inst->order.order[k];
    const double a = p.a_coeff * std::exp(-lt);
    double s = std::exp(lt) * p.noise_w;
    for (std::size_t m = k + 1; m < n; ++m) {
      const std::size_t later = p.inst->order.order[m];
      s += std::exp(x[2 + later]) * p.inst->users[later].channel_gain;
    }
    return std::log(std::expm1(a)) + std::log(s) - x[2 + user] -
           std::log(p.inst->users[user].channel_gain);
  }
  return p.freq_deadline - tau;
}

double max_constraint(const BarrierProblem& p, std::span<const double> x) {
  double worst = -kInf;
  for (std::size_t j = 0; j < p.constraints(); ++j)
    worst = std::max(worst, constraint_value(p, x, j));
  return worst;
}

double objective(std::span<const double> x) { return x[0] + std::exp(x[1]); }

// Gradient and Hessian of the log-barrier objective
//   F(x) = tau + exp(lt) - mu * sum_j ln(-phi_j(x)).
struct Derivatives {
  double value = 0;
  std::vector<double> grad;
  std::vector<double> hess;  // row-major dim x dim
};

Derivatives barrier_derivatives(const BarrierProblem& p,
                                std::span<const double> x, double mu) {
  const std::size_t n = p.inst->users.size();
  const std::size_t d = p.dim();
  Derivatives out;
  out.grad.assign(d, 0.0);
  out.hess.assign(d * d, 0.0);
  const auto h = [&](std::size_t r, std::size_t c) -> double& {
    return out.hess[r * d + c];
  };

  const double tau = x[0];
  const double lt = x[1];
  out.value = tau + std::exp(lt);
  out.grad[0] += 1.0;
  out.grad[1] += std::exp(lt);
  h(1, 1) += std::exp(lt);

  std::vector<double> cg(d);   // gradient of the current constraint
  std::vector<double> chess;   // its Hessian, same layout as out.hess

  const auto accumulate = [&](double phi) {
    // Contribution of -mu*ln(-phi): mu/(-phi)*grad phi into the gradient,
    // mu*(grad grad^T/phi^2 + hess/(-phi)) into the Hessian.
    const double inv = 1.0 / (-phi);
    for (std::size_t r = 0; r < d; ++r) {
      out.grad[r] += mu * inv * cg[r];
      for (std::size_t c = 0; c < d; ++c)
        out.hess[r * d + c] +=
            mu * (inv * inv * cg[r] * cg[c] + inv * chess[r * d + c]);
    }
  };

  // Energy rows.
  for (std::size_t j = 0; j < n; ++j) {
    const double comp = p.inst->cfg.hardware_coeff * p.cycles3[j];
    const double e = std::exp(x[2 + j]);
    const double phi =
        comp / (tau * tau) + e - p.inst->users[j].max_energy_j;
    std::fill(cg.begin(), cg.end(), 0.0);
    chess.assign(d * d, 0.0);
    cg[0] = -2.0 * comp / (tau * tau * tau);
    cg[2 + j] = e;
    chess[0] = 6.0 * comp / (tau * tau * tau * tau);
    chess[(2 + j) * d + (2 + j)] = e;
    accumulate(phi);
  }

  // Rate rows.
  const double a = p.a_coeff * std::exp(-lt);
  const double em = std::expm1(a);
  // d/dlt ln(expm1(a)) = -r(a), d2/dlt2 = psi2(a); both have stable small-a
  // and large-a limits.
  double r_a, psi2;
  if (a > 500.0) {
    r_a = a;
    psi2 = a;
  } else if (a < 1e-4) {
    r_a = 1.0 + a / 2.0;  // a*e^a/em -> 1 as a -> 0
    psi2 = a / 2.0 * (1.0 + a / 3.0);
  } else {
    const double ea = std::exp(a);
    r_a = a * ea / em;
    psi2 = a * ea * (em - a) / (em * em);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t user = p.inst->order.order[k];
    double s = std::exp(lt) * p.noise_w;
    for (std::size_t m = k + 1; m < n; ++m) {
      const std::size_t later = p.inst->order.order[m];
      s += std::exp(x[2 + later]) * p.inst->users[later].channel_gain;
    }
    const double phi = std::log(em) + std::log(s) - x[2 + user] -
                       std::log(p.inst->users[user].channel_gain);

    std::fill(cg.begin(), cg.end(), 0.0);
    chess.assign(d * d, 0.0);

    // Softmax weights of ln S over its participating variables: index 1
    // (lt) and 2+later for each later-decoded user.
    std::vector<std::size_t> vars;
    std::vector<double> weights;
    vars.push_back(1);
    weights.push_back(std::exp(lt) * p.noise_w / s);
    for (std::size_t m = k + 1; m < n; ++m) {
      const std::size_t later = p.inst->order.order[m];
      vars.push_back(2 + later);
      weights.push_back(std::exp(x[2 + later]) *
                        p.inst->users[later].channel_gain / s);
    }

    cg[1] += -r_a;
    cg[2 + user] += -1.0;
    for (std::size_t v = 0; v < vars.size(); ++v) cg[vars[v]] += weights[v];

    chess[1 * d + 1] += psi2;
    for (std::size_t v = 0; v < vars.size(); ++v)
      for (std::size_t w = 0; w < vars.size(); ++w) {
        const double pv = weights[v];
        const double pw = weights[w];
        chess[vars[v] * d + vars[w]] += (v == w ? pv : 0.0) - pv * pw;
      }
    accumulate(phi);
  }

  // Deadline row (linear; Hessian zero).
  {
    const double phi = p.freq_deadline - tau;
    std::fill(cg.begin(), cg.end(), 0.0);
    chess.assign(d * d, 0.0);
    cg[0] = -1.0;
    accumulate(phi);
  }

  for (std::size_t j = 0; j < p.constraints(); ++j)
    out.value -= mu * std::log(-constraint_value(p, x, j));
  return out;
}

// Gaussian elimination with partial pivoting; returns false on a pivot
// collapse (caller then falls back to steepest descent).
bool solve_linear(std::vector<double> a, std::vector<double> b,
                  std::size_t d, std::vector<double>& out) {
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r * d + col]) > std::abs(a[pivot * d + col])) pivot = r;
    if (std::abs(a[pivot * d + col]) < 1e-300) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < d; ++c)
        std::swap(a[col * d + c], a[pivot * d + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = a[r * d + col] / a[col * d + col];
      for (std::size_t c = col; c < d; ++c) a[r * d + c] -= f * a[col * d + c];
      b[r] -= f * b[col];
    }
  }
  out.assign(d, 0.0);
  for (std::size_t r = d; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < d; ++c) acc -= a[r * d + c] * out[c];
    out[r] = acc / a[r * d + r];
  }
  for (double v : out)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

double convex_descent_fdo(const FdoInstance& inst, int iters) {
  inst.validate();
  const std::size_t n = inst.users.size();
  if (n > 6)
    throw std::invalid_argument(
        "convex_descent_fdo: refusing num_users > 6 (dense oracle)");
  if (inst.cfg.payload_bits == 0)
    return tau_lower_bound(inst.cfg, inst.users);

  BarrierProblem p;
  p.inst = &inst;
  p.cycles3.resize(n);
  p.freq_deadline = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cycles =
        inst.users[i].cycles_per_sample * inst.users[i].data_samples;
    p.cycles3[i] = cycles * cycles * cycles;
    p.freq_deadline =
        std::max(p.freq_deadline, cycles / inst.users[i].max_cpu_hz);
  }
  p.a_coeff = inst.cfg.payload_bits * kLn2 / inst.cfg.bandwidth_hz;
  p.noise_w = inst.cfg.bandwidth_hz * inst.cfg.noise_psd_w_per_hz;

  const std::size_t d = p.dim();
  const double tau_low = tau_lower_bound(inst.cfg, inst.users);

  // Strictly feasible start: back off the deadline so every energy row has
  // slack, give each user a fraction of its residual, and stretch the
  // duration until every rate row has slack too.
  std::vector<double> x(d, 0.0);
  bool started = false;
  const double tau0 = std::max(2.0 * tau_low, tau_low + 1e-3);
  for (double frac : {0.5, 0.9, 0.99, 0.999}) {
    x[0] = tau0;
    bool energies_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double residual =
          inst.users[i].max_energy_j -
          inst.cfg.hardware_coeff * p.cycles3[i] / (tau0 * tau0);
      if (!(residual > 0)) {
        energies_ok = false;
        break;
      }
      x[2 + i] = std::log(frac * residual);
    }
    if (!energies_ok) continue;
    double t0 = 1e-3;
    for (int grow = 0; grow < 400; ++grow) {
      x[1] = std::log(t0);
      if (max_constraint(p, x) < -1e-9) {
        started = true;
        break;
      }
      t0 *= 2.0;
    }
    if (started) break;
  }
  if (!started)
    throw std::runtime_error(
        "convex_descent_fdo: could not find a strictly feasible start");

  const double m = static_cast<double>(p.constraints());
  double mu = 0.1 * std::max(1.0, objective(x));
  int steps_used = 0;
  std::vector<double> direction, trial(d);

  while (true) {
    for (int inner = 0; inner < 80; ++inner) {
      if (++steps_used > iters)
        throw std::runtime_error(
            "convex_descent_fdo: iteration budget exhausted before "
            "convergence");
      const Derivatives der = barrier_derivatives(p, x, mu);

      std::vector<double> neg_grad(d);
      for (std::size_t i = 0; i < d; ++i) neg_grad[i] = -der.grad[i];
      bool have_newton = solve_linear(der.hess, neg_grad, d, direction);
      double descent = 0;
      if (have_newton) {
        for (std::size_t i = 0; i < d; ++i)
          descent += der.grad[i] * direction[i];
        if (!(descent < 0)) have_newton = false;
      }
      if (!have_newton) {
        direction = neg_grad;
        descent = 0;
        for (std::size_t i = 0; i < d; ++i)
          descent -= der.grad[i] * der.grad[i];
      }
      if (0.5 * -descent < 1e-13 * (1.0 + std::abs(der.value))) break;

      double step = 1.0;
      bool moved = false;
      while (step > 1e-15) {
        for (std::size_t i = 0; i < d; ++i)
          trial[i] = x[i] + step * direction[i];
        if (max_constraint(p, trial) < 0) {
          const Derivatives at_trial = barrier_derivatives(p, trial, mu);
          if (at_trial.value <= der.value + 0.25 * step * descent) {
            x = trial;
            moved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (mu * m <= 1e-8 * std::max(objective(x), 1e-12)) break;
    mu /= 20.0;
  }
  return objective(x);
}

OrderSearchResult exhaustive_order_search(const FdoInstance& inst,
                                          double tol_s) {
  inst.validate();
  const std::size_t n = inst.users.size();
  if (n > 5)
    throw std::invalid_argument(
        "exhaustive_order_search: refusing num_users > 5 (N! solves)");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  OrderSearchResult best;
  best.total_delay_s = kInf;
  do {
    FdoInstance candidate{inst.cfg, inst.users, DecodingOrder{perm}};
    const RoundSolution sol = minimize_round_delay_fdo(candidate, tol_s);
    if (sol.total_delay_s < best.total_delay_s) {
      best.total_delay_s = sol.total_delay_s;
      best.order.order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace ctnoma::oracles
