#include "ctnoma/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ctnoma/fdo_solver.hpp"
#include "ctnoma/tdma.hpp"
#include "ctnoma/ts_solver.hpp"

namespace ctnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double solve_one(const TsInstance& inst, Protocol protocol, double tol_s,
                 bool tdma_equal_slots) {
  switch (protocol) {
    case Protocol::Ts:
      return minimize_round_delay_ts(inst, tol_s).total_delay_s;
    case Protocol::Fdo: {
      FdoInstance fdo{inst.cfg, inst.users,
                      default_decoding_order(inst.users)};
      return minimize_round_delay_fdo(fdo, tol_s).total_delay_s;
    }
    case Protocol::Tdma:
      return minimize_round_delay_tdma(inst, tol_s, tdma_equal_slots)
          .total_delay_s;
  }
  throw std::logic_error("solve_one: unknown protocol");
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Ts: return "ts";
    case Protocol::Fdo: return "fdo";
    case Protocol::Tdma: return "tdma";
  }
  return "?";
}

const char* sweep_variable_name(SweepVariable v) {
  return v == SweepVariable::MaxEnergy ? "emax" : "payload";
}

void SweepSpec::validate() const {
  base.validate();
  model.validate();
  if (!(base_max_energy_j > 0))
    throw std::invalid_argument("SweepSpec: base_max_energy_j must be > 0");
  if (values.empty())
    throw std::invalid_argument("SweepSpec: values must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i]))
      throw std::invalid_argument("SweepSpec: values must be positive");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw std::invalid_argument(
          "SweepSpec: values must be strictly increasing");
  }
  if (trials < 1)
    throw std::invalid_argument("SweepSpec: trials must be at least 1");
  if (!(solver_tol_s > 0))
    throw std::invalid_argument("SweepSpec: solver_tol_s must be > 0");
  if (protocols.empty())
    throw std::invalid_argument("SweepSpec: protocols must be non-empty");
  for (std::size_t i = 0; i < protocols.size(); ++i)
    for (std::size_t j = i + 1; j < protocols.size(); ++j)
      if (protocols[i] == protocols[j])
        throw std::invalid_argument("SweepSpec: duplicate protocol");
}

DetailedSweepResult run_sweep_detailed(const SweepSpec& spec) {
  spec.validate();

  // Cells are laid out sorted by (value, protocol name) up front; the work
  // loop indexes into that fixed layout.
  std::vector<Protocol> protocols = spec.protocols;
  std::sort(protocols.begin(), protocols.end(),
            [](Protocol a, Protocol b) {
              return std::string_view(protocol_name(a)) <
                     std::string_view(protocol_name(b));
            });

  DetailedSweepResult out;
  out.summary.variable = spec.variable;
  for (double value : spec.values)
    for (Protocol p : protocols) {
      SweepCell cell;
      cell.sweep_value = value;
      cell.protocol = p;
      out.summary.cells.push_back(cell);
    }
  out.delays.assign(out.summary.cells.size(),
                    std::vector<double>(spec.trials, kInf));

  // One work item = one (value, trial) pair: all protocols solved on the
  // same drawn instance so comparisons stay paired.
  const std::size_t num_values = spec.values.size();
  const std::size_t items = num_values * spec.trials;
  std::atomic<std::size_t> next{0};

  const auto worker = [&]() {
    for (std::size_t item = next.fetch_add(1); item < items;
         item = next.fetch_add(1)) {
      const std::size_t value_idx = item / spec.trials;
      const std::uint64_t trial = item % spec.trials;

      SystemConfig cfg = spec.base;
      double e_max = spec.base_max_energy_j;
      if (spec.variable == SweepVariable::MaxEnergy)
        e_max = spec.values[value_idx];
      else
        cfg.payload_bits = spec.values[value_idx];

      TsInstance inst;
      bool drawn = false;
      try {
        inst = draw_instance(cfg, spec.model, e_max, spec.seed, trial);
        drawn = true;
      } catch (const std::exception&) {
        // A degenerate draw (e.g. zero fading power) infects every
        // protocol of this trial; the +inf defaults already say so.
      }
      if (!drawn) continue;

      for (std::size_t p = 0; p < protocols.size(); ++p) {
        double delay = kInf;
        try {
          delay = solve_one(inst, protocols[p], spec.solver_tol_s,
                            spec.tdma_equal_slots);
        } catch (const std::exception&) {
          // Infeasible instance or solver failure: leave +inf, keep going.
        }
        out.delays[value_idx * protocols.size() + p][trial] = delay;
      }
    }
  };

  unsigned workers = spec.workers;
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, items));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // Sequential reduction in trial order: identical no matter how the work
  // items were scheduled above.
  for (std::size_t c = 0; c < out.summary.cells.size(); ++c) {
    SweepCell& cell = out.summary.cells[c];
    double sum = 0;
    std::uint64_t count = 0;
    for (double d : out.delays[c]) {
      if (std::isfinite(d)) {
        sum += d;
        ++count;
      } else {
        ++cell.infeasible;
      }
    }
    cell.feasible_trials = count;
    cell.mean_delay_s = count > 0 ? sum / static_cast<double>(count) : 0.0;
    double ss = 0;
    for (double d : out.delays[c])
      if (std::isfinite(d)) {
        const double dev = d - cell.mean_delay_s;
        ss += dev * dev;
      }
    cell.std_delay_s =
        count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
  return run_sweep_detailed(spec).summary;
}

std::string to_csv(const SweepResult& result) {
  std::string out =
      "sweep_var,sweep_value,protocol,mean_delay_s,std_delay_s,trials,"
      "infeasible\n";
  for (const SweepCell& cell : result.cells) {
    out += sweep_variable_name(result.variable);
    out += ',';
    out += format_sig9(cell.sweep_value);
    out += ',';
    out += protocol_name(cell.protocol);
    out += ',';
    out += format_sig9(cell.mean_delay_s);
    out += ',';
    out += format_sig9(cell.std_delay_s);
    out += ',';
    out += std::to_string(cell.feasible_trials);
    out += ',';
    out += std::to_string(cell.infeasible);
    out += '\n';
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("emit_csv: cannot open " + path.string());
  const std::string body = to_csv(result);
  file.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!file)
    throw std::runtime_error("emit_csv: short write to " + path.string());
}

}  // namespace ctnoma
