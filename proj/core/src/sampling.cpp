#include "ctnoma/sampling.hpp"

#include <stdexcept>

#include "ctnoma/model.hpp"
#include "ctnoma/philox.hpp"

namespace ctnoma {

void InstanceModel::validate() const {
  if (!(cycles_min > 0) || !(cycles_max >= cycles_min))
    throw std::invalid_argument("InstanceModel: bad cycles range");
  if (!(data_samples > 0))
    throw std::invalid_argument("InstanceModel: data_samples must be > 0");
  if (!(max_cpu_hz > 0))
    throw std::invalid_argument("InstanceModel: max_cpu_hz must be > 0");
  if (!(distance_min_m > 0) || !(distance_max_m >= distance_min_m))
    throw std::invalid_argument("InstanceModel: bad distance range");
}

TsInstance draw_instance(const SystemConfig& cfg, const InstanceModel& model,
                         double max_energy_j, std::uint64_t seed,
                         std::uint64_t trial) {
  cfg.validate();
  model.validate();
  if (!(max_energy_j > 0))
    throw std::invalid_argument("draw_instance: max_energy_j must be > 0");

  TsInstance inst;
  inst.cfg = cfg;
  inst.users.resize(cfg.num_users);
  for (std::size_t i = 0; i < cfg.num_users; ++i) {
    PhiloxStream rng(seed, static_cast<std::uint32_t>(i), trial);
    UserProfile& u = inst.users[i];
    u.cycles_per_sample = rng.uniform(model.cycles_min, model.cycles_max);
    u.data_samples = model.data_samples;
    u.max_cpu_hz = model.max_cpu_hz;
    u.max_energy_j = max_energy_j;
    const ChannelDraw draw{rng.exponential(),
                           rng.uniform(model.distance_min_m,
                                       model.distance_max_m)};
    u.channel_gain = channel_gain(draw, model.distance_min_m);
  }
  return inst;
}

}  // namespace ctnoma
