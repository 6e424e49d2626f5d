#include "ctnoma/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ctnoma {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad number for '" + key + "': " + text);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for '" + key + "': " + text);
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::runtime_error("config: bad boolean for '" + key + "': " + text);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_value_stream(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) +
                               " is not 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("config: line " + std::to_string(lineno) +
                               " has an empty key or value");
    out.emplace_back(key, value);
  }
  return out;
}

std::vector<Protocol> parse_protocol_list(const std::string& text) {
  std::vector<Protocol> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const std::string name = trim(token);
    if (name == "ts")
      out.push_back(Protocol::Ts);
    else if (name == "fdo")
      out.push_back(Protocol::Fdo);
    else if (name == "tdma")
      out.push_back(Protocol::Tdma);
    else
      throw std::runtime_error("config: unknown protocol '" + name + "'");
  }
  return out;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const std::string item = trim(token);
    if (item.empty())
      throw std::runtime_error("config: empty entry in value list");
    out.push_back(parse_double("values", item));
  }
  if (out.empty()) throw std::runtime_error("config: empty value list");
  return out;
}

SweepVariable parse_sweep_variable(const std::string& text) {
  if (text == "emax") return SweepVariable::MaxEnergy;
  if (text == "payload") return SweepVariable::PayloadBits;
  throw std::runtime_error("config: sweep must be 'emax' or 'payload', got '" +
                           text + "'");
}

std::vector<double> default_sweep_values(SweepVariable variable) {
  if (variable == SweepVariable::MaxEnergy)
    return {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  return {2e5, 4e5, 6e5, 8e5, 1e6};
}

void apply_setting(SweepSetup& setup, const std::string& key,
                   const std::string& value) {
  SweepSpec& spec = setup.spec;
  if (key == "num_users")
    spec.base.num_users = static_cast<std::size_t>(parse_u64(key, value));
  else if (key == "bandwidth_hz")
    spec.base.bandwidth_hz = parse_double(key, value);
  else if (key == "noise_psd_w_per_hz")
    spec.base.noise_psd_w_per_hz = parse_double(key, value);
  else if (key == "payload_bits")
    spec.base.payload_bits = parse_double(key, value);
  else if (key == "hardware_coeff")
    spec.base.hardware_coeff = parse_double(key, value);
  else if (key == "e_max_j")
    spec.base_max_energy_j = parse_double(key, value);
  else if (key == "cycles_min")
    spec.model.cycles_min = parse_double(key, value);
  else if (key == "cycles_max")
    spec.model.cycles_max = parse_double(key, value);
  else if (key == "data_samples")
    spec.model.data_samples = parse_double(key, value);
  else if (key == "f_max_hz")
    spec.model.max_cpu_hz = parse_double(key, value);
  else if (key == "d_min_m")
    spec.model.distance_min_m = parse_double(key, value);
  else if (key == "d_max_m")
    spec.model.distance_max_m = parse_double(key, value);
  else if (key == "sweep")
    spec.variable = parse_sweep_variable(value);
  else if (key == "values") {
    spec.values = parse_value_list(value);
    setup.values_explicit = true;
  } else if (key == "trials")
    spec.trials = parse_u64(key, value);
  else if (key == "seed")
    spec.seed = parse_u64(key, value);
  else if (key == "protocols")
    spec.protocols = parse_protocol_list(value);
  else if (key == "tol")
    spec.solver_tol_s = parse_double(key, value);
  else if (key == "workers")
    spec.workers = static_cast<unsigned>(parse_u64(key, value));
  else if (key == "tdma_equal_slots")
    spec.tdma_equal_slots = parse_bool(key, value);
  else if (key == "out")
    setup.out_path = value;
  else
    throw std::runtime_error("config: unknown key '" + key + "'");
}

void load_config_file(SweepSetup& setup, const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file)
    throw std::runtime_error("config: cannot open " + path.string());
  for (const auto& [key, value] : parse_key_value_stream(file))
    apply_setting(setup, key, value);
}

}  // namespace ctnoma
