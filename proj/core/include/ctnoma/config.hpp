#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "ctnoma/sweep.hpp"

namespace ctnoma {

/// A sweep plus where to write it; what the CLI assembles from defaults,
/// config file and flags (in that order, later wins).
struct SweepSetup {
  SweepSpec spec;
  std::string out_path = "sweep.csv";
  bool values_explicit = false;  // set once values came from file or flag
};

/// Parses a flat "key = value" stream. '#' starts a comment, blank lines
/// are skipped, keys and values are trimmed. Malformed lines throw
/// std::runtime_error naming the line number.
std::vector<std::pair<std::string, std::string>> parse_key_value_stream(
    std::istream& in);

/// Applies one setting; throws std::runtime_error on an unknown key or an
/// unparsable value.
void apply_setting(SweepSetup& setup, const std::string& key,
                   const std::string& value);

void load_config_file(SweepSetup& setup, const std::filesystem::path& path);

std::vector<Protocol> parse_protocol_list(const std::string& text);
std::vector<double> parse_value_list(const std::string& text);
SweepVariable parse_sweep_variable(const std::string& text);

/// Built-in grids: max-energy sweeps step 0.5..3.0 J, payload sweeps step
/// 0.2..1.0 Mbit.
std::vector<double> default_sweep_values(SweepVariable variable);

}  // namespace ctnoma
