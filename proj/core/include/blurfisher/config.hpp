#pragma once

#include <filesystem>
#include <string_view>

#include "blurfisher/units.hpp"

namespace blurfisher {

inline constexpr double kDefaultNeuralSpread = 2.5;  // arcmin

/// Model settings shared by the library entry points and the CLI.
struct ModelConfig {
  double receptors_per_degree = 60.0;
  SpreadConvention convention{};
  double gamma = 1.0;
  double s_G = kDefaultNeuralSpread;

  void validate() const;
};

/// Parses `key = value` lines. Recognized keys: receptors_per_degree, c, k,
/// convention, gamma, s_G. `#` starts a comment. Setting `c` without `k`
/// derives the matched k.
ModelConfig parse_config(std::string_view text);
ModelConfig load_config(const std::filesystem::path& path);

}  // namespace blurfisher
