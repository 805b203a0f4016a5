#include "blurfisher/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "blurfisher/errors.hpp"

namespace blurfisher {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
    throw DomainError("config: '" + std::string(key) + "' expects a finite number, got '" +
                      std::string(value) + "'");
  }
  return out;
}

}  // namespace

void ModelConfig::validate() const {
  RetinalGeometry{receptors_per_degree, 1, 1}.validate();
  convention.validate();
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("config: gamma must be > 0");
  if (!(s_G > 0.0) || !std::isfinite(s_G)) throw DomainError("config: s_G must be > 0");
}

ModelConfig parse_config(std::string_view text) {
  ModelConfig cfg;
  std::optional<double> c;
  std::optional<double> k;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "receptors_per_degree") {
      cfg.receptors_per_degree = parse_number(key, value);
    } else if (key == "c") {
      c = parse_number(key, value);
    } else if (key == "k") {
      k = parse_number(key, value);
    } else if (key == "convention") {
      cfg.convention = SpreadConvention::named(value);
    } else if (key == "gamma") {
      cfg.gamma = parse_number(key, value);
    } else if (key == "s_G" || key == "s_g") {
      cfg.s_G = parse_number(key, value);
    } else {
      throw DomainError("config line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  if (c) cfg.convention = SpreadConvention::matched(*c);
  if (k) cfg.convention.k = *k;
  cfg.validate();
  return cfg;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace blurfisher
