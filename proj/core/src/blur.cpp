#include "blurfisher/blur.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>

#include "blurfisher/bessel.hpp"
#include "blurfisher/errors.hpp"
#include "blurfisher/quadrature.hpp"

namespace blurfisher {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(what) + " must be non-negative, got " + std::to_string(v));
  }
}

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError(std::string(what) + " must be positive, got " + std::to_string(v));
  }
}

// Isotropic |B|^2 as a function of rho alone; only valid when is_isotropic().
double radial_power(const BlurOtf& otf, double rho, const SpreadConvention& conv) {
  return std::norm(otf_eval(otf, rho, 0.0, conv));
}

// Largest disc radius among the members, used to size quadrature panels.
double oscillation_radius(const BlurOtf& otf) {
  return std::visit(overloaded{
                        [](const Disc& d) { return d.R; },
                        [](const Product& p) {
                          double r = 0.0;
                          for (const auto& m : p.members) r = std::max(r, oscillation_radius(m));
                          return r;
                        },
                        [](const auto&) { return 0.0; },
                    },
                    otf.variant);
}

double parse_field(std::string_view s, std::string_view whole) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError("cannot parse OTF spec '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

bool BlurOtf::is_isotropic() const {
  return std::visit(overloaded{
                        [](const IsotropicGaussian&) { return true; },
                        [](const Disc&) { return true; },
                        [](const Translation&) { return true; },  // |B| = 1
                        [](const AstigmaticGaussian& a) { return a.s_H == a.s_V; },
                        [](const Product& p) {
                          for (const auto& m : p.members) {
                            if (!m.is_isotropic()) return false;
                          }
                          return true;
                        },
                    },
                    variant);
}

void BlurOtf::validate() const {
  std::visit(overloaded{
                 [](const IsotropicGaussian& g) { require_nonneg(g.s_B, "s_B"); },
                 [](const AstigmaticGaussian& a) {
                   require_nonneg(a.s_H, "s_H");
                   require_nonneg(a.s_V, "s_V");
                 },
                 [](const Disc& d) { require_nonneg(d.R, "disc radius"); },
                 [](const Translation& t) {
                   if (!std::isfinite(t.dx) || !std::isfinite(t.dy)) {
                     throw DomainError("translation must be finite");
                   }
                 },
                 [](const Product& p) {
                   for (const auto& m : p.members) m.validate();
                 },
             },
             variant);
}

std::string BlurOtf::describe() const {
  std::ostringstream ss;
  std::visit(overloaded{
                 [&](const IsotropicGaussian& g) { ss << "gauss:" << g.s_B; },
                 [&](const AstigmaticGaussian& a) { ss << "astig:" << a.s_H << ':' << a.s_V; },
                 [&](const Disc& d) { ss << "disc:" << d.R; },
                 [&](const Translation& t) { ss << "shift:" << t.dx << ':' << t.dy; },
                 [&](const Product& p) {
                   if (p.members.empty()) ss << "none";
                   for (std::size_t i = 0; i < p.members.size(); ++i) {
                     if (i) ss << ',';
                     ss << p.members[i].describe();
                   }
                 },
             },
             variant);
  return ss.str();
}

BlurOtf parse_otf(std::string_view spec) {
  if (spec.find_first_not_of(" \t") == std::string_view::npos) throw DomainError("empty OTF specification");
  std::vector<BlurOtf> members;
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    std::vector<std::string_view> parts;
    std::string_view r = item;
    while (true) {
      const auto colon = r.find(':');
      parts.push_back(r.substr(0, colon));
      if (colon == std::string_view::npos) break;
      r = r.substr(colon + 1);
    }
    const auto kind = parts[0];
    auto need = [&](std::size_t n) {
      if (parts.size() != n + 1) {
        throw DomainError("OTF item '" + std::string(item) + "' expects " + std::to_string(n) +
                          " parameter(s)");
      }
    };
    if (kind == "none") {
      need(0);
    } else if (kind == "gauss") {
      need(1);
      members.push_back(BlurOtf::gaussian(parse_field(parts[1], spec)));
    } else if (kind == "astig") {
      need(2);
      members.push_back(BlurOtf::astigmatic(parse_field(parts[1], spec), parse_field(parts[2], spec)));
    } else if (kind == "disc") {
      need(1);
      members.push_back(BlurOtf::disc(parse_field(parts[1], spec)));
    } else if (kind == "shift") {
      need(2);
      members.push_back(BlurOtf::translation(parse_field(parts[1], spec), parse_field(parts[2], spec)));
    } else {
      throw DomainError("unknown OTF kind '" + std::string(kind) + "'");
    }
  }
  BlurOtf out = members.size() == 1 ? members.front() : BlurOtf::product(std::move(members));
  out.validate();
  return out;
}

Complex otf_eval(const BlurOtf& otf, double f1, double f2, const SpreadConvention& conv) {
  return std::visit(
      overloaded{
          [&](const IsotropicGaussian& g) {
            return Complex(std::exp(-conv.c * g.s_B * g.s_B * (f1 * f1 + f2 * f2)), 0.0);
          },
          [&](const AstigmaticGaussian& a) {
            return Complex(std::exp(-conv.c * (a.s_H * a.s_H * f1 * f1 + a.s_V * a.s_V * f2 * f2)), 0.0);
          },
          [&](const Disc& d) { return Complex(jinc(2.0 * kPi * std::hypot(f1, f2) * d.R), 0.0); },
          [&](const Translation& t) { return std::polar(1.0, -2.0 * kPi * (f1 * t.dx + f2 * t.dy)); },
          [&](const Product& p) {
            Complex v{1.0, 0.0};
            for (const auto& m : p.members) v *= otf_eval(m, f1, f2, conv);
            return v;
          },
      },
      otf.variant);
}

ComplexGrid otf_grid(const BlurOtf& otf, const FrequencyGrid& grid, const SpreadConvention& conv) {
  ComplexGrid out(grid.width(), grid.height());
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < grid.width(); ++x) out(x, y) = otf_eval(otf, grid.f1(x), grid.f2(y), conv);
  }
  return out;
}

double gaussian_weighted_energy(double s_B, double s_G, const SpreadConvention& conv) {
  require_positive(s_G, "s_G");
  require_nonneg(s_B, "s_B");
  return 2.0 * kPi / (4.0 * conv.c * (s_G * s_G + s_B * s_B));
}

double weighted_otf_energy(const BlurOtf& otf, double s_G, const SpreadConvention& conv,
                           const EnergyOptions& options) {
  require_positive(s_G, "s_G");
  conv.validate();
  otf.validate();
  const double a = 2.0 * conv.c * s_G * s_G;
  const double rho_max = std::sqrt(-std::log(options.weight_cutoff) / a);
  const double R = oscillation_radius(otf);
  const double panel = R > 0.0 ? 1.0 / (8.0 * R) : rho_max / 8.0;
  QuadratureOptions q{options.rel_tol, 0.0, options.max_subdivisions};

  std::function<double(double)> radial;
  if (otf.is_isotropic()) {
    radial = [&](double rho) { return 2.0 * kPi * std::exp(-a * rho * rho) * radial_power(otf, rho, conv) * rho; };
  } else {
    const std::size_t n = options.azimuth_nodes;
    radial = [&, n](double rho) {
      const double ring = integrate_periodic(
          [&](double th) { return std::norm(otf_eval(otf, rho * std::cos(th), rho * std::sin(th), conv)); }, n);
      return std::exp(-a * rho * rho) * ring * rho;
    };
  }
  const QuadratureResult r = integrate_adaptive(radial, 0.0, rho_max, q, panel);
  if (!r.converged) {
    throw NumericError("weighted OTF energy for " + otf.describe() + " did not converge: " + r.diagnostics());
  }
  return r.value;
}

double equiv_spread_generic(const BlurOtf& otf, double s_G, const SpreadConvention& conv,
                            const EnergyOptions& options) {
  const double energy = weighted_otf_energy(otf, s_G, conv, options);
  const double unblurred = gaussian_weighted_energy(0.0, s_G, conv);
  if (energy > unblurred * (1.0 + 1e-9)) {
    throw DomainError("OTF " + otf.describe() + " carries more weighted energy than no blur (" +
                      std::to_string(energy) + " > " + std::to_string(unblurred) + ")");
  }
  double s2 = 2.0 * kPi / (4.0 * conv.c * energy) - s_G * s_G;
  // below the quadrature's resolution
  if (std::abs(s2) <= 1e-12 * s_G * s_G) s2 = 0.0;
  if (s2 < 0.0) {
    if (s2 < -1e-9 * s_G * s_G) throw DomainError("negative equivalent spread for " + otf.describe());
    s2 = 0.0;
  }
  return std::sqrt(s2);
}

double equiv_spread_disc(double R, double s_G, const SpreadConvention& conv) {
  require_nonneg(R, "disc radius");
  require_positive(s_G, "s_G");
  if (R == 0.0) return 0.0;
  return equiv_spread_generic(BlurOtf::disc(R), s_G, conv);
}

double equiv_spread_astig(double s_H, double s_V, double s_G) {
  require_nonneg(s_H, "s_H");
  require_nonneg(s_V, "s_V");
  require_positive(s_G, "s_G");
  const double g2 = s_G * s_G;
  const double h2 = s_H * s_H;
  const double v2 = s_V * s_V;
  const double inner = std::sqrt(g2 * g2 + g2 * (h2 + v2) + h2 * v2);
  return std::sqrt(std::max(0.0, inner - g2));
}

void DefocusParams::validate() const {
  require_positive(pupil_mm, "pupil diameter");
  if (!std::isfinite(diopters)) throw DomainError("defocus must be finite");
}

double defocus_radius(const DefocusParams& params) {
  params.validate();
  return 1.71 * params.pupil_mm * std::fabs(params.diopters);
}

double defocus_spread(const DefocusParams& params) {
  params.validate();
  return 0.64 * params.pupil_mm * std::fabs(params.diopters);
}

std::vector<EquivalenceRow> disc_equivalence_curve(const std::vector<double>& radii, double s_G,
                                                   const SpreadConvention& conv) {
  std::vector<EquivalenceRow> rows;
  rows.reserve(radii.size());
  for (double R : radii) {
    const double s = equiv_spread_disc(R, s_G, conv);
    rows.push_back({R, s, R > 0.0 ? s / R : 0.0});
  }
  return rows;
}

}  // namespace blurfisher
