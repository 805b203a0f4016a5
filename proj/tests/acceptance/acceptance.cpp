// Self-contained acceptance suite. Prints one PASS/FAIL/SKIP line per criterion,
// with indented detail lines; exits nonzero if any blocking criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blurfisher/blur.hpp"
#include "blurfisher/blur_estimator.hpp"
#include "blurfisher/discomfort.hpp"
#include "blurfisher/eval.hpp"
#include "blurfisher/fft.hpp"
#include "blurfisher/fisher.hpp"
#include "blurfisher/scenes.hpp"
#include "blurfisher/vrf.hpp"

using namespace blurfisher;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool blocking = true;
  bool skipped = false;
  bool ok = true;
  std::vector<std::string> details;

  void check(bool cond, const std::string& what) {
    details.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
    ok = ok && cond;
  }
  void info(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

LuminanceImage random_image(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealGrid g(n, n);
  for (auto& v : g) v = u(rng);
  return LuminanceImage::from_samples(std::move(g));
}

double psnr(const RealGrid& ref, const RealGrid& test) {
  double lo = ref.data()[0], hi = lo, mse = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    lo = std::min(lo, ref.data()[i]);
    hi = std::max(hi, ref.data()[i]);
    mse += std::pow(ref.data()[i] - test.data()[i], 2);
  }
  mse /= static_cast<double>(ref.size());
  return 10 * std::log10((hi - lo) * (hi - lo) / mse);
}

double rel_l2(const ComplexGrid& a, const ComplexGrid& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a.data()[i] - b.data()[i]);
    den += std::norm(b.data()[i]);
  }
  return std::sqrt(num / den);
}

// Inverts the isotropic Gaussian energy relation for s_B.
double spread_from_energy(double e, double s_G, const SpreadConvention& conv) {
  return std::sqrt(std::max(2 * kPi / (4 * conv.c * e) - s_G * s_G, 0.0));
}

double cartesian_astig_energy(double sh, double sv, double s_G, const SpreadConvention& conv, int n = 1200) {
  const double lim = std::sqrt(-std::log(1e-18) / (conv.c * 2 * s_G * s_G));
  const double h = 2 * lim / n;
  double s = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double f2 = -lim + h * j;
    for (int i = 0; i <= n; ++i) {
      const double f1 = -lim + h * i;
      const double b = std::exp(-conv.c * (sh * sh * f1 * f1 + sv * sv * f2 * f2));
      s += std::exp(-2 * conv.c * s_G * s_G * (f1 * f1 + f2 * f2)) * b * b;
    }
  }
  return s * h * h;
}

double trapezoid_disc_energy(double R, double s_G, const SpreadConvention& conv, std::size_t samples = 1'000'000) {
  const double rho_max = std::sqrt(-std::log(1e-16) / (2 * conv.c * s_G * s_G));
  const double h = rho_max / static_cast<double>(samples);
  double s = 0.0;
  for (std::size_t i = 1; i < samples; ++i) {
    const double rho = h * static_cast<double>(i);
    const double x = 2 * kPi * rho * R;
    const double b = 2 * std::cyl_bessel_j(1.0, x) / x;
    s += std::exp(-2 * conv.c * s_G * s_G * rho * rho) * b * b * rho;
  }
  return 2 * kPi * h * s;
}

constexpr double kSG = 2.5;

Criterion astig_anchor() {
  Criterion c{1, "astigmatic equivalence anchor"};
  Stopwatch t;
  const double s = equiv_spread_astig(4, 1, kSG);
  const double elapsed = t.seconds();
  c.check(std::abs(s - 2.54) <= 0.005, fmt("equiv_spread_astig(4, 1, 2.5) = %.5f, target 2.54 +- 0.005", s));
  const SpreadConvention conv;
  const double oracle = spread_from_energy(cartesian_astig_energy(4, 1, kSG, conv), kSG, conv);
  c.check(std::abs(s - oracle) <= 1e-3, fmt("2D Cartesian quadrature oracle %.6f, |diff| = %.2e <= 1e-3", oracle,
                                            std::abs(s - oracle)));
  c.check(elapsed < 1.0, fmt("runtime %.4f s < 1 s", elapsed));
  return c;
}

Criterion disc_anchors() {
  Criterion c{2, "disc equivalence anchors"};
  struct Named {
    const char* name;
    SpreadConvention conv;
  };
  const Named conventions[] = {{"pi", SpreadConvention::pi_form()},
                               {"unit", SpreadConvention::unit_form()},
                               {"stddev", SpreadConvention::stddev_form()},
                               {"angular", SpreadConvention::angular_form()}};
  bool any_convention = false;
  for (const auto& [name, conv] : conventions) {
    const double s6 = equiv_spread_disc(6.0, kSG, conv);
    const double s7 = equiv_spread_disc(7.0, kSG, conv);
    const bool both = std::abs(s6 - 3.1) <= 0.2 && std::abs(s7 - 3.4) <= 0.2;
    any_convention = any_convention || both;
    c.info(fmt("convention %-7s s_B(R=6) = %.3f (3.1 +- 0.2: %s), s_B(R=7) = %.3f (3.4 +- 0.2: %s)", name, s6,
               std::abs(s6 - 3.1) <= 0.2 ? "in" : "out", s7, std::abs(s7 - 3.4) <= 0.2 ? "in" : "out"));
  }
  c.check(any_convention, "both anchors inside tolerance under one convention");
  {
    // a free coefficient fitted to the two anchors; not a documented convention
    const auto conv = SpreadConvention::matched(22.08);
    c.info(fmt("fitted coefficient c = 22.08 (= %.3f pi^2, no physical meaning) would give %.3f and %.3f",
               22.08 / (kPi * kPi), equiv_spread_disc(6.0, kSG, conv), equiv_spread_disc(7.0, kSG, conv)));
  }

  std::vector<double> radii;
  for (double R = 2.0; R <= 10.0 + 1e-12; R += 0.5) radii.push_back(R);
  for (const auto& [name, conv] : {conventions[0], conventions[2]}) {
    Stopwatch t;
    const auto curve = disc_equivalence_curve(radii, kSG, conv);
    const double elapsed = t.seconds();
    double worst = 0.0, lo = 1e9, hi = -1e9;
    for (const auto& row : curve) {
      const double oracle = spread_from_energy(trapezoid_disc_energy(row.R, kSG, conv), kSG, conv);
      worst = std::max(worst, std::abs(row.s_B - oracle));
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
    c.check(worst <= 1e-4, fmt("convention %s: curve vs 1e6-sample trapezoid over R in [2, 10], max |diff| = %.2e", name,
                               worst));
    c.check(elapsed < 10.0, fmt("convention %s: curve runtime %.3f s < 10 s", name, elapsed));
    const bool bracket = lo >= 0.30 && hi <= 0.55;
    if (std::string(name) == "stddev")
      c.check(bracket, fmt("convention %s: s_B/R in [%.3f, %.3f], required within [0.30, 0.55]", name, lo, hi));
    else
      c.info(fmt("convention %s: s_B/R in [%.3f, %.3f]", name, lo, hi));
  }
  return c;
}

Criterion dipper() {
  Criterion c{3, "dipper minimum"};
  Stopwatch t;
  const double xi = dipper_minimum();
  const double elapsed = t.seconds();
  c.check(std::abs(xi - 1 / std::sqrt(2.0)) <= 1e-6,
          fmt("xi* = %.9f, |xi* - 1/sqrt(2)| = %.2e <= 1e-6", xi, std::abs(xi - 1 / std::sqrt(2.0))));
  c.check(elapsed < 0.1, fmt("runtime %.5f s < 0.1 s", elapsed));
  return c;
}

Criterion monte_carlo() {
  Criterion c{4, "Monte-Carlo PFI law"};
  Stopwatch t;
  const std::size_t images = 50, n = 512;
  double clean = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < images; ++i) {
    const auto img = synth_natural_image(1.0, n, 1000 + i);
    const auto D = fft::forward(img.samples);
    clean += spectral_pfi(D, img.geometry, kSG, BlurOtf::none());
    b1 += spectral_pfi(D, img.geometry, kSG, BlurOtf::gaussian(kSG));
    b2 += spectral_pfi(D, img.geometry, kSG, BlurOtf::gaussian(2 * kSG));
  }
  const double elapsed = t.seconds();
  const double r1 = b1 / clean, r2 = b2 / clean;
  c.check(std::abs(r1 - 0.5) <= 0.05, fmt("%zu images %zux%zu, s_B = s_G: ratio %.4f, target 0.5 +- 0.05 (model %.4f)",
                                          images, n, n, r1, expected_pfi_ratio(kSG, kSG)));
  c.check(std::abs(r2 - 0.2) <= 0.03,
          fmt("s_B = 2 s_G: ratio %.4f, target 0.2 +- 0.03 (model %.4f)", r2, expected_pfi_ratio(2 * kSG, kSG)));
  c.check(elapsed < 60.0, fmt("runtime %.2f s < 60 s", elapsed));
  return c;
}

Criterion parseval() {
  Criterion c{5, "Parseval identity"};
  Stopwatch t;
  double worst = 0.0;
  auto one = [&](const LuminanceImage& img) {
    const auto map = visual_map(img, make_vntf(kSG, FrequencyGrid(img.geometry), SpreadConvention{}));
    const auto lambda = detail_energy_map(map, DetailWindow::whole());
    const double spatial = lambda.lambda(0, 0) * img.geometry.cell_area();
    const double spectral = spectral_pfi(fft::forward(subtract_mean(img.samples)), img.geometry, kSG, BlurOtf::none());
    worst = std::max(worst, std::abs(spatial / spectral - 1.0));
  };
  for (unsigned s = 0; s < 10; ++s) one(random_image(128, 100 + s));
  for (unsigned s = 0; s < 3; ++s) one(render_dead_leaves(256, 200 + s));
  const double elapsed = t.seconds();
  c.check(worst <= 1e-6, fmt("10 random + 3 natural images, max relative gap %.2e <= 1e-6", worst));
  c.check(elapsed < 5.0, fmt("runtime %.3f s < 5 s", elapsed));
  return c;
}

Criterion steer_roundtrip() {
  Criterion c{6, "steerability and round trip"};
  double worst = 0.0;
  for (unsigned seed : {1u, 2u}) {
    const auto img = seed == 1 ? random_image(128, 7) : render_dead_leaves(128, 8);
    const auto k = make_vntf(kSG, FrequencyGrid(img.geometry), SpreadConvention{});
    const auto y = visual_map(img, k);
    for (int turns = 1; turns <= 3; ++turns) {
      const auto yr = visual_map(LuminanceImage::from_samples(rotate_quarter_turns(img.samples, turns)), k);
      // rotating the input equals rotating and steering the map
      const auto expect = steer(VisualMap{rotate_quarter_turns(y.values, turns), y.geometry, y.source_s_G}, turns * kPi / 2);
      worst = std::max(worst, rel_l2(yr.values, expect.values));
    }
  }
  c.check(worst <= 1e-10, fmt("quarter-turn steering invariant, max relative L2 %.2e <= 1e-10", worst));

  double min_psnr = 1e9;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto img = render_dead_leaves(256, seed);
    const auto k = make_vntf(kSG, FrequencyGrid(img.geometry), SpreadConvention{});
    const auto rec = invert_map(visual_map(img, k), k, 1e-6);
    min_psnr = std::min(min_psnr, psnr(subtract_mean(img.samples), rec.samples));
  }
  c.check(min_psnr >= 60.0, fmt("inversion at reg 1e-6 on 3 natural-scene proxies (camera optics sigma 0.5 px), "
                                "min PSNR %.1f dB >= 60 dB",
                                min_psnr));
  {
    DeadLeavesOptions raw;
    raw.optics_sigma_px = 0.0;
    const auto a = render_dead_leaves(256, 11, raw);
    const auto b = synth_natural_image(1.0, 256, 11);
    for (const auto* img : {&a, &b}) {
      const auto k = make_vntf(kSG, FrequencyGrid(img->geometry), SpreadConvention{});
      const auto rec = invert_map(visual_map(*img, k), k, 1e-6);
      c.info(fmt("%s: PSNR %.1f dB", img == &a ? "scene without camera optics" : "random-phase 1/f field",
                 psnr(subtract_mean(img->samples), rec.samples)));
    }
  }
  return c;
}

Criterion estimator() {
  Criterion c{7, "blur-estimator recovery"};
  Stopwatch t;
  const auto dl = render_dead_leaves(512, 31);
  const auto sp = synth_natural_image(1.0, 512, 32);
  for (const auto* ref : {&dl, &sp}) {
    for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
      const auto blurred = apply_otf(*ref, BlurOtf::gaussian(sigma * ref->geometry.pixel_pitch()),
                                     SpreadConvention::stddev_form());
      const double got = estimate_blur_sigma(*ref, blurred).sigma_px;
      c.check(std::abs(got - sigma) <= 0.05 * sigma + 0.05,
              fmt("%s sigma %.1f px: estimate %.4f px", ref == &dl ? "occlusion scene" : "1/f field", sigma, got));
    }
  }
  const double elapsed = t.seconds();
  c.check(elapsed < 5.0, fmt("runtime %.2f s < 5 s", elapsed));
  return c;
}

FitResult synthetic_fit(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 3.0);
  std::uniform_real_distribution<double> spread(0.2, 8.0);
  std::vector<double> s, y;
  for (int i = 0; i < 100; ++i) {
    s.push_back(spread(rng));
    y.push_back(sbdi(s.back(), DiscomfortParams{90.0, 1.6, kSG}) + noise(rng));
  }
  return fit_scale_params(s, y, kSG);
}

Criterion regression() {
  Criterion c{8, "regression recovery"};
  const FitResult f = synthetic_fit(2024);
  c.check(std::abs(f.a - 90.0) <= 4.5, fmt("a = %.3f, target 90 +- 5%%", f.a));
  c.check(std::abs(f.gamma - 1.6) <= 0.08, fmt("gamma = %.4f, target 1.6 +- 5%%", f.gamma));
  c.check(f.plcc >= 0.95, fmt("PLCC %.4f >= 0.95 (RMSE %.3f, n = %zu)", f.plcc, f.rmse, f.n));
  const FitResult g = synthetic_fit(2024);
  c.check(f.a == g.a && f.gamma == g.gamma && f.plcc == g.plcc, "identical result on a second run with the same seed");
  return c;
}

Criterion subjective_data() {
  Criterion c{9, "subjective databases"};
  const char* env = std::getenv("BLURFISHER_DATA_DIR");
  if (!env || !std::filesystem::is_directory(env)) {
    c.skipped = true;
    c.info("set BLURFISHER_DATA_DIR to a directory holding live_dbr2.csv, tid2013.csv, csiq.csv, live_md.csv, paired_comparison.csv");
    return c;
  }
  const std::filesystem::path dir(env);
  struct Expected {
    const char* file;
    double plcc, rmse, ratio;
  };
  const Expected table[] = {{"live_dbr2.csv", 0.96, 5.44, 0.57},
                            {"tid2013.csv", 0.92, 6.82, 0.43},
                            {"csiq.csv", 0.97, 7.47, 0.60},
                            {"live_md.csv", 0.83, 8.57, 0.76}};
  std::size_t found = 0;
  for (const auto& e : table) {
    if (!std::filesystem::exists(dir / e.file)) {
      c.info(fmt("%s not present", e.file));
      continue;
    }
    ++found;
    try {
      const auto report = run_evaluation(RatingManifest::load(dir / e.file));
      const auto& d = report.datasets.at(0);
      if (!d.fitted) {
        c.check(false, fmt("%s: fit failed: %s", e.file, d.error.c_str()));
        continue;
      }
      c.check(std::abs(d.fit.plcc - e.plcc) <= 0.05, fmt("%s: PLCC %.3f vs %.2f +- 0.05", e.file, d.fit.plcc, e.plcc));
      c.check(std::abs(d.fit.rmse - e.rmse) <= 2.0, fmt("%s: RMSE %.2f vs %.2f +- 2", e.file, d.fit.rmse, e.rmse));
      c.check(std::abs(d.fit.distance_ratio() - e.ratio) <= 0.1,
              fmt("%s: delta/delta0 %.3f vs %.2f +- 0.1", e.file, d.fit.distance_ratio(), e.ratio));
    } catch (const std::exception& ex) {
      c.check(false, fmt("%s: %s", e.file, ex.what()));
    }
  }
  if (std::filesystem::exists(dir / "paired_comparison.csv")) {
    ++found;
    try {
      const auto report = run_evaluation(RatingManifest::load(dir / "paired_comparison.csv"));
      const auto& d = report.datasets.at(0);
      c.check(d.fitted && d.fit.plcc >= 0.95, fmt("paired_comparison.csv: PLCC %.3f >= 0.95", d.fit.plcc));
      c.check(d.fitted && std::abs(d.fit.distance_ratio() - 0.6) <= 0.1,
              fmt("paired_comparison.csv: delta/delta0 %.3f vs 0.6 +- 0.1", d.fit.distance_ratio()));
    } catch (const std::exception& ex) {
      c.check(false, fmt("paired_comparison.csv: %s", ex.what()));
    }
  } else {
    c.info("paired_comparison.csv not present");
  }
  if (found == 0) c.skipped = true;
  return c;
}

Criterion vntf_shape() {
  Criterion c{10, "neural transfer function shape (non-blocking)"};
  c.blocking = false;
  const SpreadConvention conv = SpreadConvention::pi_form();
  const double peak = vntf_peak_frequency(kSG, conv);
  const double peak_cpd = cpam_to_cpd(peak);
  const double db = 20 * std::log10(std::abs(vntf_value(cpd_to_cpam(30.0), 0.0, kSG, conv)) /
                                    std::abs(vntf_value(peak, 0.0, kSG, conv)));
  c.check(peak_cpd >= 8.0 && peak_cpd <= 10.0, fmt("peak %.3f cycles/degree in [8, 10]", peak_cpd));
  c.check(db >= -45.0 && db <= -25.0, fmt("gain at 30 cycles/degree %.2f dB in [-45, -25]", db));
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> suite{astig_anchor, disc_anchors, dipper,    monte_carlo,
                                                       parseval,     steer_roundtrip, estimator, regression,
                                                       subjective_data, vntf_shape};
  bool failed = false;
  for (const auto& run : suite) {
    Criterion c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.details.push_back(std::string("FAIL exception: ") + e.what());
    }
    const char* verdict = c.skipped ? "SKIP" : c.ok ? "PASS" : "FAIL";
    std::printf("%s criterion %d: %s\n", verdict, c.id, c.title.c_str());
    for (const auto& d : c.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!c.skipped && !c.ok && c.blocking) failed = true;
  }
  return failed ? 1 : 0;
}
