#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blurfisher/errors.hpp"
#include "blurfisher/fft.hpp"
#include "blurfisher/fisher.hpp"
#include "blurfisher/scenes.hpp"
#include "blurfisher/vrf.hpp"

using namespace blurfisher;

namespace {

VisualMap random_map(std::size_t w, std::size_t h, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  VisualMap m{ComplexGrid(w, h), RetinalGeometry{60.0, w, h}, 2.5};
  for (auto& v : m.values) v = {n(rng), n(rng)};
  return m;
}

LuminanceImage random_image(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealGrid g(n, n);
  for (auto& v : g) v = u(rng);
  return LuminanceImage::from_samples(std::move(g));
}

}  // namespace

TEST(DetailEnergy, ZeroMapGivesZero) {
  VisualMap m{ComplexGrid(16, 16), RetinalGeometry::square(16), 2.5};
  const auto f = detail_energy_map(m, DetailWindow::gaussian(2.0, m.geometry));
  for (double v : f.lambda) EXPECT_EQ(v, 0.0);
}

TEST(DetailEnergy, ImpulseWithIdentityWindow) {
  VisualMap m{ComplexGrid(16, 16), RetinalGeometry::square(16), 2.5};
  m.values(5, 9) = Complex{0.6, 0.8};
  const auto f = detail_energy_map(m, DetailWindow::identity());
  for (std::size_t y = 0; y < 16; ++y)
    for (std::size_t x = 0; x < 16; ++x) EXPECT_NEAR(f.lambda(x, y), (x == 5 && y == 9) ? 1.0 : 0.0, 1e-15);
}

TEST(DetailEnergy, FftCorrelationMatchesDirectDoubleSum) {
  const auto m = random_map(32, 32, 1);
  const auto win = DetailWindow::gaussian(2.5, m.geometry);
  const auto f = detail_energy_map(m, win);
  const long r = static_cast<long>(win.radius());
  double worst = 0.0;
  for (long py = 0; py < 32; ++py) {
    for (long px = 0; px < 32; ++px) {
      double s = 0.0;
      for (long uy = -r; uy <= r; ++uy)
        for (long ux = -r; ux <= r; ++ux) {
          const double w = win.weights(static_cast<std::size_t>(ux + r), static_cast<std::size_t>(uy + r));
          s += w * w * std::norm(m.values.wrapped(px + ux, py + uy));
        }
      worst = std::max(worst, std::abs(f.lambda(static_cast<std::size_t>(px), static_cast<std::size_t>(py)) - s) / s);
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(DetailEnergy, WindowValidation) {
  const auto m = random_map(8, 8, 2);
  DetailWindow empty;
  EXPECT_THROW(detail_energy_map(m, empty), DomainError);
  DetailWindow zeros;
  zeros.weights = RealGrid(3, 3, 0.0);
  EXPECT_THROW(detail_energy_map(m, zeros), DomainError);
  EXPECT_THROW(detail_energy_map(m, DetailWindow::gaussian(8.0, m.geometry)), DomainError);
  EXPECT_THROW(DetailWindow::gaussian(0.0, m.geometry), DomainError);
}

TEST(DetailEnergy, DefaultWindowTruncatesAtThreeSigma) {
  const auto w = DetailWindow::gaussian(kDefaultWindowSigma, RetinalGeometry::square(128));
  EXPECT_EQ(w.radius(), 24u);
  EXPECT_DOUBLE_EQ(w.weights(24, 24), 1.0);
  EXPECT_DOUBLE_EQ(w.support_radius_arcmin, 24.0);
}

TEST(DetailEnergy, ContrastScalesQuadratically) {
  const auto img = random_image(64, 3);
  const auto k = make_vntf(2.5, FrequencyGrid(img.geometry), SpreadConvention{});
  RealGrid twice = img.samples;
  for (auto& v : twice) v *= 2.0;
  const auto win = DetailWindow::gaussian(4.0, img.geometry);
  const auto f1 = detail_energy_map(visual_map(img, k), win);
  const auto f2 = detail_energy_map(visual_map(LuminanceImage::from_samples(twice), k), win);
  for (std::size_t i = 0; i < f1.lambda.size(); ++i)
    EXPECT_NEAR(f2.lambda.data()[i], 4.0 * f1.lambda.data()[i], 1e-12 * 4.0 * f1.lambda.data()[i] + 1e-300);
}

TEST(PfiAndEmin, ArithmeticAndHomogeneity) {
  PfiField f;
  f.geometry = RetinalGeometry::square(2);
  f.lambda = RealGrid(2, 1);
  f.lambda(0, 0) = 4.0;
  f.lambda(1, 0) = 0.0;
  const auto a = pfi_and_emin(f, 1.0);
  EXPECT_DOUBLE_EQ(a.psi(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(a.e_min(0, 0), 0.5);
  EXPECT_TRUE(std::isinf(a.e_min(1, 0)));
  EXPECT_EQ(a.psi(1, 0), 0.0);
  const auto b = pfi_and_emin(f, 2.0);
  EXPECT_DOUBLE_EQ(b.psi(0, 0), 2.0);
  EXPECT_NEAR(b.e_min(0, 0), 0.5 * std::sqrt(2.0), 1e-15);
  EXPECT_THROW(pfi_and_emin(f, 0.0), DomainError);
  EXPECT_THROW(pfi_and_emin(f, -1.0), DomainError);
}

TEST(SpectralPfi, ParsevalAgainstSpatialSum) {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const auto img = seed == 2 ? render_dead_leaves(128, 5) : random_image(96, seed);
    const auto k = make_vntf(2.5, FrequencyGrid(img.geometry), SpreadConvention{});
    const auto map = visual_map(img, k);
    const double spectral = spectral_pfi(fft::forward(subtract_mean(img.samples)), img.geometry, 2.5, BlurOtf::none());
    const double spatial = spatial_energy(map);
    EXPECT_NEAR(spatial / spectral, 1.0, 1e-9);
    // whole-image window: lambda is the total energy at every position
    const auto whole = detail_energy_map(map, DetailWindow::whole());
    EXPECT_NEAR(whole.lambda(3, 7) * img.geometry.cell_area() / spectral, 1.0, 1e-9);
    // identity window: the per-position energies sum to the same total
    const auto point = detail_energy_map(map, DetailWindow::identity());
    double s = 0.0;
    for (double v : point.lambda) s += v;
    EXPECT_NEAR(s * img.geometry.cell_area() / spectral, 1.0, 1e-9);
  }
}

TEST(SpectralPfi, ZeroOtfAndMonotoneInBlur) {
  const auto img = random_image(64, 9);
  const auto D = fft::forward(subtract_mean(img.samples));
  // a disc at its first OTF zero everywhere is not available; a huge Gaussian is zero to underflow
  EXPECT_EQ(spectral_pfi(D, img.geometry, 2.5, BlurOtf::gaussian(1e6)), 0.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {0.0, 1.0, 2.0, 4.0}) {
    const double v = spectral_pfi(D, img.geometry, 2.5, BlurOtf::gaussian(s));
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_THROW(spectral_pfi(D, RetinalGeometry::square(32), 2.5, BlurOtf::none()), ShapeError);
  EXPECT_THROW(spectral_pfi(D, img.geometry, 2.5, BlurOtf::none(), 0.0), DomainError);
}

TEST(SpectralPfi, NeuralWeightEqualsSquaredVntf) {
  // |H|^2 == 4 pi^2 rho^2 |G|^2 with G = e^{-c s^2 rho^2}
  const SpreadConvention conv;
  for (double rho : {0.02, 0.1, 0.3}) {
    const double g = std::exp(-conv.c * 2.5 * 2.5 * rho * rho);
    EXPECT_NEAR(std::norm(vntf_value(rho * 0.6, rho * 0.8, 2.5, conv)), 4 * kPi * kPi * rho * rho * g * g, 1e-15);
  }
}

TEST(ExpectedPfiRatio, Values) {
  EXPECT_DOUBLE_EQ(expected_pfi_ratio(0.0, 2.5), 1.0);
  EXPECT_DOUBLE_EQ(expected_pfi_ratio(2.5, 2.5), 0.5);
  EXPECT_NEAR(expected_pfi_ratio(3.1, 2.5), 0.394073, 5e-7);
  EXPECT_THROW(expected_pfi_ratio(1.0, 0.0), DomainError);
  EXPECT_THROW(expected_pfi_ratio(-1.0, 2.5), DomainError);
}

TEST(ExpectedPfiRatio, DecreasingAndScaleInvariant) {
  double prev = 2.0;
  for (double s = 0.0; s < 20.0; s += 0.25) {
    const double r = expected_pfi_ratio(s, 2.5);
    EXPECT_LT(r, prev);
    prev = r;
    for (double t : {0.1, 3.0, 42.0}) EXPECT_NEAR(expected_pfi_ratio(t * s, t * 2.5), r, 1e-15);
  }
}

TEST(SynthNatural, SlopeDeterminismAndSeparation) {
  const auto a = synth_natural_image(1.0, 512, 77);
  EXPECT_NEAR(spectral_slope(a), -1.0, 0.05);
  const auto b = synth_natural_image(1.0, 512, 77);
  EXPECT_EQ(a.samples, b.samples);
  const double s139 = spectral_slope(synth_natural_image(1.39, 256, 1));
  const double s095 = spectral_slope(synth_natural_image(0.95, 256, 1));
  EXPECT_GT(s095 - s139, 0.3);
  double mean = 0.0, var = 0.0;
  for (double v : a.samples) mean += v;
  mean /= static_cast<double>(a.samples.size());
  for (double v : a.samples) var += (v - mean) * (v - mean);
  var /= static_cast<double>(a.samples.size());
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var, 1.0, 1e-12);
  EXPECT_THROW(synth_natural_image(0.0, 64, 1), DomainError);
  EXPECT_THROW(synth_natural_image(1.0, 8, 1), DomainError);
}

TEST(SynthNatural, AnisotropicProfile) {
  NaturalSpectrumModel m;
  m.azimuth_profile = [](double t) { return 1.0 + 0.5 * std::cos(2 * t); };
  EXPECT_NEAR(m.azimuth_integral(), 2 * kPi, 1e-12);
  const auto img = synth_natural_image(m, 64, 3);
  EXPECT_EQ(img.width(), 64u);
  NaturalSpectrumModel bad;
  bad.azimuth_profile = [](double) { return -1.0; };
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(MonteCarloPfiLaw, SmallSampleRatio) {
  double blurred = 0.0, clean = 0.0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto img = synth_natural_image(1.0, 256, 500 + seed);
    const auto D = fft::forward(img.samples);
    clean += spectral_pfi(D, img.geometry, 2.5, BlurOtf::none());
    blurred += spectral_pfi(D, img.geometry, 2.5, BlurOtf::gaussian(2.5));
  }
  EXPECT_NEAR(blurred / clean, 0.5, 0.05);
}

TEST(ApplyOtf, GaussianPreservesMeanAndIdentityIsExact) {
  const auto img = random_image(32, 4);
  const auto same = apply_otf(img, BlurOtf::none());
  for (std::size_t i = 0; i < img.samples.size(); ++i) EXPECT_NEAR(same.samples.data()[i], img.samples.data()[i], 1e-14);
  const auto b = apply_otf(img, BlurOtf::gaussian(3.0));
  EXPECT_NEAR(mean_of(b.samples), mean_of(img.samples), 1e-14);
}
