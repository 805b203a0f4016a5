#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "blurfisher/errors.hpp"
#include "blurfisher/image_io.hpp"

using namespace blurfisher;

namespace {

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

RealGrid ramp(std::size_t w, std::size_t h) {
  RealGrid g(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) g(x, y) = static_cast<double>(x + y) / static_cast<double>(w + h - 2);
  return g;
}

}  // namespace

TEST(ImageIo, Png16RoundTripLinear) {
  const auto g = ramp(33, 17);
  write_luminance(tmp("bf16.png"), g, 16, false);
  const auto back = read_luminance(tmp("bf16.png"), false);
  ASSERT_EQ(back.width(), 33u);
  ASSERT_EQ(back.height(), 17u);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(back.samples.data()[i], g.data()[i], 1.0 / 65535.0);
}

TEST(ImageIo, SrgbEncodeDecodeRoundTrip) {
  const auto g = ramp(16, 16);
  write_luminance(tmp("bfsrgb.png"), g, 16, true);
  const auto back = read_luminance(tmp("bfsrgb.png"), true);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(back.samples.data()[i], g.data()[i], 1e-4);
}

TEST(ImageIo, PgmRoundTripAndAscii) {
  const auto g = ramp(9, 5);
  write_luminance(tmp("bf.pgm"), g, 8, false);
  const auto back = read_luminance(tmp("bf.pgm"), false);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(back.samples.data()[i], g.data()[i], 0.5 / 255.0 + 1e-12);
  {
    std::ofstream out(tmp("bfa.pgm"));
    out << "P2\n# comment\n3 2\n10\n0 5 10\n10 5 0\n";
  }
  const auto a = read_luminance(tmp("bfa.pgm"), false);
  EXPECT_DOUBLE_EQ(a.samples(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(a.samples(0, 1), 1.0);
}

TEST(ImageIo, RgbPngReducedToLuminance) {
  RgbImage rgb(4, 2, Rgb8{255, 0, 0});
  write_rgb_png(tmp("bfrgb.png"), rgb);
  const auto back = read_rgb_png(tmp("bfrgb.png"));
  EXPECT_EQ(back(3, 1), (Rgb8{255, 0, 0}));
  const auto lum = read_luminance(tmp("bfrgb.png"), true);
  EXPECT_NEAR(lum.samples(0, 0), 0.2126, 1e-4);
}

TEST(ImageIo, DeterministicBytes) {
  const auto g = ramp(20, 20);
  write_luminance(tmp("bfd1.png"), g);
  write_luminance(tmp("bfd2.png"), g);
  std::ifstream a(tmp("bfd1.png"), std::ios::binary), b(tmp("bfd2.png"), std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_EQ(sa, sb);
}

TEST(ImageIo, Errors) {
  EXPECT_THROW(read_luminance("/nonexistent/x.png"), IoError);
  {
    std::ofstream out(tmp("bfbad.png"), std::ios::binary);
    out << "not a png at all";
  }
  EXPECT_THROW(read_luminance(tmp("bfbad.png")), IoError);
  EXPECT_THROW(write_luminance(tmp("bf.tiff"), ramp(2, 2)), IoError);
  EXPECT_THROW(write_luminance("/nonexistent/dir/x.png", ramp(2, 2)), IoError);
}
