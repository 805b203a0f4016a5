#include "blurfisher/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <csetjmp>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "blurfisher/errors.hpp"

namespace blurfisher {
namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

struct PngPixels {
  std::size_t width = 0;
  std::size_t height = 0;
  int channels = 0;  // after expansion: 1 gray, 3 rgb
  int bit_depth = 8;
  std::vector<std::uint16_t> values;  // row-major, channels interleaved
};

struct PngError {
  char message[256] = {0};
};

// libpng reports errors through longjmp; the message is kept for the IoError.
void png_fail(png_structp png, png_const_charp msg) {
  auto* err = static_cast<PngError*>(png_get_error_ptr(png));
  if (err) std::snprintf(err->message, sizeof(err->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

// All C++ objects touched after setjmp are constructed before it.
PngPixels read_png(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw IoError(path.string() + " is not a PNG file");
  }
  PngError err;
  PngPixels px;
  std::vector<png_byte> raw;
  std::vector<png_bytep> rows;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_fail, png_warn);
  if (!png) throw IoError("png: cannot allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": " + err.message);
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const auto color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (depth == 16) png_set_swap(png);  // host little-endian order for uint16 rows
  png_read_update_info(png, info);

  px.width = png_get_image_width(png, info);
  px.height = png_get_image_height(png, info);
  px.channels = png_get_channels(png, info);
  px.bit_depth = png_get_bit_depth(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  raw.resize(rowbytes * px.height);
  rows.resize(px.height);
  for (std::size_t y = 0; y < px.height; ++y) rows[y] = raw.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t per_row = px.width * static_cast<std::size_t>(px.channels);
  px.values.resize(per_row * px.height);
  for (std::size_t y = 0; y < px.height; ++y) {
    if (px.bit_depth == 16) {
      for (std::size_t i = 0; i < per_row; ++i) {
        std::uint16_t v = 0;
        std::memcpy(&v, rows[y] + 2 * i, 2);
        px.values[y * per_row + i] = v;
      }
    } else {
      std::copy(rows[y], rows[y] + per_row, px.values.begin() + y * per_row);
    }
  }
  return px;
}

LuminanceImage read_png_luminance(const std::filesystem::path& path, bool linearize, double rpd) {
  const PngPixels px = read_png(path);
  const double maxval = px.bit_depth == 16 ? 65535.0 : 255.0;
  RealGrid g(px.width, px.height);
  for (std::size_t i = 0; i < px.width * px.height; ++i) {
    if (px.channels >= 3) {
      double lum = 0.0;
      const double w[3] = {0.2126, 0.7152, 0.0722};
      for (int c = 0; c < 3; ++c) {
        double v = px.values[i * px.channels + c] / maxval;
        lum += w[c] * (linearize ? srgb_to_linear(v) : v);
      }
      g.data()[i] = lum;
    } else {
      double v = px.values[i * px.channels] / maxval;
      g.data()[i] = linearize ? srgb_to_linear(v) : v;
    }
  }
  return LuminanceImage::from_samples(std::move(g), rpd);
}

// Netpbm header token reader that skips comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

LuminanceImage read_pgm_luminance(const std::filesystem::path& path, bool linearize, double rpd) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string magic = pnm_token(in);
  if (magic != "P5" && magic != "P2") throw IoError(path.string() + " is not a PGM file");
  std::size_t w = 0, h = 0;
  unsigned long maxval = 0;
  try {
    w = std::stoul(pnm_token(in));
    h = std::stoul(pnm_token(in));
    maxval = std::stoul(pnm_token(in));
  } catch (const std::exception&) {
    throw IoError(path.string() + ": malformed PGM header");
  }
  if (w == 0 || h == 0 || maxval == 0 || maxval > 65535) {
    throw IoError(path.string() + ": unsupported PGM dimensions or maxval");
  }
  RealGrid g(w, h);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (std::size_t i = 0; i < w * h; ++i) {
    unsigned long v = 0;
    if (magic == "P2") {
      const std::string t = pnm_token(in);
      if (t.empty()) throw IoError(path.string() + ": truncated PGM data");
      v = std::stoul(t);
    } else if (maxval < 256) {
      const int b = in.get();
      if (b == EOF) throw IoError(path.string() + ": truncated PGM data");
      v = static_cast<unsigned long>(b);
    } else {
      const int hi = in.get();
      const int lo = in.get();
      if (lo == EOF) throw IoError(path.string() + ": truncated PGM data");
      v = (static_cast<unsigned long>(hi) << 8) | static_cast<unsigned long>(lo);
    }
    const double e = std::min(1.0, v * scale);
    g.data()[i] = linearize ? srgb_to_linear(e) : e;
  }
  return LuminanceImage::from_samples(std::move(g), rpd);
}

std::uint16_t quantize(double v, bool encode, double maxval) {
  v = std::clamp(v, 0.0, 1.0);
  if (encode) v = linear_to_srgb(v);
  return static_cast<std::uint16_t>(std::lround(v * maxval));
}

void write_png_raw(const std::filesystem::path& path, std::size_t width, std::size_t height,
                   int color_type, int bit_depth, const std::vector<std::vector<png_byte>>& rows) {
  FilePtr file = open_file(path, "wb");
  PngError err;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_fail, png_warn);
  if (!png) throw IoError("png: cannot allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path.string() + ": " + err.message);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  // No timestamps or text chunks: output bytes depend only on the pixels.
  png_write_info(png, info);
  for (const auto& row : rows) png_write_row(png, const_cast<png_bytep>(row.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

LuminanceImage read_luminance(const std::filesystem::path& path, bool linearize,
                              double receptors_per_degree) {
  if (!std::filesystem::exists(path)) throw IoError("no such file: " + path.string());
  const std::string ext = lower_extension(path);
  if (ext == ".pgm" || ext == ".pnm") return read_pgm_luminance(path, linearize, receptors_per_degree);
  return read_png_luminance(path, linearize, receptors_per_degree);
}

void write_luminance(const std::filesystem::path& path, const RealGrid& samples, int bit_depth,
                     bool encode_srgb) {
  if (bit_depth != 8 && bit_depth != 16) throw DomainError("bit depth must be 8 or 16");
  const double maxval = bit_depth == 16 ? 65535.0 : 255.0;
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "P5\n" << samples.width() << ' ' << samples.height() << '\n'
        << static_cast<int>(maxval) << '\n';
    for (double v : samples) {
      const auto q = quantize(v, encode_srgb, maxval);
      if (bit_depth == 16) out.put(static_cast<char>(q >> 8));
      out.put(static_cast<char>(q & 0xff));
    }
    if (!out) throw IoError("write failed for " + path.string());
    return;
  }
  if (ext != ".png") throw IoError("unsupported image extension '" + ext + "' (expected .png or .pgm)");
  std::vector<std::vector<png_byte>> rows(samples.height());
  const std::size_t bpp = bit_depth == 16 ? 2 : 1;
  for (std::size_t y = 0; y < samples.height(); ++y) {
    rows[y].resize(samples.width() * bpp);
    for (std::size_t x = 0; x < samples.width(); ++x) {
      const auto q = quantize(samples(x, y), encode_srgb, maxval);
      if (bit_depth == 16) {
        rows[y][2 * x] = static_cast<png_byte>(q >> 8);
        rows[y][2 * x + 1] = static_cast<png_byte>(q & 0xff);
      } else {
        rows[y][x] = static_cast<png_byte>(q);
      }
    }
  }
  write_png_raw(path, samples.width(), samples.height(), PNG_COLOR_TYPE_GRAY, bit_depth, rows);
}

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image) {
  std::vector<std::vector<png_byte>> rows(image.height());
  for (std::size_t y = 0; y < image.height(); ++y) {
    rows[y].resize(image.width() * 3);
    for (std::size_t x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) rows[y][3 * x + c] = image(x, y)[c];
    }
  }
  write_png_raw(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 8, rows);
}

RgbImage read_rgb_png(const std::filesystem::path& path) {
  const PngPixels px = read_png(path);
  RgbImage out(px.width, px.height);
  const int shift = px.bit_depth == 16 ? 8 : 0;
  for (std::size_t i = 0; i < px.width * px.height; ++i) {
    for (int c = 0; c < 3; ++c) {
      const int src = px.channels >= 3 ? c : 0;
      out.data()[i][c] = static_cast<std::uint8_t>(px.values[i * px.channels + src] >> shift);
    }
  }
  return out;
}

}  // namespace blurfisher
