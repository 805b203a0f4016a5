#include "blurfisher/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace blurfisher::fft {
namespace {

// Planner calls are not thread safe in FFTW; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(ComplexGrid& data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(data.height()), static_cast<int>(data.width()), buf,
                            buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

ComplexGrid forward(const ComplexGrid& in) {
  ComplexGrid out = in;
  transform(out, FFTW_FORWARD);
  return out;
}

ComplexGrid forward(const RealGrid& in) {
  ComplexGrid out(in.width(), in.height());
  for (std::size_t i = 0; i < in.size(); ++i) out.data()[i] = in.data()[i];
  transform(out, FFTW_FORWARD);
  return out;
}

ComplexGrid inverse(const ComplexGrid& in) {
  ComplexGrid out = in;
  transform(out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

RealGrid inverse_real(const ComplexGrid& in) {
  const ComplexGrid full = inverse(in);
  RealGrid out(full.width(), full.height());
  for (std::size_t i = 0; i < full.size(); ++i) out.data()[i] = full.data()[i].real();
  return out;
}

}  // namespace blurfisher::fft
