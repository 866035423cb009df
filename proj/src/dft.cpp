#include "mixsum/dft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace mixsum {

namespace {
std::mutex planner_mutex;  // the FFTW planner is not thread-safe
}

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign) {
  const auto n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size());
  if (n == 0) return out;
  std::vector<std::complex<double>> buffer(in.begin(), in.end());
  auto* src = reinterpret_cast<fftw_complex*>(buffer.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, src, dst, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("dft: FFTW could not create a plan");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace mixsum
