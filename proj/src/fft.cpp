#include "capwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace capwave::fft {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on fresh
// arrays is. Plans are created once per size under a lock and never freed.
struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> real(static_cast<size_t>(n));
  std::vector<fftw_complex> cplx(static_cast<size_t>(n / 2 + 1));
  Plans p;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.r2c = fftw_plan_dft_r2c_1d(n, real.data(), cplx.data(), flags);
  p.c2r = fftw_plan_dft_c2r_1d(n, cplx.data(), real.data(), flags | FFTW_DESTROY_INPUT);
  if (!p.r2c || !p.c2r) throw std::runtime_error("fft: failed to create FFTW plan");
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(std::span<const double> in, std::span<std::complex<double>> out) {
  const int n = static_cast<int>(in.size());
  if (n < 2 || n % 2 != 0 || out.size() != static_cast<size_t>(n / 2 + 1))
    throw std::invalid_argument("fft::forward: size mismatch");
  const Plans& p = plans_for(n);
  std::vector<double> scratch(in.begin(), in.end());
  fftw_execute_dft_r2c(p.r2c, scratch.data(), reinterpret_cast<fftw_complex*>(out.data()));
  const double inv_n = 1.0 / n;
  for (auto& c : out) c *= inv_n;
}

void inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  const int n = static_cast<int>(out.size());
  if (n < 2 || n % 2 != 0 || in.size() != static_cast<size_t>(n / 2 + 1))
    throw std::invalid_argument("fft::inverse: size mismatch");
  const Plans& p = plans_for(n);
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace capwave::fft
