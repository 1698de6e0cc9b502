#include "chirp_z.hpp"

#include <cmath>
#include <mutex>
#include <new>

namespace slitwave::detail {
namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t good_fft_length(std::size_t minimum) {
  std::size_t n = 1;
  while (n < minimum) n <<= 1;
  return n;
}

// e^{i sign theta r^2 / 2} with r^2 reduced exactly in integers first.
std::complex<double> chirp(double theta, long long r, double sign) {
  const long double r2 = static_cast<long double>(r) * static_cast<long double>(r);
  return std::polar(1.0, static_cast<double>(sign * 0.5L * theta * r2));
}

}  // namespace

FftwBuffer allocate_fftw(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

ChirpZ::ChirpZ(std::size_t input_length, std::size_t output_length, double theta)
    : input_length_(input_length),
      output_length_(output_length),
      fft_length_(good_fft_length(input_length + output_length - 1)),
      kernel_spectrum_(allocate_fftw(fft_length_)) {
  const std::size_t L = fft_length_;
  input_chirp_.resize(input_length_);
  for (std::size_t q = 0; q < input_length_; ++q) input_chirp_[q] = chirp(theta, static_cast<long long>(q), 1.0);
  output_chirp_.resize(output_length_);
  for (std::size_t j = 0; j < output_length_; ++j)
    output_chirp_[j] = chirp(theta, static_cast<long long>(j), 1.0) / static_cast<double>(L);

  // Kernel b_r = e^{-i theta r^2 / 2} for r in [-(Q-1), J-1], wrapped circularly.
  auto* kernel = kernel_spectrum_.get();
  for (std::size_t i = 0; i < L; ++i) kernel[i][0] = kernel[i][1] = 0.0;
  for (std::size_t j = 0; j < output_length_; ++j) {
    const auto b = chirp(theta, static_cast<long long>(j), -1.0);
    kernel[j][0] = b.real();
    kernel[j][1] = b.imag();
  }
  for (std::size_t q = 1; q < input_length_; ++q) {
    const auto b = chirp(theta, static_cast<long long>(q), -1.0);
    kernel[L - q][0] = b.real();
    kernel[L - q][1] = b.imag();
  }

  FftwBuffer scratch = allocate_fftw(L);
  {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_1d(static_cast<int>(L), scratch.get(), scratch.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(static_cast<int>(L), scratch.get(), scratch.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute_dft(forward_, kernel, kernel);
}

ChirpZ::~ChirpZ() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
}

ChirpZ::Workspace ChirpZ::make_workspace() const { return {allocate_fftw(fft_length_)}; }

void ChirpZ::transform(std::span<const std::complex<double>> input, std::span<std::complex<double>> output,
                       Workspace& work) const {
  fftw_complex* buf = work.buffer.get();
  const std::size_t L = fft_length_;
  for (std::size_t q = 0; q < input_length_; ++q) {
    const auto a = input[q] * input_chirp_[q];
    buf[q][0] = a.real();
    buf[q][1] = a.imag();
  }
  for (std::size_t q = input_length_; q < L; ++q) buf[q][0] = buf[q][1] = 0.0;
  fftw_execute_dft(forward_, buf, buf);
  const fftw_complex* kernel = kernel_spectrum_.get();
  for (std::size_t i = 0; i < L; ++i) {
    const double re = buf[i][0] * kernel[i][0] - buf[i][1] * kernel[i][1];
    const double im = buf[i][0] * kernel[i][1] + buf[i][1] * kernel[i][0];
    buf[i][0] = re;
    buf[i][1] = im;
  }
  fftw_execute_dft(backward_, buf, buf);
  for (std::size_t j = 0; j < output_length_; ++j)
    output[j] = std::complex<double>(buf[j][0], buf[j][1]) * output_chirp_[j];
}

}  // namespace slitwave::detail
