#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace slitwave::detail {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer allocate_fftw(std::size_t n);

/// Evaluates X_j = sum_{q=0}^{Q-1} a_q e^{i theta j q} for j = 0..J-1 by
/// Bluestein's convolution. Plans and the kernel spectrum are built once;
/// transform() may be called concurrently with distinct Workspace objects.
class ChirpZ {
 public:
  ChirpZ(std::size_t input_length, std::size_t output_length, double theta);
  ~ChirpZ();
  ChirpZ(const ChirpZ&) = delete;
  ChirpZ& operator=(const ChirpZ&) = delete;

  struct Workspace {
    FftwBuffer buffer;
  };
  Workspace make_workspace() const;

  std::size_t input_length() const { return input_length_; }
  std::size_t output_length() const { return output_length_; }

  void transform(std::span<const std::complex<double>> input, std::span<std::complex<double>> output,
                 Workspace& work) const;

 private:
  std::size_t input_length_;
  std::size_t output_length_;
  std::size_t fft_length_;
  std::vector<std::complex<double>> input_chirp_;   // e^{i theta q^2 / 2}
  std::vector<std::complex<double>> output_chirp_;  // e^{i theta j^2 / 2} / L
  FftwBuffer kernel_spectrum_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace slitwave::detail
