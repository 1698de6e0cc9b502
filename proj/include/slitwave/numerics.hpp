#pragma once

#include <complex>
#include <span>
#include <vector>

namespace slitwave {

using Complex = std::complex<double>;

/// Composite trapezoid rule on uniformly spaced samples.
double trapezoid(std::span<const double> f, double h);

/// ||a - b||_2 / ||b||_2.
double relative_l2(std::span<const double> a, std::span<const double> b);

std::vector<double> modulus_squared(std::span<const Complex> z);

}  // namespace slitwave
