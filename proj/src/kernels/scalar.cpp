#include "minorforge/kernels.hpp"

namespace minorforge::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy2(double a, const double* x1, double b, const double* x2, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x1[i] + b * x2[i];
}

}  // namespace minorforge::kernels::scalar
