#pragma once

#include <cstddef>

// Dense vector kernels behind the eigensolver. Each backend computes the
// same quantities; only the summation order differs.
namespace minorforge::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

const char* to_string(Backend b);

/// Compiled in and supported by the running CPU.
bool backend_available(Backend b);

/// Backend used by the dispatching entry points below.
Backend active_backend();

/// Pins dispatch to `b` (tests and benchmarks). Throws kInvalidArgument
/// when the backend is unavailable.
void force_backend(Backend b);

/// Returns dispatch to the best available backend.
void reset_backend();

double dot(const double* x, const double* y, std::size_t n);
/// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);
/// y += a*x1 + b*x2
void axpy2(double a, const double* x1, double b, const double* x2, double* y, std::size_t n);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpy2(double a, const double* x1, double b, const double* x2, double* y, std::size_t n);
}  // namespace scalar

#if defined(MINORFORGE_HAVE_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpy2(double a, const double* x1, double b, const double* x2, double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(MINORFORGE_HAVE_NEON)
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpy2(double a, const double* x1, double b, const double* x2, double* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace minorforge::kernels
