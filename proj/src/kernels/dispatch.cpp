#include <atomic>

#include "minorforge/common.hpp"
#include "minorforge/kernels.hpp"

namespace minorforge::kernels {

namespace {

struct Table {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*axpy2)(double, const double*, double, const double*, double*, std::size_t);
};

constexpr Table kScalarTable{Backend::kScalar, &scalar::dot, &scalar::axpy, &scalar::axpy2};
#if defined(MINORFORGE_HAVE_AVX2)
constexpr Table kAvx2Table{Backend::kAvx2, &avx2::dot, &avx2::axpy, &avx2::axpy2};
#endif
#if defined(MINORFORGE_HAVE_NEON)
constexpr Table kNeonTable{Backend::kNeon, &neon::dot, &neon::axpy, &neon::axpy2};
#endif

const Table* table_for(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return &kScalarTable;
    case Backend::kAvx2:
#if defined(MINORFORGE_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2Table;
#endif
      return nullptr;
    case Backend::kNeon:
#if defined(MINORFORGE_HAVE_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const Table* best_table() {
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (const Table* t = table_for(b)) return t;
  }
  return &kScalarTable;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{best_table()};
  return table;
}

}  // namespace

const char* to_string(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) { return table_for(b) != nullptr; }

Backend active_backend() { return current().load(std::memory_order_relaxed)->backend; }

void force_backend(Backend b) {
  const Table* t = table_for(b);
  if (t == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string("backend ") + to_string(b) + " unavailable");
  current().store(t, std::memory_order_relaxed);
}

void reset_backend() { current().store(best_table(), std::memory_order_relaxed); }

double dot(const double* x, const double* y, std::size_t n) {
  return current().load(std::memory_order_relaxed)->dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  current().load(std::memory_order_relaxed)->axpy(a, x, y, n);
}

void axpy2(double a, const double* x1, double b, const double* x2, double* y, std::size_t n) {
  current().load(std::memory_order_relaxed)->axpy2(a, x1, b, x2, y, n);
}

}  // namespace minorforge::kernels
