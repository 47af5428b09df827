#pragma once

#include <cstddef>

namespace oal::kernels {

enum class Backend { automatic, scalar, avx2 };

// Dense inner-loop primitives. Scalar implementations are the reference;
// the AVX2 variants must agree with them up to summation reorder.
struct Ops {
  // sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i max(x[i], 0)
  double (*pos_sum)(const double* x, std::size_t n);
  // y[i] += a*x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = a*x[i]
  void (*scale)(double a, const double* x, double* out, std::size_t n);
  // g[i] += p[i] - q[i]
  void (*acc_diff)(double* g, const double* p, const double* q, std::size_t n);
  // out[i] = clamp(c[i] + t*(p[i] - q[i]), 0, 1)
  void (*clip_step)(const double* c, const double* p, const double* q, double t,
                    double* out, std::size_t n);
  const char* name;
};

// Active backend. Resolved once: AVX2 when the CPU supports it, else scalar.
const Ops& ops();

// Scalar reference, always available.
const Ops& scalar_ops();

// Force a backend (tests). Throws std::runtime_error if unavailable.
void set_backend(Backend b);

bool avx2_available();

}  // namespace oal::kernels
