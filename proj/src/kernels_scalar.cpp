#include "oal/kernels.hpp"

namespace oal::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double pos_sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] > 0.0 ? x[i] : 0.0;
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i];
}

void acc_diff_scalar(double* g, const double* p, const double* q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) g[i] += p[i] - q[i];
}

void clip_step_scalar(const double* c, const double* p, const double* q, double t,
                      double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = c[i] + t * (p[i] - q[i]);
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    out[i] = v;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{dot_scalar,   sum_scalar,      pos_sum_scalar, axpy_scalar,
                         scale_scalar, acc_diff_scalar, clip_step_scalar, "scalar"};
  return table;
}

}  // namespace oal::kernels
