#include "eitqhe/kernels.hpp"

namespace eitqhe::kernels::scalar {

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = a + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void rk4_linear(const double* kappa, const double* source, const double* h, std::size_t lanes,
                std::size_t steps, double* out) {
  for (std::size_t i = 0; i < lanes; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double* prev = out + k * lanes;
    double* next = out + (k + 1) * lanes;
    for (std::size_t i = 0; i < lanes; ++i) {
      const double b = prev[i], kap = kappa[i], s = source[i], dz = h[i];
      const double k1 = s - kap * b;
      const double k2 = s - kap * (b + 0.5 * dz * k1);
      const double k3 = s - kap * (b + 0.5 * dz * k2);
      const double k4 = s - kap * (b + dz * k3);
      next[i] = b + dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
}

}  // namespace eitqhe::kernels::scalar
