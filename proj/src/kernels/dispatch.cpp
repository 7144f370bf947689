#include <cstdlib>
#include <stdexcept>
#include <string>

#include "eitqhe/kernels.hpp"

namespace eitqhe::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(EITQHE_HAVE_AVX2)
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return ok;
#else
  return false;
#endif
}

namespace {

Isa select_isa() {
  if (const char* forced = std::getenv("EIT_QHE_ISA")) {
    const std::string v(forced);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && avx2_available()) return Isa::Avx2;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y,
            std::size_t n) {
  if (a.size() < n * n || x.size() < n || y.size() < n)
    throw std::invalid_argument("matvec: span too small");
#if defined(EITQHE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::matvec(a.data(), x.data(), y.data(), n);
#endif
  scalar::matvec(a.data(), x.data(), y.data(), n);
}

void rk4_linear(std::span<const double> kappa, std::span<const double> source,
                std::span<const double> h, std::size_t steps, std::span<double> out) {
  const std::size_t lanes = kappa.size();
  if (source.size() != lanes || h.size() != lanes || out.size() < (steps + 1) * lanes)
    throw std::invalid_argument("rk4_linear: inconsistent spans");
#if defined(EITQHE_HAVE_AVX2)
  if (active_isa() == Isa::Avx2)
    return avx2::rk4_linear(kappa.data(), source.data(), h.data(), lanes, steps, out.data());
#endif
  scalar::rk4_linear(kappa.data(), source.data(), h.data(), lanes, steps, out.data());
}

#if !defined(EITQHE_HAVE_AVX2)
namespace avx2 {
void matvec(const double* a, const double* x, double* y, std::size_t n) {
  scalar::matvec(a, x, y, n);
}
void rk4_linear(const double* kappa, const double* source, const double* h, std::size_t lanes,
                std::size_t steps, double* out) {
  scalar::rk4_linear(kappa, source, h, lanes, steps, out);
}
}  // namespace avx2
#endif

}  // namespace eitqhe::kernels
