#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on x86-64,
// an AVX2+FMA variant; the variant is picked once at runtime from CPUID and can
// be forced with EIT_QHE_ISA=scalar|avx2.

#include <cstddef>
#include <span>
#include <string_view>

namespace eitqhe::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available();

/// ISA used by the dispatching entry points below.
Isa active_isa();

/// y = A x for a dense row-major n x n matrix.
void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y,
            std::size_t n);

/// Classical RK4 on independent scalar ODEs dB/dz = source - kappa * B,
/// B(0) = 0, one per lane, lane i using step h[i]. out holds (steps + 1) rows
/// of `lanes` values, row k being B at z = k h.
void rk4_linear(std::span<const double> kappa, std::span<const double> source,
                std::span<const double> h, std::size_t steps, std::span<double> out);

// Explicit variants, for equivalence testing.
namespace scalar {
void matvec(const double* a, const double* x, double* y, std::size_t n);
void rk4_linear(const double* kappa, const double* source, const double* h, std::size_t lanes,
                std::size_t steps, double* out);
}  // namespace scalar

namespace avx2 {
void matvec(const double* a, const double* x, double* y, std::size_t n);
void rk4_linear(const double* kappa, const double* source, const double* h, std::size_t lanes,
                std::size_t steps, double* out);
}  // namespace avx2

}  // namespace eitqhe::kernels
