#pragma once

// Full master equation for the driven Lambda atom with spontaneously
// generated coherence. This is the non-perturbative route: every closed form
// in the library is checked against it.
//
// Sign convention: the probe enters the Hamiltonian as +(g/2)(|3><1| + h.c.)
// and the control field as -(Omega_c/2)(|3><2| + h.c.). With this choice
// Im rho13 < 0 is probe gain and Im(g rho13) = sigma_A rho11 - sigma_E (rho22 + rho33).

#include <Eigen/Dense>
#include <complex>

#include "eitqhe/model.hpp"

namespace eitqhe {

using Complex = std::complex<double>;

/// 3x3 density matrix; entry (i, j) is rho_{i+1, j+1}.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Eigen::Matrix3cd::Zero()) {}
  explicit DensityMatrix(const Eigen::Matrix3cd& m) : m_(m) {}

  static DensityMatrix ground() {
    DensityMatrix d;
    d.m_(0, 0) = 1.0;
    return d;
  }

  const Eigen::Matrix3cd& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  Complex& operator()(int i, int j) { return m_(i, j); }

  Complex trace() const { return m_.trace(); }
  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  Eigen::Matrix3cd m_;
};

/// Right-hand side of the master equation, written out entry by entry.
/// `deltaOmega31` is the probe detuning; the two-photon detuning is
/// params.deltaOmega21 + deltaOmega31.
Eigen::Matrix3cd master_equation_rhs(const SystemParams& params, const DerivedRates& rates,
                                     double deltaOmega31, const Eigen::Matrix3cd& rho);

using RealMatrix18 = Eigen::Matrix<double, 18, 18, Eigen::RowMajor>;
using RealVector18 = Eigen::Matrix<double, 18, 1>;

/// Real coordinates of a 3x3 complex matrix: x[3i+j] = Re rho_ij, x[9+3i+j] = Im rho_ij.
RealVector18 to_coordinates(const Eigen::Matrix3cd& rho);
Eigen::Matrix3cd from_coordinates(const RealVector18& x);

/// Dense real-linear map on the 18 density-matrix coordinates, together with
/// the parameters it was built from.
struct Generator {
  RealMatrix18 matrix;
  SystemParams params;
  DerivedRates rates;
  double deltaOmega31 = 0.0;

  Eigen::Matrix3cd apply(const Eigen::Matrix3cd& rho) const;
  double norm() const { return matrix.norm(); }
};

/// Accepts Omega_c = 0; all other parameter invariants are enforced.
Generator build_generator(const SystemParams& params, const DerivedRates& rates,
                          double deltaOmega31);

/// Rank of the generator with the trace constraint rows appended (18 means a
/// unique steady state). Relative singular-value threshold 1e-12.
int constrained_rank(const Generator& gen);

/// Unique steady state via least squares on the trace-augmented system.
/// Throws DegenerateSteadyState when the constrained system is rank deficient.
DensityMatrix steady_state(const Generator& gen);

/// RK4 integration of d rho/dt = G rho from rho0 to tEnd with step ~dt.
/// Throws StepInstability if the trace drifts by more than 1e-6.
DensityMatrix propagate(const Generator& gen, const DensityMatrix& rho0, double tEnd, double dt);

}  // namespace eitqhe
