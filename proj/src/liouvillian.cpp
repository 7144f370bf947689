#include "eitqhe/liouvillian.hpp"

#include <cmath>
#include <span>

#include "eitqhe/error.hpp"
#include "eitqhe/kernels.hpp"

namespace eitqhe {

namespace {

constexpr double kRankTolerance = 1e-12;
constexpr double kTraceDriftLimit = 1e-6;

using Eigen::Matrix3cd;

Eigen::MatrixXd constrained_system(const Generator& gen, Eigen::VectorXd* rhs) {
  const double scale = gen.norm() > 0 ? gen.norm() : 1.0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(20, 18);
  a.topRows(18) = gen.matrix;
  for (int d : {0, 4, 8}) {
    a(18, d) = scale;      // Re tr = 1
    a(19, 9 + d) = scale;  // Im tr = 0
  }
  if (rhs) {
    *rhs = Eigen::VectorXd::Zero(20);
    (*rhs)(18) = scale;
  }
  return a;
}

}  // namespace

double DensityMatrix::min_eigenvalue() const {
  const Matrix3cd h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3cd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix3cd master_equation_rhs(const SystemParams& params, const DerivedRates& rates,
                              double deltaOmega31, const Matrix3cd& r) {
  const Complex I(0.0, 1.0);
  const double G31 = params.gamma31, G32 = params.gamma32;
  const double R13 = rates.R13, R23 = rates.R23;
  const double g21 = rates.gamma21, g31 = rates.gamma31bar, g32 = rates.gamma32bar;
  const double gs = rates.gammaS;
  const double g = params.g, Oc = params.OmegaC;
  const double d31 = deltaOmega31;
  const double d21 = params.deltaOmega21 + deltaOmega31;
  const double d32 = d31 - d21;

  const Complex r11 = r(0, 0), r22 = r(1, 1), r33 = r(2, 2);
  const Complex r12 = r(0, 1), r13 = r(0, 2), r23 = r(1, 2);
  const Complex r21 = r(1, 0), r31 = r(2, 0), r32 = r(2, 1);

  Matrix3cd d;
  d(0, 0) = G31 * r33 - 0.5 * I * g * (r31 - r13) + R13 * (r33 - r11);
  d(1, 1) = G32 * r33 + 0.5 * I * Oc * (r32 - r23) + R23 * (r33 - r22);
  d(2, 2) = -(G31 + G32) * r33 - 0.5 * I * g * (r13 - r31) + 0.5 * I * Oc * (r23 - r32) -
            R23 * (r33 - r22) - R13 * (r33 - r11);

  d(0, 1) = -(0.5 * g21 - I * d21) * r12 - 0.5 * I * Oc * r13 - 0.5 * I * g * r32 + gs * r33;
  d(1, 2) = -(0.5 * g32 - I * d32) * r23 + 0.5 * I * Oc * (r33 - r22) + 0.5 * I * g * r21;
  d(0, 2) = -(0.5 * g31 - I * d31) * r13 - 0.5 * I * g * (r33 - r11) - 0.5 * I * Oc * r12;

  // Conjugate equations, each in terms of its own entries so the map stays
  // complex-linear on all nine coordinates.
  d(1, 0) = -(0.5 * g21 + I * d21) * r21 + 0.5 * I * Oc * r31 + 0.5 * I * g * r23 + gs * r33;
  d(2, 1) = -(0.5 * g32 + I * d32) * r32 - 0.5 * I * Oc * (r33 - r22) - 0.5 * I * g * r12;
  d(2, 0) = -(0.5 * g31 + I * d31) * r31 + 0.5 * I * g * (r33 - r11) + 0.5 * I * Oc * r21;
  return d;
}

RealVector18 to_coordinates(const Matrix3cd& rho) {
  RealVector18 x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      x(3 * i + j) = rho(i, j).real();
      x(9 + 3 * i + j) = rho(i, j).imag();
    }
  return x;
}

Matrix3cd from_coordinates(const RealVector18& x) {
  Matrix3cd rho;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho(i, j) = Complex(x(3 * i + j), x(9 + 3 * i + j));
  return rho;
}

Matrix3cd Generator::apply(const Matrix3cd& rho) const {
  const RealVector18 y = matrix * to_coordinates(rho);
  return from_coordinates(y);
}

Generator build_generator(const SystemParams& params, const DerivedRates& rates,
                          double deltaOmega31) {
  // The oracle also accepts Omega_c = 0, where the steady state can be degenerate.
  SystemParams checked = params;
  if (checked.OmegaC == 0.0) checked.OmegaC = 1.0;
  validate(checked);
  if (!std::isfinite(deltaOmega31)) throw InvalidParameter("deltaOmega31 must be finite");
  Generator gen{RealMatrix18::Zero(), params, rates, deltaOmega31};
  for (int k = 0; k < 18; ++k) {
    Matrix3cd basis = Matrix3cd::Zero();
    const int entry = k % 9;
    basis(entry / 3, entry % 3) = k < 9 ? Complex(1, 0) : Complex(0, 1);
    gen.matrix.col(k) = to_coordinates(master_equation_rhs(params, rates, deltaOmega31, basis));
  }
  return gen;
}

int constrained_rank(const Generator& gen) {
  const Eigen::MatrixXd a = constrained_system(gen, nullptr);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankTolerance * s(0)) ++rank;
  return rank;
}

DensityMatrix steady_state(const Generator& gen) {
  Eigen::VectorXd b;
  const Eigen::MatrixXd a = constrained_system(gen, &b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTolerance);
  const int rank = static_cast<int>(svd.rank());
  if (rank < 18) throw DegenerateSteadyState(18 - rank, rank);
  const RealVector18 x = svd.solve(b);
  // The exact null vector is Hermitian; drop the anti-Hermitian round-off.
  const Eigen::Matrix3cd rho = from_coordinates(x);
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix propagate(const Generator& gen, const DensityMatrix& rho0, double tEnd,
                        double dt) {
  if (!(dt > 0)) throw InvalidParameter("propagate: dt must be > 0");
  if (!(tEnd >= dt)) throw InvalidParameter("propagate: tEnd must be >= dt");
  const auto steps = static_cast<long>(std::ceil(tEnd / dt - 1e-9));
  const double h = tEnd / static_cast<double>(steps);

  RealVector18 x = to_coordinates(rho0.matrix());
  const double trace0 = x(0) + x(4) + x(8);
  RealVector18 k1, k2, k3, k4, tmp;
  std::span<const double> a(gen.matrix.data(), 18 * 18);
  auto eval = [&](const RealVector18& in, RealVector18& out) {
    kernels::matvec(a, std::span<const double>(in.data(), 18), std::span<double>(out.data(), 18),
                    18);
  };

  for (long s = 0; s < steps; ++s) {
    eval(x, k1);
    tmp = x + 0.5 * h * k1;
    eval(tmp, k2);
    tmp = x + 0.5 * h * k2;
    eval(tmp, k3);
    tmp = x + h * k3;
    eval(tmp, k4);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = std::abs(x(0) + x(4) + x(8) - trace0);
    if (!(drift <= kTraceDriftLimit))
      throw StepInstability("propagate: trace drifted by " + std::to_string(drift) +
                            " at step " + std::to_string(s));
  }
  return DensityMatrix(from_coordinates(x));
}

}  // namespace eitqhe
