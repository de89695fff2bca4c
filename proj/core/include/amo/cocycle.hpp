#pragma once
// Transfer-matrix cocycles: scaled 2×2 products at extended precision,
// the periodic Lyapunov exponent from the period-map trace, and the
// avalanche principle (verifier + randomized instance generator).

#include "prec.hpp"
#include "frequency.hpp"
#include <complex>
#include <vector>
#include <cstdint>

namespace amo {

// 2×2 complex matrix over Real with a log-scale accumulator: the stored
// entries keep max magnitude in [1/2, 2] (power-of-two rescaling, exact in
// binary) and the removed factor's natural log lives in log_scale. Survives
// products of length 10^7 and trace magnitudes like exp(e^{rq}).
struct ScaledMat2 {
  CReal a, b, c, d;   // [[a, b], [c, d]]
  Real log_scale{0};

  static ScaledMat2 identity();
  void normalize();                      // restore the entry-max window
  void lmul(const CReal& t11, const CReal& t12,
            const CReal& t21, const CReal& t22);  // M ← T·M, then normalize
  Real log_norm() const;                 // ln of the Frobenius norm of the true matrix
  CReal det_stored() const { return a * d - b * c; }
  // trace of the true matrix; may overflow only past mpfr's exponent range
  CReal trace_true() const;
};

// Φ_n = T_n ⋯ T_1 with T_j = [[E − 2λcos(2παj + θ), −1], [1, 0]].
ScaledMat2 transfer_product(const CReal& E, const Real& alpha, const Real& lambda,
                            const Real& theta, long n);
inline ScaledMat2 transfer_product(const CReal& E, const RationalFreq& pq,
                                   const Real& lambda, const Real& theta, long n) {
  return transfer_product(E, pq.value(), lambda, theta, n);
}

// γ = (1/q) ln Spr(Φ_q); exactly 0 for real trace with |Tr| <= 2.
Real lyapunov_periodic(const CReal& E, const RationalFreq& pq, const Real& lambda,
                       const Real& theta);

// ---------------------------------------------------------------------------
// Avalanche principle (double precision; the margins live at scale δ ~ 1e-2).

using Cd = std::complex<double>;

struct Mat2d {
  Cd a{0}, b{0}, c{0}, d{0};
  static Mat2d identity() { return {1, 0, 0, 1}; }
  friend Mat2d operator*(const Mat2d& x, const Mat2d& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2d operator-(const Mat2d& x, const Mat2d& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  Cd trace() const { return a + d; }
  Cd det() const { return a * d - b * c; }
};

// Operator 2-norm from the closed-form singular values of a 2×2 matrix.
double op_norm(const Mat2d& m);

struct AvalancheInstance {
  std::vector<Mat2d> A;
  std::vector<double> delta;
  double b = 0, c = 0;
  Cd u0[2] = {1, 0};
};

struct AvalancheReport {
  // minimum slack of each hypothesis over the chain (>= 0 means satisfied)
  double cond1_margin;  // δ_{j+1} <= δ_j + b δ_j^{3/2}
  double cond2_margin;  // ‖A_{j+1} − A_j‖ <= b δ_j
  double cond3_margin;  // |Tr A_j| >= 2 + (1−b) δ_j
  double init_margin;   // ‖A₁u₀‖ >= exp((1−c)√δ₁)‖u₀‖
  double lhs;           // ln‖A_n⋯A₁u₀‖ − ln‖u₀‖
  double rhs;           // (1−c) Σ √δ_j
  bool conclusion_holds;
};

AvalancheReport avalanche_check(const AvalancheInstance& inst, double tol = 1e-9);
AvalancheInstance avalanche_generate(int n, double b, double c, std::uint64_t seed);

}  // namespace amo
