#pragma once
// Integrated density of states: periodic closed form via Floquet eigenvalue
// counting + Bloch-momentum interpolation, θ-averaged IDS, finite-box Sturm
// counting, Thouless-formula residual, the IDS-continuity (Ky Fan) inequality
// and the coupling-inversion duality check.

#include "prec.hpp"
#include "frequency.hpp"
#include "spectrum.hpp"
#include <complex>
#include <vector>

namespace amo {

struct DOSTable {
  std::vector<Real> energies;  // sorted grid
  std::vector<Real> values;    // N values in [0,1], non-decreasing
  RationalFreq pq;
  Real lambda{0};
  bool theta_averaged = false;
  Real theta{0};   // meaningful when !theta_averaged
  int nodes = 0;   // θ-quadrature node count when averaged
};

// N_{p/q,λ,θ}(E). Eigenvalue counts of the two periodic (φ = 0, π) Floquet
// matrices locate the band; inside a band the Bloch momentum k with
// D_θ(E) = 2cos k interpolates, oriented so N is non-decreasing.
Real ids_periodic(const Real& E, const RationalFreq& pq, const Real& lambda,
                  const Real& theta);

// N̄(E) = θ-average of N over one 2π/q period, trapezoid with max(64, 8q) nodes.
Real ids_averaged(const Real& E, const RationalFreq& pq, const Real& lambda);

// ρ̄(E₁, E₂] = N̄(E₂) − N̄(E₁).
Real dos_of_interval(const Real& E1, const Real& E2, const RationalFreq& pq,
                     const Real& lambda);

DOSTable dos_table(const std::vector<Real>& energies, const RationalFreq& pq,
                   const Real& lambda, bool theta_averaged, const Real& theta);

// (1/L)·#{eigenvalues <= E} of the L×L box [0, L−1] with V(n) = 2λcos(2παn+θ),
// Sturm-sequence pivot counting (no diagonalization, O(L) memory-free sweep).
double ids_finite_box(double E, const Real& alpha, double lambda, double theta, long L);
inline double ids_finite_box(double E, const RationalFreq& pq, double lambda,
                             double theta, long L) {
  return ids_finite_box(E, pq.value(), lambda, theta, L);
}

struct ThoulessReport {
  double residual = 0;  // max over non-flagged grid points
  int flagged = 0;      // points inside the singular exclusion zone
  std::vector<double> per_point;  // residual per grid point (NaN when flagged)
};

// max |γ̄(E) − ∫ log|E−E′| dN̄(E′)| over the grid; the integral runs per-band
// per-θ with edge substitution E′ = edge ± t² and adaptive Gauss–Legendre.
ThoulessReport thouless_residual(const RationalFreq& pq, double lambda,
                                 const std::vector<std::complex<double>>& E_grid);

struct KyFanReport {
  double kappa = 0;
  Real lhs, rhs;
  bool holds = false;
};

// ρ̄_{α′}[r−, r+] >= ρ̄_α[r−+κ, r+−κ] − 4/L with κ = 2π·(4πλ)·|α′−α|·L.
KyFanReport kyfan_check(const RationalFreq& pq, const RationalFreq& pq_prime,
                        const Real& lambda, const Real& r_minus, const Real& r_plus,
                        long L, double tol = 1e-9);

struct DualityReport {
  double best_kappa = 0;    // winning κ as a value (1/λ or 2/λ)
  bool winner_is_inverse = false;  // κ = 1/λ won
  Real residual_inverse;    // dist_H(S(λ), λ·S(1/λ))
  Real residual_double;     // dist_H(S(λ), λ·S(2/λ))
  Real ids_residual;        // max |N̄_λ(E) − N̄_κ(E/λ)| on a grid, winning κ
};

DualityReport duality_check(const RationalFreq& pq, const Real& lambda);

}  // namespace amo
