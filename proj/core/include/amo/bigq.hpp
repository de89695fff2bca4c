#pragma once
// Double-precision engines for approximants with huge denominators (10³–10⁶),
// where the mpfr 8q-bit policy is unaffordable: log-scaled transfer products
// for the Lyapunov exponent off the real axis, and the intersection measure
// |S(p̃/q̃, λ) ∩ J_δ| computed from the fine discriminant's zeros (band width
// 4/|Δ'(z_j)| at these scales), accumulated in log space.

#include "frequency.hpp"
#include "spectrum.hpp"
#include <complex>
#include <vector>

namespace amo {

// Lyapunov exponent γ_{p̃/q̃,λ,θ}(z) by a scaled one-period transfer product
// in doubles. Intended for Im z not astronomically small (the spectral-radius
// extraction loses meaning below double rounding of the trace).
double lyapunov_fine(std::complex<double> z, const RationalFreq& fine,
                     double lambda, double theta);

struct FineMeasure {
  double ln_measure;    // ln |S(fine, λ) ∩ J_δ(coarse)|
  double measure;       // exp(ln_measure), 0 on underflow
  long zero_count = 0;  // fine-discriminant zeros inside the scan domain
  long sturm_defect = 0;  // |zeros found − Dirichlet count| beyond interlacing
  double scan_points = 0;
  std::vector<std::pair<double, double>> domain;  // scanned E-intervals
};

// |S(p̃/q̃, λ) ∩ J_δ| where J_δ is taken for the coarse p/q. The fine bands
// inside J_δ are exponentially thin; each contributes its asymptotic width
// 4/|Δ_fine'(z_j)| at the discriminant zero z_j. Zeros are located by a
// batched sign-change scan plus bisection, cross-checked against Dirichlet
// Sturm counts (interlacing allows a defect of 2 per interval).
FineMeasure fine_intersection_measure(const RationalFreq& coarse,
                                      const RationalFreq& fine, double lambda,
                                      double delta);

}  // namespace amo
