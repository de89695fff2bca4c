#pragma once
// Restricted Green functions on finite boxes and half-lines with eventually
// periodic tails, the geometric resolvent (cut) identities, Combes–Thomas
// decay profiling, and the log-kernel singular integral.
//
// Convention: G^{[a,b]}(n,m;z) = <δ_m, (H^{[a,b]} − z)^{−1} δ_n>. With this
// sign, each single-cut factorization carries a factor −1:
//   m <= c < n:  G(m,n) = −G^{[a,c]}(m,c)·G^{[a,b]}(c+1,n)
//                G(m,n) = −G^{[a,b]}(m,c)·G^{[c+1,b]}(c+1,n)
//   m,n <= c:    G(m,n) − G^{[a,c]}(m,n) = −G^{[a,b]}(m,c+1)·G^{[a,c]}(c,n)
// and the M-cut chain picks up (−1)^M. (Derived from the second resolvent
// identity with the rank-two cut coupling; the one- and two-site boxes fix
// the sign unambiguously.)

#include "prec.hpp"
#include "spectrum.hpp"
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace amo {

struct BoxOperator {
  long a = 0;
  long b = 0;                       // inclusive; ignored when half_line
  bool half_line = false;           // [a, ∞)
  std::function<double(long)> V;
  // half-line closure: V(n + tail_period) = V(n) for n >= tail_start
  long tail_period = 0;
  long tail_start = 0;

  static BoxOperator finite(long a, long b, std::function<double(long)> V);
  static BoxOperator half(long a, std::function<double(long)> V,
                          long tail_period, long tail_start);
  // AMO sampling V(n) = 2λcos(2παn + θ); rational α makes half-lines closable
  static BoxOperator amo_finite(long a, long b, const RationalFreq& pq,
                                double lambda, double theta);
  static BoxOperator amo_half(long a, const RationalFreq& pq, double lambda,
                              double theta);
};

using Cd2 = std::complex<double>;

// Tridiagonal solve through the two boundary solutions u (left) and v
// (right/decaying), carried with per-site log scaling so 500-site boxes and
// deep tails never underflow. One instance per (box, z).
class GreenSolver {
 public:
  GreenSolver(const BoxOperator& box, Cd2 z, long max_site = -1);

  Cd2 g(long n, long m) const;           // G(n, m; z); may underflow to 0
  double log_abs_g(long n, long m) const;  // ln|G|, safe far past underflow

 private:
  long a_, top_;
  std::vector<Cd2> u_, v_;      // normalized solutions
  std::vector<double> lsu_, lsv_;  // their log scales
  Cd2 w_unit_;
  double w_log_;
};

Cd2 green_restricted(const BoxOperator& box, long n, long m, Cd2 z);

// Max residual of the three single-cut identities plus the multi-cut chain
// over `samples` random (m, n) pairs; `cuts` must be strictly inside the box.
double green_identities_check(const BoxOperator& box, const std::vector<long>& cuts,
                              Cd2 z, int samples, std::uint64_t seed = 1);

struct CTProfile {
  double rate = 0;        // fitted decay rate of ln|G(n0, n0+k)|
  double kappa = 0;       // min(1, dist(z, σ))
  double ratio = 0;       // rate / kappa
  long usable_range = 0;  // sites before the underflow floor
  bool truncated = false;
};

CTProfile combes_thomas_profile(const BoxOperator& box, Cd2 z, long n0, long range,
                                const BandSet& sigma);

// Finite positive measure as atoms plus uniform pieces.
struct SampleMeasure {
  std::vector<std::pair<double, double>> atoms;                  // (E, weight)
  std::vector<std::array<double, 3>> uniform;                    // (lo, hi, weight)
  static SampleMeasure lebesgue(double lo, double hi);
  static SampleMeasure from_bands(const BandSet& K, double total_weight);
  double total() const;
};

// ∫ log(1 + ε²/(E−E′)²) dμ(E), closed-form on uniform pieces.
double log_kernel_integral(const SampleMeasure& mu, double E_prime, double eps);

}  // namespace amo
