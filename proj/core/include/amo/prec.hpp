#pragma once
// Extended-precision scalar types shared by all modules.
//
// Real is an MPFR float with runtime-adjustable precision (bits are set
// per-task through PrecisionGuard); Int is a GMP integer (continued-fraction
// denominators overflow 64 bits immediately for the Liouville recipes).

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace amo {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Int = boost::multiprecision::mpz_int;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(bits * 0.30103) + 3;
}

// Precision policy used by the spectrum/dos modules: max(128, 8q) bits.
inline unsigned precision_bits_for_q(long q) {
  return std::max(128L, 8L * q);
}

// RAII scope for the (thread-local) default MPFR precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits)
      : saved_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

// Re-round a value onto the current default precision. Arithmetic results
// inherit the precision of their operands, so an input created under a lower
// ambient precision would otherwise cap every quantity derived from it;
// entry points promote their scalar inputs right after raising precision.
inline Real at_working_precision(const Real& x) {
  Real y(0);
  mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
  return y;
}

// π at the current working precision (mpfr directly; boost::math caches
// constants at first-use precision, which breaks under precision switching).
inline Real pi_real() {
  Real p(0);
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

// Minimal complex-over-T. std::complex is not usable with mpfr_float and the
// sandbox has no libmpc, so the few operations the cocycle/green paths need
// are spelled out here. Works for T = double as well.
template <class T>
struct Cx {
  T re{}, im{};
  Cx() = default;
  Cx(T r) : re(std::move(r)) {}
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const T& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(const Cx& a, const T& s) { return {a.re / s, a.im / s}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    T d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cx& operator+=(const Cx& b) { re += b.re; im += b.im; return *this; }
  Cx& operator-=(const Cx& b) { re -= b.re; im -= b.im; return *this; }
  Cx conj() const { return {re, -im}; }
  T norm2() const { return re * re + im * im; }
};

template <class T>
T cx_abs(const Cx<T>& z) {
  using std::sqrt;
  using boost::multiprecision::sqrt;
  return sqrt(z.norm2());
}

// Principal square root.
template <class T>
Cx<T> cx_sqrt(const Cx<T>& z) {
  using std::sqrt; using std::fabs;
  using boost::multiprecision::sqrt; using boost::multiprecision::fabs;
  T r = cx_abs(z);
  if (r == T(0)) return {T(0), T(0)};
  T u = sqrt((r + z.re) / T(2));
  T v = sqrt((r - z.re) / T(2));
  if (z.im < T(0)) v = -v;
  return {u, v};
}

using CReal = Cx<Real>;

inline double to_d(const Real& x) { return x.convert_to<double>(); }

}  // namespace amo
