#include "amo/gauge.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace amo {

using boost::multiprecision::log;
using boost::multiprecision::exp;
using boost::multiprecision::pow;

GaugeFn GaugeFn::from_table(std::vector<std::pair<Real, Real>> rows) {
  if (rows.size() < 2) throw std::invalid_argument("gauge table needs >= 2 rows");
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first <= 0 || rows[i].second <= 0)
      throw std::invalid_argument("gauge table entries must be positive");
    if (i && (rows[i].first <= rows[i - 1].first || rows[i].second < rows[i - 1].second))
      throw std::invalid_argument("gauge table must be increasing in s, non-decreasing in ω");
  }
  GaugeFn g(Kind::table, 0);
  g.table_ = std::move(rows);
  {
    PrecisionGuard guard(512);
    g.ln_table_.reserve(g.table_.size());
    for (const auto& [s, w] : g.table_)
      g.ln_table_.emplace_back(log(at_working_precision(s)), log(at_working_precision(w)));
  }
  return g;
}

Real GaugeFn::eval(const Real& s) const {
  if (s <= 0) throw std::domain_error("gauge evaluated at s <= 0");
  return exp(log_eval(log(s)));
}

Real GaugeFn::log_eval(const Real& ln_s) const {
  switch (kind_) {
    case Kind::omega_tilde_t:
      return Real(t_) * ln_s;
    case Kind::omega_t: {
      // Clamp: for s > e⁻² continue linearly, ω(s) = s e² (matches at s = e⁻²).
      if (ln_s > -2) return ln_s + 2;
      // ln ω_t = -t · ln( ln(1/s) - 1 )
      return -Real(t_) * log(-ln_s - 1);
    }
    case Kind::table: {
      // log-log linear interpolation, constant extrapolation of slope at ends.
      const auto& tb = ln_table_;
      size_t n = tb.size();
      auto it = std::upper_bound(tb.begin(), tb.end(), ln_s,
                                 [](const Real& v, const auto& row) { return v < row.first; });
      size_t i = it == tb.begin() ? 0 : static_cast<size_t>(it - tb.begin()) - 1;
      if (i + 1 >= n) i = n - 2;
      const Real& x0 = tb[i].first; const Real& x1 = tb[i + 1].first;
      const Real& y0 = tb[i].second; const Real& y1 = tb[i + 1].second;
      return y0 + (y1 - y0) * (ln_s - x0) / (x1 - x0);
    }
  }
  throw std::logic_error("unreachable");
}

Real GaugeFn::log_inv(const Real& ln_y) const {
  switch (kind_) {
    case Kind::omega_tilde_t:
      return ln_y / Real(t_);
    case Kind::omega_t: {
      if (ln_y > 0) {  // inverse of the linear continuation
        return ln_y - 2;
      }
      // ω_t(s) = y ⇒ s = e^{-1 - y^{-1/t}}
      return Real(-1) - exp(-ln_y / Real(t_));
    }
    case Kind::table: {
      // Monotone bisection on log_eval over a generous ln s range.
      Real lo = log(table_.front().first) - 64;
      Real hi = log(table_.back().first);
      if (log_eval(hi) < ln_y) return hi;
      for (int it = 0; it < 400; ++it) {
        Real mid = (lo + hi) / 2;
        (log_eval(mid) >= ln_y ? hi : lo) = mid;
      }
      return hi;
    }
  }
  throw std::logic_error("unreachable");
}

bool GaugeFn::decay_admissible(int max_j, double decay_tol) const {
  // ω(2^-j)·log(2^j) must tend to 0; demand it dips below decay_tol by max_j
  // and is non-increasing over the last decade of the grid.
  Real ln2 = log(Real(2));
  Real last(0);
  bool below = false;
  for (int j = 4; j <= max_j; ++j) {
    Real v = exp(log_eval(-j * ln2)) * j * ln2;
    if (j > max_j - 10 && v > last * Real(1.0000001) && last > 0) return false;
    last = v;
    if (v < Real(decay_tol)) below = true;
  }
  return below;
}

std::string GaugeFn::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::omega_t: os << "omega_" << t_ << " (clamped to s<=e^-2, linear above)"; break;
    case Kind::omega_tilde_t: os << "omega_tilde_" << t_; break;
    case Kind::table: os << "table[" << table_.size() << "]"; break;
  }
  return os.str();
}

}  // namespace amo
