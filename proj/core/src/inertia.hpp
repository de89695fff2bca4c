#pragma once
// Internal: eigenvalue counting for Floquet matrices by bordered LDL inertia.

#include "amo/prec.hpp"
#include <vector>

namespace amo::detail {

// Count of eigenvalues below E for the Hermitian q×q matrix with diagonal v,
// unit off-diagonals, and corner t at position (1,q) (mirrored conjugate).
// O(q) and allocation-free: the corner fill is carried down the last column.
inline long inertia_count_below(const std::vector<Real>& v, const Real& E, const CReal& t) {
  long q = static_cast<long>(v.size());
  if (q == 1) return (v[0] + 2 * t.re < E) ? 1 : 0;
  if (q == 2) {
    CReal w = CReal(Real(1)) + t;  // sub-diagonal and corner couple the same pair
    Real p1 = v[0] - E;
    if (p1 == 0) p1 = -Real("1e-300");
    Real p2 = (v[1] - E) - w.norm2() / p1;
    return (p1 < 0 ? 1 : 0) + (p2 < 0 ? 1 : 0);
  }
  long cnt = 0;
  Real p = v[0] - E;
  if (p == 0) p = -Real("1e-300");
  CReal f = t;  // current fill value in the last column
  Real acc = f.norm2() / p;
  cnt += p < 0 ? 1 : 0;
  for (long i = 1; i <= q - 2; ++i) {
    Real pn = (v[i] - E) - Real(1) / p;
    if (pn == 0) pn = -Real("1e-300");
    CReal fn = -(Real(1) / p) * f;
    if (i == q - 2) fn += CReal(Real(1));  // sub-diagonal entry joins the last column
    acc += fn.norm2() / pn;
    cnt += pn < 0 ? 1 : 0;
    p = pn;
    f = fn;
  }
  Real last = (v[q - 1] - E) - acc;
  cnt += last < 0 ? 1 : 0;
  return cnt;
}

}  // namespace amo::detail
