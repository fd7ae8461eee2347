#pragma once

#include <cmath>
#include <string>

#include "vecflow/errors.hpp"

namespace vecflow {

/// Root of f on [lo, hi]; f(lo) and f(hi) must have opposite signs.
template <typename Scalar, typename F>
Scalar bisect(F&& f, Scalar lo, Scalar hi, Scalar tol = Scalar(1e-12), int max_iter = 200) {
  Scalar flo = f(lo), fhi = f(hi);
  if (flo == Scalar(0)) return lo;
  if (fhi == Scalar(0)) return hi;
  if ((flo > 0) == (fhi > 0))
    throw PreconditionError("bracket", "bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                           "] does not change sign");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const Scalar mid = lo + (hi - lo) / 2;
    const Scalar fm = f(mid);
    if (fm == Scalar(0)) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

}  // namespace vecflow
