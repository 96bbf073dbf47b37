// kerrshadow scalar root bracketing (internal)

#pragma once

#include <cmath>
#include <vector>

namespace kerr::detail {

// Bisection on [lo, hi] where f(lo) and f(hi) differ in sign; stops at machine resolution
template <class F>
double bisect(F &&f, double lo, double hi)
{
  double f_lo = f(lo);
  if (f_lo == 0.0)
    return lo;
  if (f(hi) == 0.0)
    return hi;
  for (int n = 0; n < 200; ++n)
  {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    const double f_mid = f(mid);
    if (f_mid == 0.0)
      return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0))
    {
      lo = mid;
      f_lo = f_mid;
    }
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Zeros of f on an interval split into pieces on which f is monotone. Each piece contributes at
// most one root. Returned ascending.
template <class F>
std::vector<double> roots_on_monotone_pieces(F &&f, const std::vector<double> &breaks)
{
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
  {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    if (!(hi > lo))
      continue;
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0 && i == 0)
      roots.push_back(lo);
    if (f_hi == 0.0)
    {
      roots.push_back(hi);
      continue;
    }
    if (f_lo != 0.0 && (f_lo < 0.0) != (f_hi < 0.0))
      roots.push_back(bisect(f, lo, hi));
  }
  return roots;
}

}  // namespace kerr::detail
