#pragma once

#include <vector>

namespace phaseinv {

// Riccati-Bessel values and first derivatives (w.r.t. the argument) for
// orders 0..l_max at a single argument x.
//
// For the oscillatory family, `regular` holds j_l(x) = sqrt(pi x/2) J_{l+1/2}(x)
// and `singular` holds n_l(x) = sqrt(pi x/2) Y_{l+1/2}(x), so that j_0 = sin x,
// n_0 = -cos x and j_l n_l' - j_l' n_l = 1.
//
// For the modified family, `regular` holds i_l(x) = sqrt(pi x/2) I_{l+1/2}(x)
// and `singular` holds k_l(x) = sqrt(2x/pi) K_{l+1/2}(x) (i_0 = sinh x,
// k_0 = e^{-x}, Wronskian -1). Both are stored scaled by `log_scale`:
// true regular = stored * e^{log_scale}, true singular = stored * e^{-log_scale}.
// The Wronskian is unaffected by the scaling.
struct BesselTable {
  int l_max = 0;
  double x = 0.0;
  double log_scale = 0.0;
  std::vector<double> regular;
  std::vector<double> singular;
  std::vector<double> regular_prime;
  std::vector<double> singular_prime;
};

// Throws DomainError for x <= 0 or l_max < 0, OverflowError when n_l(x)
// exceeds the double range (tiny x relative to l_max).
BesselTable riccati_table(int l_max, double x);

// Exponentially scaled modified pair; log_scale == x.
BesselTable modified_riccati_table(int l_max, double x);

struct PowerSolutions {
  double regular;           // r^{l+1}
  double singular;          // r^{-l}
  double regular_prime;     // (l+1) r^l
  double singular_prime;    // -l r^{-l-1}
};

// Solutions of phi'' = l(l+1)/r^2 phi (zero local wave number).
PowerSolutions power_solutions(int l, double r);

}  // namespace phaseinv
