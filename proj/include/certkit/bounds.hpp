#pragma once

#include "certkit/poly.hpp"

namespace certkit {

/// Ball bound ||g||_2 * (1 + r^2)^(d/2) with d = deg(g); an upper bound on
/// g over the radius-r ball. Degree-0 polynomials return |constant|.
double ball_bound(const Poly& g, const Scalar& r);

/// Exact square of the ball bound (stays in the coefficient field; needs
/// r^2 rational, which holds for rational r and for r = sqrt(rational)).
Scalar ball_bound_squared(const Poly& g, const Scalar& r);

struct RhoSchedule {
  int d;          // ceil of the degree bound d_hat
  Rat c;          // eps / (4 (m+1) U^(2d+1)), exact
  double d_hat;   // the underlying real bound
};

/// Constructive multiplier schedule: the smallest integer degree d >= d_hat
/// and the exact coefficient c. Preconditions: eps > 0, M <= 0, delta < 0,
/// U > 0, m >= 1.
RhoSchedule rho_schedule(const Rat& eps, const Rat& M, const Rat& delta, const Rat& U, int m);

/// Max of g over a regular grid meeting the radius-r ball; a lower bound on
/// the true max. Guards against more than 10^7 grid points.
double grid_max_oracle(const Poly& g, double r, int resolution);

}  // namespace certkit
