#include "certkit/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace certkit {

Scalar ball_bound_squared(const Poly& g, const Scalar& r) {
  if (r.sign() <= 0) throw std::invalid_argument("ball_bound: radius must be positive");
  int d = g.degree();
  if (d == 0) {
    Scalar c = g.is_zero() ? Scalar(0) : g.terms().begin()->second;
    return c * c;
  }
  Scalar r2 = r * r;
  if (!r2.is_rational()) throw std::invalid_argument("ball_bound: r^2 must be rational");
  Scalar factor(1);
  Scalar base = Scalar(1) + r2;
  for (int i = 0; i < d; ++i) factor *= base;
  return weighted_norm_squared(g, d) * factor;
}

double ball_bound(const Poly& g, const Scalar& r) {
  return std::sqrt(ball_bound_squared(g, r).to_double());
}

RhoSchedule rho_schedule(const Rat& eps, const Rat& M, const Rat& delta, const Rat& U, int m) {
  if (eps <= 0) throw std::invalid_argument("rho_schedule: eps must be positive");
  if (M > 0) throw std::invalid_argument("rho_schedule: M must be <= 0");
  if (delta >= 0) throw std::invalid_argument("rho_schedule: delta must be negative");
  if (U <= 0) throw std::invalid_argument("rho_schedule: U must be positive");
  if (m < 1) throw std::invalid_argument("rho_schedule: m must be >= 1");

  double epsd = static_cast<double>(eps);
  double Md = static_cast<double>(M);
  double Ud = static_cast<double>(U);
  double ad = std::fabs(static_cast<double>(delta));
  double md = static_cast<double>(m);

  double d_hat = (std::log(4.0 * (md + 1.0) * Ud * (-Md + epsd)) - std::log(ad * epsd)) /
                 (2.0 * std::log(1.0 + ad / Ud));
  int d = std::max(1, static_cast<int>(std::ceil(d_hat - 1e-12)));

  Rat upow = 1;
  for (int i = 0; i < 2 * d + 1; ++i) upow *= U;
  Rat c = eps / (Rat(4 * (m + 1)) * upow);
  return {d, c, d_hat};
}

double grid_max_oracle(const Poly& g, double r, int resolution) {
  if (r <= 0) throw std::invalid_argument("grid_max_oracle: radius must be positive");
  if (resolution < 2) throw std::invalid_argument("grid_max_oracle: resolution too small");
  int n = g.nvars();
  double points = std::pow(static_cast<double>(resolution), n);
  if (points > 1e7) throw std::invalid_argument("grid_max_oracle: too many grid points");

  DPoly gd = to_double_poly(g);
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  double best = -std::numeric_limits<double>::infinity();
  bool done = n == 0;
  if (n == 0) return gd.evaluate<double>({});
  while (!done) {
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = -r + 2.0 * r * idx[i] / (resolution - 1);
      norm2 += x[i] * x[i];
    }
    if (norm2 <= r * r + 1e-12) best = std::max(best, gd.evaluate<double>(x));
    int pos = 0;
    while (pos < n && ++idx[pos] == resolution) idx[pos++] = 0;
    done = pos == n;
  }
  return best;
}

}  // namespace certkit
