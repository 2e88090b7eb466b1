#pragma once

#include <cstddef>
#include <vector>

namespace anyon {

// x*log(x) with the 0*log(0) = 0 convention. Negative input is treated as 0
// (callers clamp tiny negative round-off before calling).
double xlogx(double x);

// Interpolation in the form a + t*(b - a). For t in [0,1] the result never
// leaves [min(a,b), max(a,b)] in floating point, which the range invariants
// rely on. Do not "simplify" to (1-t)*a + t*b.
inline double lerp_clamped(double a, double b, double t) {
  return a + t * (b - a);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_rel_residual = 0.0;  // max_i |fit_i - y_i| / max_i |y_i|
};

// Ordinary least squares of y against x. Needs at least two distinct x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares slope of log(y) vs log(x). Values of y at or below `floor`
// are reported through `hit_floor` so callers can treat the decay as
// faster-than-any-power instead of fitting garbage.
struct LogLogSlope {
  double slope = 0.0;
  bool hit_floor = false;
};
LogLogSlope loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                         double floor = 1e-300);

// Solves the 4x4 system A c = b by Gaussian elimination with partial
// pivoting. Throws std::runtime_error on a (numerically) singular matrix.
void solve4(double A[4][4], double b[4], double c[4]);

}  // namespace anyon
