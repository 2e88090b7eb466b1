#include "anyon/util.hpp"

#include <cmath>
#include <stdexcept>

namespace anyon {

double xlogx(double x) {
  if (x <= 0.0) return 0.0;
  return x * std::log(x);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need two or more paired samples");
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double worst = 0.0, scale = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double pred = fit.intercept + fit.slope * x[i];
    worst = std::max(worst, std::abs(pred - y[i]));
    scale = std::max(scale, std::abs(y[i]));
  }
  fit.max_rel_residual = worst / std::max(scale, 1e-300);
  return fit;
}

LogLogSlope loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                         double floor) {
  LogLogSlope out;
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (y[i] <= floor) {
      out.hit_floor = true;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) {
    out.hit_floor = true;
    return out;
  }
  out.slope = linear_fit(lx, ly).slope;
  return out;
}

void solve4(double A[4][4], double b[4], double c[4]) {
  int perm[4] = {0, 1, 2, 3};
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    double best = std::abs(A[perm[col]][col]);
    for (int r = col + 1; r < 4; ++r) {
      const double v = std::abs(A[perm[r]][col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 1e-300))
      throw std::runtime_error("conservative projection: singular 4x4 system (degenerate grid)");
    std::swap(perm[col], perm[piv]);
    const int pr = perm[col];
    for (int r = col + 1; r < 4; ++r) {
      const int rr = perm[r];
      const double m = A[rr][col] / A[pr][col];
      A[rr][col] = 0.0;
      for (int cc = col + 1; cc < 4; ++cc) A[rr][cc] -= m * A[pr][cc];
      b[rr] -= m * b[pr];
    }
  }
  for (int col = 3; col >= 0; --col) {
    const int pr = perm[col];
    double s = b[pr];
    for (int cc = col + 1; cc < 4; ++cc) s -= A[pr][cc] * c[cc];
    c[col] = s / A[pr][col];
  }
}

}  // namespace anyon
