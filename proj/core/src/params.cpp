#include "anyon/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace anyon {

std::vector<std::string> SimulationParams::validate() const {
  std::vector<std::string> errs;
  auto bad = [&](const std::string& m) { errs.push_back(m); };

  if (!(alpha > 0.0) || !(alpha <= 1.0) || !std::isfinite(alpha))
    bad("alpha must lie in (0, 1]");
  if (!(b0 > 0.0) || !std::isfinite(b0)) bad("b0 must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) bad("gamma must be positive");
  if (!(gamma_prime > 0.0) || !(gamma_prime < 0.5))
    bad("gamma_prime must lie in (0, 1/2)");
  if (!(c_b > 0.0) || !std::isfinite(c_b)) bad("c_b must be positive");
  if (!(j >= 1.0) || !std::isfinite(j)) bad("j must be at least 1");
  if (nx < 1) bad("nx must be at least 1");
  if (nv < 4) bad("nv must be at least 4 (grid under-resolved across the ball)");
  if (ntheta < 4) bad("ntheta must be at least 4");
  if (!(dt > 0.0) || !std::isfinite(dt)) bad("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) bad("t_end must be non-negative");
  if (picard_iters < 1) bad("picard_iters must be at least 1");
  if (!(picard_tol >= 0.0)) bad("picard_tol must be non-negative");
  return errs;
}

void SimulationParams::require_valid() const {
  const auto errs = validate();
  if (errs.empty()) return;
  std::ostringstream os;
  os << "invalid simulation parameters:";
  for (const auto& e : errs) os << "\n  - " << e;
  throw std::invalid_argument(os.str());
}

}  // namespace anyon
