#include "weaklevy/quadrature.hpp"

#include <cmath>

namespace weaklevy {

double gamma_ray_cutoff(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw SpecError("gamma_ray_cutoff: shape and rate must be positive");
  }
  const double g = std::log(shape / (1e-16 * rate)) / rate;
  return std::max(1.0, g);
}

}  // namespace weaklevy
