#pragma once

#include "swg/types.hpp"

#include <cmath>
#include <string>

namespace swg {

/// Isotropic material. Lamé constants are either derived from (E, nu) or given directly.
struct MaterialParams {
  double E = 1.0;
  double nu = 0.3;
  double lambda = 0.0;
  double mu = 0.0;

  static MaterialParams from_young_poisson(double E, double nu) {
    if (!(E > 0.0) || !std::isfinite(E)) throw ConfigError("Young's modulus must be positive, got " + std::to_string(E));
    if (!(nu < 0.5) || !(nu > -1.0)) throw ConfigError("Poisson ratio must lie in (-1, 0.5), got " + std::to_string(nu));
    MaterialParams m;
    m.E = E;
    m.nu = nu;
    m.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    m.mu = E / (2.0 * (1.0 + nu));
    return m;
  }

  static MaterialParams from_lame(double lambda, double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be positive and finite");
    if (!std::isfinite(lambda) || !(lambda > 0.0)) throw ConfigError("lambda must be positive and finite");
    MaterialParams m;
    m.lambda = lambda;
    m.mu = mu;
    m.E = mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu);
    m.nu = lambda / (2.0 * (lambda + mu));
    return m;
  }
};

}  // namespace swg
