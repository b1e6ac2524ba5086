#include "swg/cases.hpp"

#include "polylog.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace swg {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * scale; }

Mat3 stress_from_gradient(const Mat3& G, const MaterialParams& m, int dim) {
  Mat3 s = m.mu * (G + G.transpose());
  const double div = G.trace();
  for (int k = 0; k < dim; ++k) s(k, k) += m.lambda * div;
  return s;
}

BoundaryTag all_dirichlet(const Vec3&, const Vec3&) { return BoundaryTag::dirichlet; }

// Sum over n >= 1 of (-1)^n trig(n pi x) hyp(n pi y) / (n^k cosh(n pi)), |y| <= 1.
// The slowly decaying part is a pair of polylogarithms; the remainder decays like exp(-2 n pi).
double beam_series(int k, bool sine, bool hyp_sinh, double x, double y) {
  using C = std::complex<double>;
  const double ay = std::min(std::abs(y), 1.0);
  const double t1 = 1.0 - ay;
  const double t2 = 1.0 + ay;
  const double sgn = hyp_sinh ? (y < 0 ? -1.0 : 1.0) : 1.0;
  const double pm = hyp_sinh ? -1.0 : 1.0;
  const C phase = std::polar(1.0, kPi * x);
  const C w1 = -std::exp(-kPi * t1) * phase;
  const C w2 = -std::exp(-kPi * t2) * phase;
  const C L = detail::polylog(k, w1) + pm * detail::polylog(k, w2);
  double total = sine ? L.imag() : L.real();
  for (int n = 1; n < 60; ++n) {
    const double e = std::exp(-2.0 * n * kPi);
    const double delta = e / (1.0 + e);
    const double trig = (n % 2 ? -1.0 : 1.0) * (sine ? std::sin(n * kPi * x) : std::cos(n * kPi * x));
    const double term = delta * trig * (std::exp(-n * kPi * t1) + pm * std::exp(-n * kPi * t2)) / std::pow(n, k);
    total -= term;
    if (delta < 1e-18) break;
  }
  return sgn * total;
}

}  // namespace

double shear_beam_psi(double x, double y, double F, double nu) {
  return 3.0 * F / 8.0 * (y - y * y * y / 3.0) + F * nu * (3 * x * x - 1) * y / (8 * (1 + nu)) -
         3.0 * F * nu / (2 * kPi * kPi * kPi * (1 + nu)) * beam_series(3, false, true, x, y);
}

std::pair<double, double> shear_beam_shear_stress(double x, double y, double F, double nu) {
  const double c = 3.0 * F * nu / (2 * kPi * kPi * (1 + nu));
  const double s31 = c * beam_series(2, true, true, x, y);
  const double s23 = 3.0 * F * (1 - y * y) / 8.0 + F * nu * (3 * x * x - 1) / (8 * (1 + nu)) -
                     c * beam_series(2, false, false, x, y);
  return {s31, s23};
}

std::vector<std::string> case_names() {
  return {"patch", "tc1", "tc2", "tc3_mixed", "tc3d_1", "tc3d_2", "cook", "shear_beam"};
}

AnalyticCase get_case(std::string_view name, const CaseOptions& opt) {
  AnalyticCase c;
  c.name = std::string(name);
  auto material = [&](double E, double nu) {
    c.material = MaterialParams::from_young_poisson(opt.E.value_or(E), opt.nu.value_or(nu));
  };
  c.layout = all_dirichlet;

  // Cases given by u and its gradient; sigma, p follow from the material.
  auto from_gradient = [&](std::function<Vec3(const Vec3&)> u, std::function<Mat3(const Vec3&)> grad) {
    const MaterialParams m = c.material;
    const int dim = c.dim;
    c.u = std::move(u);
    c.sigma = [m, dim, grad](const Vec3& x) { return stress_from_gradient(grad(x), m, dim); };
    c.p = [m, grad](const Vec3& x) { return m.lambda * grad(x).trace(); };
  };

  if (name == "patch") {
    c.dim = 2;
    c.domain = Box::unit(2);
    material(1.0, 0.45);
    from_gradient([](const Vec3& x) { return Vec3(1 + 2 * x.x() - x.y(), 3 - x.x() + x.y(), 0); },
                  [](const Vec3&) {
                    Mat3 G = Mat3::Zero();
                    G << 2, -1, 0, -1, 1, 0, 0, 0, 0;
                    return G;
                  });
    c.f = [](const Vec3&) { return Vec3(0, 0, 0); };
  } else if (name == "tc1") {
    c.dim = 2;
    c.domain = Box::unit(2);
    material(1.0, 0.45);
    from_gradient([](const Vec3& x) { return Vec3(x.x() * x.x() - x.y() * x.y(), x.x() * x.x() + x.y() * x.y(), 0); },
                  [](const Vec3& x) {
                    Mat3 G = Mat3::Zero();
                    G << 2 * x.x(), -2 * x.y(), 0, 2 * x.x(), 2 * x.y(), 0, 0, 0, 0;
                    return G;
                  });
    const double l = c.material.lambda;
    const double m = c.material.mu;
    c.f = [l, m](const Vec3&) { return Vec3(-2 * l - 2 * m, -2 * l - 6 * m, 0); };
  } else if (name == "tc2" || name == "tc3_mixed") {
    c.dim = 2;
    c.domain = Box::unit(2);
    const bool locking = name == "tc2";
    material(1.0, locking ? 0.45 : 0.3);
    const double inv = locking ? 1.0 / c.material.lambda : 0.0;
    from_gradient(
        [inv](const Vec3& x) {
          return Vec3(std::sin(x.x()) * std::sin(x.y()) + inv * x.x(), std::cos(x.x()) * std::cos(x.y()) + inv * x.y(), 0);
        },
        [inv](const Vec3& x) {
          const double sx = std::sin(x.x()), cx = std::cos(x.x()), sy = std::sin(x.y()), cy = std::cos(x.y());
          Mat3 G = Mat3::Zero();
          G << cx * sy + inv, sx * cy, 0, -sx * cy, -cx * sy + inv, 0, 0, 0, 0;
          return G;
        });
    // The trigonometric part is divergence free, so p = lambda * 2 / lambda exactly.
    if (locking) c.p = [](const Vec3&) { return 2.0; };
    const double m = c.material.mu;
    c.f = [m](const Vec3& x) {
      return Vec3(2 * m * std::sin(x.x()) * std::sin(x.y()), 2 * m * std::cos(x.x()) * std::cos(x.y()), 0);
    };
    if (!locking) {
      c.layout = [](const Vec3& x, const Vec3&) {
        return near(x.x(), 0.0, 1.0) ? BoundaryTag::dirichlet : BoundaryTag::neumann;
      };
    }
  } else if (name == "tc3d_1") {
    c.dim = 3;
    c.domain = Box::unit(3);
    material(1.0, 0.1);
    from_gradient(
        [](const Vec3& x) {
          return Vec3(std::sin(x.x()) * std::cos(x.y()), std::cos(x.x()) * std::sin(x.y()), (x.z() - 0.5) * (x.z() - 0.5));
        },
        [](const Vec3& x) {
          const double sx = std::sin(x.x()), cx = std::cos(x.x()), sy = std::sin(x.y()), cy = std::cos(x.y());
          Mat3 G;
          G << cx * cy, -sx * sy, 0, -sx * sy, cx * cy, 0, 0, 0, 2 * (x.z() - 0.5);
          return G;
        });
    const double a = 2 * (c.material.lambda + 2 * c.material.mu);
    c.f = [a](const Vec3& x) {
      return Vec3(a * std::sin(x.x()) * std::cos(x.y()), a * std::sin(x.y()) * std::cos(x.x()), -a);
    };
  } else if (name == "tc3d_2") {
    c.dim = 3;
    c.domain = Box::unit(3);
    material(1.0, 0.1);
    const double mu = c.material.mu;
    const double l = c.material.lambda;
    from_gradient(
        [mu](const Vec3& p) {
          const double x = p.x(), y = p.y(), z = p.z();
          return Vec3(-x * y * z, 3 * mu * z * (x * x - y * y) - z * z * z, 3 * y * z * z + mu * y * (y * y - 3 * x * x));
        },
        [mu](const Vec3& p) {
          const double x = p.x(), y = p.y(), z = p.z();
          Mat3 G;
          G << -y * z, -x * z, -x * y,                                           //
              6 * mu * z * x, -6 * mu * z * y, 3 * mu * (x * x - y * y) - 3 * z * z,  //
              -6 * mu * x * y, 3 * z * z + 3 * mu * y * y - 3 * mu * x * x, 6 * y * z;
          return G;
        });
    c.f = [l, mu](const Vec3& p) {
      return Vec3(0, p.z() * (6 * l * mu - 5 * l + 6 * mu * mu + mu), p.y() * (6 * l * mu - 5 * l + 6 * mu * mu - 11 * mu));
    };
  } else if (name == "cook") {
    c.dim = 2;
    c.cook_geometry = true;
    c.domain = Box{Vec3(0, 0, 0), Vec3(48, 60, 0), 2};
    material(1.12499998125, 0.499999975);
    c.has_exact = false;
    c.u = [](const Vec3&) { return Vec3(0, 0, 0); };
    c.sigma = [](const Vec3&) { return Mat3::Zero().eval(); };
    c.p = [](const Vec3&) { return 0.0; };
    c.f = [](const Vec3&) { return Vec3(0, 0, 0); };
    c.layout = [](const Vec3& x, const Vec3&) {
      return near(x.x(), 0.0, 48.0) ? BoundaryTag::dirichlet : BoundaryTag::neumann;
    };
    c.traction = [](const Vec3& x, const Vec3&) {
      return near(x.x(), 48.0, 48.0) ? Vec3(0, 1.0 / 16.0, 0) : Vec3(0, 0, 0);
    };
    c.probe = Vec3(48, 52, 0);
    c.probe_reference = 16.442;
  } else if (name == "shear_beam") {
    c.dim = 3;
    c.domain = Box{Vec3(-1, -1, 0), Vec3(1, 1, 10), 3};
    material(25.0, 0.3);
    const double F = 0.1;
    const double E = c.material.E;
    const double nu = c.material.nu;
    const double lambda = c.material.lambda;
    c.u = [F, E, nu](const Vec3& p) {
      const double x = p.x(), y = p.y(), z = p.z();
      return Vec3(-3 * F * nu / (4 * E) * x * y * z, F / (8 * E) * (3 * nu * z * (x * x - y * y) - z * z * z),
                  F / (8 * E) * (3 * y * z * z + nu * y * (y * y - 3 * x * x)) + 2 * (1 + nu) / E * shear_beam_psi(x, y, F, nu));
    };
    c.sigma = [F, nu](const Vec3& p) {
      const auto [s31, s23] = shear_beam_shear_stress(p.x(), p.y(), F, nu);
      Mat3 s = Mat3::Zero();
      s(2, 2) = 0.75 * F * p.y() * p.z();
      s(0, 2) = s(2, 0) = s31;
      s(1, 2) = s(2, 1) = s23;
      return s;
    };
    c.p = [F, E, nu, lambda](const Vec3& p) { return lambda * (1 - 2 * nu) * 0.75 * F * p.y() * p.z() / E; };
    c.f = [](const Vec3&) { return Vec3(0, 0, 0); };
    c.layout = [](const Vec3& x, const Vec3&) {
      return near(x.z(), 0.0, 10.0) ? BoundaryTag::neumann : BoundaryTag::dirichlet;
    };
    switch (opt.traction) {
      case TractionMode::exact: break;
      case TractionMode::uniform: c.traction = [F](const Vec3&, const Vec3&) { return Vec3(0, F, 0); }; break;
      case TractionMode::resultant: c.traction = [F](const Vec3&, const Vec3&) { return Vec3(0, -F, 0); }; break;
    }
  } else {
    throw ConfigError("unknown case '" + std::string(name) + "'");
  }
  if (!c.traction) {
    auto sigma = c.sigma;
    c.traction = [sigma](const Vec3& x, const Vec3& n) -> Vec3 { return sigma(x) * n; };
  }
  return c;
}

ExactValues eval_exact(const AnalyticCase& c, const Vec3& x) {
  return {c.u(x), c.p(x), c.sigma(x), c.f(x)};
}

PolytopalMesh case_mesh(const AnalyticCase& c, MeshFamily family, int n) {
  if (dimension(family) != c.dim) {
    throw ConfigError("mesh family '" + to_string(family) + "' does not fit the " + std::to_string(c.dim) + "D case " + c.name);
  }
  PolytopalMesh mesh = c.cook_geometry ? generate_cook_mesh(family, n) : generate_mesh(family, n, c.domain);
  return with_boundary_layout(mesh, c.layout);
}

ConsistencyReport verify_case_consistency(const AnalyticCase& c, int sample_count, unsigned seed) {
  ConsistencyReport rep;
  if (!c.has_exact) {
    rep.message = c.name + ": no closed-form solution, nothing to check";
    return rep;
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  const double h = 1e-5;
  const int d = c.dim;
  for (int s = 0; s < sample_count; ++s) {
    Vec3 x = Vec3::Zero();
    for (int k = 0; k < d; ++k) x[k] = c.domain.lo[k] + unit(rng) * (c.domain.hi[k] - c.domain.lo[k]);
    Mat3 G = Mat3::Zero();
    Vec3 divsig = Vec3::Zero();
    for (int l = 0; l < d; ++l) {
      Vec3 e = Vec3::Zero();
      e[l] = h;
      G.col(l) = (c.u(x + e) - c.u(x - e)) / (2 * h);
      divsig += (c.sigma(x + e) - c.sigma(x - e)).col(l) / (2 * h);
    }
    const Mat3 sig = c.sigma(x);
    const double cons = (sig - stress_from_gradient(G, c.material, d)).cwiseAbs().maxCoeff();
    const double eq = (c.f(x) + divsig).head(d).cwiseAbs().maxCoeff();
    if (cons > rep.max_constitutive || eq > rep.max_equilibrium) rep.worst_point = x;
    rep.max_constitutive = std::max(rep.max_constitutive, cons);
    rep.max_equilibrium = std::max(rep.max_equilibrium, eq);
  }
  rep.passed = rep.max_constitutive <= 1e-6 && rep.max_equilibrium <= 1e-5;
  std::ostringstream os;
  os << c.name << ": constitutive residual " << rep.max_constitutive << ", equilibrium residual "
     << rep.max_equilibrium << " (worst at " << rep.worst_point.transpose() << ")";
  rep.message = os.str();
  return rep;
}

std::string to_string(TractionMode mode) {
  switch (mode) {
    case TractionMode::exact: return "exact";
    case TractionMode::uniform: return "uniform";
    case TractionMode::resultant: return "resultant";
  }
  return "?";
}

TractionMode parse_traction_mode(std::string_view s) {
  if (s == "exact") return TractionMode::exact;
  if (s == "uniform") return TractionMode::uniform;
  if (s == "resultant") return TractionMode::resultant;
  throw ConfigError("unknown traction mode '" + std::string(s) + "'");
}

}  // namespace swg
