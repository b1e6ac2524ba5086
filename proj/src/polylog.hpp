#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace swg::detail {

// zeta(m) for integer m in [-kZetaSpan, 3], computed once.
inline constexpr int kZetaSpan = 120;
inline double zeta_int(int m) {
  static const auto table = [] {
    std::array<double, kZetaSpan + 4> t{};
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      const int arg = 3 - i;
      t[i] = arg == 1 ? 0.0 : std::riemann_zeta(static_cast<double>(arg));
    }
    return t;
  }();
  return table[3 - m];
}

// Li_s(z) for s in {2, 3} and |z| <= 1.
inline std::complex<double> polylog(int s, std::complex<double> z) {
  using C = std::complex<double>;
  if (std::abs(z) > 1.0 + 1e-14) throw std::domain_error("polylog: |z| > 1");
  if (z == C(0.0)) return 0.0;
  if (std::abs(z) <= 0.5) {
    C sum = 0.0;
    C zn = z;
    for (int n = 1; n < 200; ++n) {
      const C term = zn / std::pow(static_cast<double>(n), s);
      sum += term;
      if (std::abs(term) < 1e-18) break;
      zn *= z;
    }
    return sum;
  }
  // Expansion in mu = log z, valid for |mu| < 2 pi.
  const C mu = std::log(z);
  if (std::abs(mu) < 1e-300) return zeta_int(s);
  double harmonic = 0.0;
  for (int j = 1; j < s; ++j) harmonic += 1.0 / j;
  double fact = 1.0;
  for (int j = 2; j < s; ++j) fact *= j;
  C sum = std::pow(mu, s - 1) / fact * (harmonic - std::log(-mu));
  C mk = 1.0;
  double kfact = 1.0;
  for (int k = 0; k < kZetaSpan; ++k) {
    if (k > 0) {
      mk *= mu;
      kfact *= k;
    }
    if (k == s - 1) continue;
    const int arg = s - k;
    // zeta vanishes at negative even integers.
    if (arg < 0 && (-arg) % 2 == 0) continue;
    const C term = mk / kfact * zeta_int(arg);
    sum += term;
    if (k > s + 2 && std::abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace swg::detail
