#pragma once
// Reference computations written independently of the library, in long
// double, for cross-checking. Values frozen from external high-precision
// runs are kept next to the tests that use them.

#include <cmath>
#include <cstddef>
#include <vector>

namespace ref {

using ld = long double;

inline ld coth(ld x) { return std::cosh(x) / std::sinh(x); }

inline ld ao_level(std::size_t n, ld w, ld lam) {
  const ld k = static_cast<ld>(n);
  return (k + 0.5L) * w + 1.5L * lam / (w * w) * (k * k + k + 0.5L);
}

// Gibbs weights over a fixed, generous number of first-order levels.
inline std::vector<ld> gibbs(const std::vector<ld>& e, ld beta) {
  std::vector<ld> p(e.size());
  ld z = 0;
  for (std::size_t n = 0; n < e.size(); ++n) z += p[n] = std::exp(-beta * (e[n] - e[0]));
  for (auto& x : p) x /= z;
  return p;
}

inline std::vector<ld> ao_levels(ld w, ld lam, std::size_t count = 400) {
  std::vector<ld> e(count);
  for (std::size_t n = 0; n < count; ++n) e[n] = ao_level(n, w, lam);
  return e;
}

inline std::vector<ld> spin_levels(ld w, ld lam) {
  return {w / 2 + 0.75L * lam / (w * w), 1.5L * w + 3.75L * lam / (w * w)};
}

struct Otto {
  ld q_c, q_h;
};

// Otto heats straight from the population sums.
inline Otto otto(const std::vector<ld>& hot, const std::vector<ld>& cold, ld bh, ld bc) {
  const auto ph = gibbs(hot, bh);
  const auto pc = gibbs(cold, bc);
  Otto o{0, 0};
  for (std::size_t n = 0; n < hot.size(); ++n) {
    o.q_c += cold[n] * (ph[n] - pc[n]);
    o.q_h += hot[n] * (pc[n] - ph[n]);
  }
  return o;
}

struct Thermal {
  ld u, s;
};

inline Thermal thermal(const std::vector<ld>& e, ld beta) {
  const auto p = gibbs(e, beta);
  Thermal t{0, 0};
  for (std::size_t n = 0; n < e.size(); ++n) {
    t.u += p[n] * e[n];
    if (p[n] > 0) t.s -= p[n] * std::log(p[n]);
  }
  return t;
}

// Classical phase-space partition function by a fine trapezoid rule on
// [-L, L]; the integrand is smooth and decays like a Gaussian, so the rule
// converges geometrically.
inline ld classical_z(ld beta, ld w, ld lam, std::size_t n = 200000) {
  const ld L = std::sqrt(80.0L / (beta * w * w));
  const ld h = 2 * L / static_cast<ld>(n);
  ld sum = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const ld x = -L + h * static_cast<ld>(i);
    const ld f = std::exp(-beta * (0.5L * w * w * x * x + lam * x * x * x * x));
    sum += (i == 0 || i == n) ? f / 2 : f;
  }
  const ld pi = 3.14159265358979323846264338327950288L;
  return sum * h * std::sqrt(2 * pi / beta) / (2 * pi);
}

}  // namespace ref
