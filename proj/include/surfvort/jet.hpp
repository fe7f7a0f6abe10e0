// Second-order forward-mode jets over the three chart coordinates.
#pragma once

#include <array>
#include <cmath>

namespace surfvort {

struct Jet {
  double v = 0.0;
  std::array<double, 3> d{};
  std::array<std::array<double, 3>, 3> h{};

  Jet() = default;
  Jet(double c) : v(c) {}  // NOLINT: constants promote implicitly

  static Jet variable(double x, int k) {
    Jet j(x);
    j.d[k] = 1.0;
    return j;
  }
};

// f(a) given f, f', f'' at a.v
inline Jet chain(const Jet& a, double f, double f1, double f2) {
  Jet r;
  r.v = f;
  for (int i = 0; i < 3; ++i) {
    r.d[i] = f1 * a.d[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = f1 * a.h[i][j] + f2 * a.d[i] * a.d[j];
  }
  return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v + b.v;
  for (int i = 0; i < 3; ++i) {
    r.d[i] = a.d[i] + b.d[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
  }
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r;
  r.v = -a.v;
  for (int i = 0; i < 3; ++i) {
    r.d[i] = -a.d[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = -a.h[i][j];
  }
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  for (int i = 0; i < 3; ++i) {
    r.d[i] = a.v * b.d[i] + b.v * a.d[i];
    for (int j = 0; j < 3; ++j)
      r.h[i][j] = a.v * b.h[i][j] + b.v * a.h[i][j] + a.d[i] * b.d[j] + a.d[j] * b.d[i];
  }
  return r;
}

inline Jet inv(const Jet& a) {
  double x = 1.0 / a.v;
  return chain(a, x, -x * x, 2.0 * x * x * x);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }

inline Jet sin(const Jet& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet sinh(const Jet& a) { return chain(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet cosh(const Jet& a) { return chain(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }
inline Jet exp(const Jet& a) {
  double e = std::exp(a.v);
  return chain(a, e, e, e);
}
inline Jet log(const Jet& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sqrt(const Jet& a) {
  double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

}  // namespace surfvort
