#pragma once

// Reference computations that share no code path with the library: brackets
// by explicit summation, the Levi-Civita connection through the g-adjoint of
// ad, and g_Y by polarized five-point second differences of F^2.

#include <cmath>
#include <random>

#include "mflag/lie_algebra.hpp"

namespace oracle {

using mflag::Mat;
using mflag::Vec;

inline Vec bracket(const mflag::LieAlgebra& alg, const Vec& a, const Vec& b) {
  const int n = alg.dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[k] += a[i] * b[j] * alg.c(k, i, j);
  return out;
}

// <ad*_a b, c> = <b, [a, c]>
inline Vec ad_star(const mflag::LieAlgebra& alg, const Mat& G, const Vec& a, const Vec& b) {
  const int n = alg.dim();
  Vec rhs(n);
  for (int c = 0; c < n; ++c) rhs[c] = b.dot(G * bracket(alg, a, Vec::Unit(n, c)));
  return G.inverse() * rhs;
}

// nabla_a b = 1/2 ([a,b] - ad*_a b - ad*_b a)
inline Vec nabla(const mflag::LieAlgebra& alg, const Mat& G, const Vec& a, const Vec& b) {
  return 0.5 * (bracket(alg, a, b) - ad_star(alg, G, a, b) - ad_star(alg, G, b, a));
}

inline Vec curvature(const mflag::LieAlgebra& alg, const Mat& G, const Vec& U, const Vec& Y,
                     const Vec& Z) {
  return nabla(alg, G, U, nabla(alg, G, Y, Z)) - nabla(alg, G, Y, nabla(alg, G, U, Z)) -
         nabla(alg, G, bracket(alg, U, Y), Z);
}

inline double F(const Vec& y, const Mat& G, const Vec& X) {
  const double a = std::sqrt(y.dot(G * y));
  return a * a / (a - X.dot(G * y));
}

// g_Y(W, W) = 1/2 d^2/ds^2 F^2(Y + sW).
inline double quadratic(const Vec& Y, const Vec& W, const Mat& G, const Vec& X) {
  const double wn = std::sqrt(W.dot(G * W));
  if (wn == 0.0) return 0.0;
  const double h = 1e-3 * std::sqrt(Y.dot(G * Y)) / wn;
  const auto f = [&](double s) {
    const double v = F(Y + s * W, G, X);
    return v * v;
  };
  const double d2 =
      (-f(2 * h) + 16 * f(h) - 30 * f(0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
  return 0.5 * d2;
}

inline double g_Y(const Vec& Y, const Vec& U, const Vec& V, const Mat& G, const Vec& X) {
  return 0.25 * (quadratic(Y, U + V, G, X) - quadratic(Y, U - V, G, X));
}

inline double flag_curvature(const mflag::LieAlgebra& alg, const Mat& G, const Vec& X,
                             const Vec& Y, const Vec& U) {
  const Vec r = curvature(alg, G, U, Y, Y);
  const double num = g_Y(Y, r, U, G, X);
  const double yy = g_Y(Y, Y, Y, G, X);
  const double uu = g_Y(Y, U, U, G, X);
  const double uy = g_Y(Y, U, Y, G, X);
  return num / (yy * uu - uy * uy);
}

inline Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

inline Mat random_spd(std::mt19937_64& rng, int n) {
  const Vec d = random_vec(rng, n * n);
  const Mat A = Eigen::Map<const Mat>(d.data(), n, n);
  return A * A.transpose() + 0.5 * Mat::Identity(n, n);
}

}  // namespace oracle
