#pragma once

// Floating-point evaluation of exact values, used only as an independent
// cross-check in tests.

#include "divzero/cyc.hpp"

#include <complex>
#include <numbers>
#include <vector>

namespace divzero::testing {

inline std::complex<double> to_complex(const Cyc& c) {
  const double theta = 2.0 * std::numbers::pi / c.order();
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < c.coeffs().size(); ++j)
    acc += c.coeffs()[j].raw().get_d() * std::polar(1.0, theta * static_cast<double>(j));
  return acc;
}

/// prod over primitive k of (x - e^{2 pi i k / n}), rounded to integers.
inline std::vector<long> numeric_cyclotomic(int n) {
  std::vector<std::complex<double>> poly{1.0};
  for (int k = 1; k <= n; ++k) {
    int a = k, b = n;
    while (b) { const int t = a % b; a = b; b = t; }
    if (a != 1) continue;
    const auto root = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= root * poly[i];
    }
    poly = std::move(next);
  }
  std::vector<long> out;
  for (const auto& c : poly) out.push_back(std::lround(c.real()));
  return out;
}

}  // namespace divzero::testing
