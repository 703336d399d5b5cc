#pragma once

#include <algorithm>
#include <random>

#include <Eigen/Dense>

#include "cavqed/hamiltonian.hpp"

namespace testsupport {

// Seeded bordered system: M levels inside a photon band of N modes. Every
// fourth seed makes the coupling rank deficient, every fifth repeats a level.
inline cavqed::CoupledSystem random_system(unsigned seed, Eigen::Index m, Eigen::Index n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> nd;
  Eigen::VectorXd ph(n);
  double w = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    w += 1e-3 * (0.2 + u(rng));
    ph[k] = w;
  }
  Eigen::VectorXd el(m);
  for (Eigen::Index i = 0; i < m; ++i) el[i] = ph[0] + (ph[n - 1] - ph[0]) * u(rng);
  std::sort(el.data(), el.data() + m);
  if (seed % 5 == 0 && m > 1) el[1] = el[0];
  Eigen::MatrixXd g(m, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = 3e-3 * nd(rng);
  if (seed % 4 == 0 && m > 1) g.row(m - 1) = 0.7 * g.row(0);
  if (seed % 3 == 0) g.col(n / 2).setZero();
  return cavqed::CoupledSystem(el, ph, g);
}

}  // namespace testsupport
