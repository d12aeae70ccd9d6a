#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>

#include "majorana/canonical.hpp"

namespace majorana {

// Ground-state energy of H = (i/4) sum A gamma gamma: filling every negative
// quasiparticle level gives -1/2 sum_m eps_m.
inline double ground_energy(const CanonicalForm& canon) {
  double sum = 0.0;
  for (double e : canon.epsilons) sum += e;
  return -0.5 * sum;
}

// T_{J m} maps annihilation operators onto the canonical pair m:
// d_m = 1/2 sum_J (W_{2m-1,J} + i W_{2m,J}) gamma_J, so column m holds the
// complex amplitudes of the old Majoranas in quasiparticle m.
inline Eigen::MatrixXcd quasiparticle_transform(const CanonicalForm& canon) {
  const int n = static_cast<int>(canon.w.rows());
  const int n_modes = canon.n_sites;
  Eigen::MatrixXcd t(n, n_modes);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int m = 0; m < n_modes; ++m)
    t.col(m) = canon.w.row(2 * m).transpose() + i_unit * canon.w.row(2 * m + 1).transpose();
  return t;
}

// Ground-state covariance M_{kl} = (i/2) <[gamma_k, gamma_l]>. In the
// canonical basis every pair is in its empty state, giving blocks
// [[0, 1], [-1, 0]]; pulling back with W gives M = W^T Mtilde W.
inline Eigen::MatrixXd covariance_matrix(const CanonicalForm& canon) {
  const int n = static_cast<int>(canon.w.rows());
  Eigen::MatrixXd rotated(n, n);
  for (int m = 0; m < canon.n_sites; ++m) {
    rotated.row(2 * m) = canon.w.row(2 * m + 1);
    rotated.row(2 * m + 1) = -canon.w.row(2 * m);
  }
  return canon.w.transpose() * rotated;
}

// Site occupations n_j = <a_j^dag a_j> = (1 - M_{2j-1,2j}) / 2.
inline Eigen::VectorXd electron_density(const Eigen::MatrixXd& covariance) {
  const int n_sites = static_cast<int>(covariance.rows()) / 2;
  Eigen::VectorXd density(n_sites);
  for (int j = 0; j < n_sites; ++j) density(j) = 0.5 * (1.0 - covariance(2 * j, 2 * j + 1));
  return density;
}

// Fermion parity of the ground state, Pf(M) = det(W) Pf(Mtilde) with
// Pf(Mtilde) = +1 for the all-empty block convention.
inline int ground_parity(const CanonicalForm& canon) { return canon.det_w; }

// Lowest quasiparticle energy not counted as a zero mode. NaN when every
// mode sits below the tolerance (nothing to clamp against).
inline double excitation_gap(const CanonicalForm& canon, double energy_tol = 0.002) {
  for (double e : canon.epsilons)
    if (e >= energy_tol) return e;
  return std::numeric_limits<double>::quiet_NaN();
}

struct GroundStateReport {
  double energy = 0.0;
  double gap = 0.0;  // excitation gap; NaN when undefined
  int parity = 1;
  Eigen::VectorXd densities;
};

inline GroundStateReport ground_state_report(const CanonicalForm& canon,
                                             double energy_tol = 0.002) {
  GroundStateReport report;
  report.energy = ground_energy(canon);
  report.gap = excitation_gap(canon, energy_tol);
  report.parity = ground_parity(canon);
  report.densities = electron_density(covariance_matrix(canon));
  return report;
}

}  // namespace majorana
