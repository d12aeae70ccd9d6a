#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "majorana/chain.hpp"
#include "majorana/errors.hpp"

namespace majorana {

inline constexpr int fock_max_sites = 10;

// Dense many-body Hamiltonian in the occupation basis: bit j of a basis index
// is the occupation of site j+1, and the Jordan-Wigner string of site j
// counts the set bits below j. Dimension 2^N, capped at N = 10.
struct FockHamiltonian {
  int n_sites = 0;
  Eigen::MatrixXcd matrix;
};

namespace detail {

inline double jw_phase(int site, std::uint32_t state) {
  const std::uint32_t mask = (1u << site) - 1u;
  return (std::popcount(state & mask) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

inline FockHamiltonian build_fock_hamiltonian(const ChainParams& params,
                                              const SitePotentials& potentials = {}) {
  if (params.n_sites < 1 || params.n_sites > fock_max_sites)
    throw std::invalid_argument("build_fock_hamiltonian: n_sites must be in [1, 10]");
  if (!potentials.values.empty() &&
      potentials.values.size() != static_cast<std::size_t>(params.n_sites))
    throw std::invalid_argument("build_fock_hamiltonian: potentials size != n_sites");

  const int n_sites = params.n_sites;
  const std::uint32_t dim = 1u << n_sites;
  const std::complex<double> delta{params.delta_abs * std::cos(params.theta),
                                   params.delta_abs * std::sin(params.theta)};

  FockHamiltonian fock;
  fock.n_sites = n_sites;
  fock.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd& h = fock.matrix;

  for (std::uint32_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int j = 0; j < n_sites; ++j) {
      const double v = potentials.values.empty() ? 0.0 : potentials.values[static_cast<std::size_t>(j)];
      const double occ = (b >> j) & 1u ? 1.0 : 0.0;
      diag += -(params.mu - v) * (occ - 0.5);
    }
    h(b, b) += diag;

    for (int j = 0; j + 1 < n_sites; ++j) {
      const bool occ_j = (b >> j) & 1u;
      const bool occ_next = (b >> (j + 1)) & 1u;

      // -t a_j^dag a_{j+1}; the reverse hop is the adjoint entry, written in
      // the same pass so Hermiticity holds to the last bit.
      if (occ_next && !occ_j) {
        const double s1 = detail::jw_phase(j + 1, b);
        const std::uint32_t b1 = b & ~(1u << (j + 1));
        const double s2 = detail::jw_phase(j, b1);
        const std::uint32_t b2 = b1 | (1u << j);
        const double amp = -params.t * s1 * s2;
        h(b2, b) += amp;
        h(b, b2) += amp;
      }

      // delta a_j a_{j+1} (rightmost operator acts first) plus its adjoint.
      if (occ_j && occ_next) {
        const double s1 = detail::jw_phase(j + 1, b);
        const std::uint32_t b1 = b & ~(1u << (j + 1));
        const double s2 = detail::jw_phase(j, b1);
        const std::uint32_t b2 = b1 & ~(1u << j);
        const std::complex<double> amp = delta * (s1 * s2);
        h(b2, b) += amp;
        h(b, b2) += std::conj(amp);
      }
    }
  }
  return fock;
}

// Parity-resolved view: the Hamiltonian is exactly block diagonal in fermion
// parity, so each sector is diagonalized on its own. This keeps eigenvectors
// parity-pure even at exact ground degeneracy.
struct FockSectors {
  std::vector<std::uint32_t> even_states, odd_states;
  Eigen::MatrixXcd h_even, h_odd;
};

inline FockSectors split_parity_sectors(const FockHamiltonian& fock) {
  const std::uint32_t dim = static_cast<std::uint32_t>(fock.matrix.rows());
  FockSectors sectors;
  for (std::uint32_t b = 0; b < dim; ++b)
    (std::popcount(b) % 2 == 0 ? sectors.even_states : sectors.odd_states).push_back(b);
  auto fill = [&fock](const std::vector<std::uint32_t>& states, Eigen::MatrixXcd& out) {
    const int m = static_cast<int>(states.size());
    out.resize(m, m);
    for (int col = 0; col < m; ++col)
      for (int row = 0; row < m; ++row)
        out(row, col) = fock.matrix(states[static_cast<std::size_t>(row)],
                                    states[static_cast<std::size_t>(col)]);
  };
  fill(sectors.even_states, sectors.h_even);
  fill(sectors.odd_states, sectors.h_odd);
  return sectors;
}

struct OracleGround {
  double energy = 0.0;
  int parity = 1;
  Eigen::VectorXd densities;
  bool degenerate = false;  // sector minima closer than degeneracy_tol
  // Lowest state of the opposite parity sector; at degeneracy this is the
  // other member of the ground pair.
  double partner_energy = 0.0;
  int partner_parity = 1;
  Eigen::VectorXd partner_densities;
};

namespace detail {

inline Eigen::VectorXd sector_densities(const Eigen::VectorXcd& vec,
                                        const std::vector<std::uint32_t>& states, int n_sites) {
  Eigen::VectorXd density = Eigen::VectorXd::Zero(n_sites);
  for (int a = 0; a < static_cast<int>(states.size()); ++a) {
    const double weight = std::norm(vec(a));
    const std::uint32_t b = states[static_cast<std::size_t>(a)];
    for (int j = 0; j < n_sites; ++j)
      if ((b >> j) & 1u) density(j) += weight;
  }
  return density;
}

}  // namespace detail

inline OracleGround oracle_ground(const ChainParams& params, const SitePotentials& potentials = {},
                                  double degeneracy_tol = 1e-8) {
  const FockHamiltonian fock = build_fock_hamiltonian(params, potentials);
  const FockSectors sectors = split_parity_sectors(fock);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> even(sectors.h_even);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> odd(sectors.h_odd);
  if (even.info() != Eigen::Success || odd.info() != Eigen::Success)
    throw numerical_error("oracle_ground: eigensolver did not converge");

  const double e_even = even.eigenvalues()(0);
  const double e_odd = odd.eigenvalues()(0);
  const bool even_wins = e_even <= e_odd;

  OracleGround result;
  result.degenerate = std::abs(e_even - e_odd) < degeneracy_tol;
  result.energy = even_wins ? e_even : e_odd;
  result.parity = even_wins ? 1 : -1;
  result.densities = even_wins ? detail::sector_densities(even.eigenvectors().col(0),
                                                          sectors.even_states, fock.n_sites)
                               : detail::sector_densities(odd.eigenvectors().col(0),
                                                          sectors.odd_states, fock.n_sites);
  result.partner_energy = even_wins ? e_odd : e_even;
  result.partner_parity = even_wins ? -1 : 1;
  result.partner_densities = even_wins
                                 ? detail::sector_densities(odd.eigenvectors().col(0),
                                                            sectors.odd_states, fock.n_sites)
                                 : detail::sector_densities(even.eigenvectors().col(0),
                                                            sectors.even_states, fock.n_sites);
  return result;
}

// All 2^N many-body eigenvalues, ascending.
inline std::vector<double> oracle_spectrum(const ChainParams& params,
                                           const SitePotentials& potentials = {}) {
  const FockHamiltonian fock = build_fock_hamiltonian(params, potentials);
  const FockSectors sectors = split_parity_sectors(fock);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> even(sectors.h_even, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> odd(sectors.h_odd, Eigen::EigenvaluesOnly);
  if (even.info() != Eigen::Success || odd.info() != Eigen::Success)
    throw numerical_error("oracle_spectrum: eigensolver did not converge");
  std::vector<double> spectrum;
  spectrum.reserve(static_cast<std::size_t>(fock.matrix.rows()));
  for (int i = 0; i < even.eigenvalues().size(); ++i) spectrum.push_back(even.eigenvalues()(i));
  for (int i = 0; i < odd.eigenvalues().size(); ++i) spectrum.push_back(odd.eigenvalues()(i));
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

}  // namespace majorana
