#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "majorana/canonical.hpp"
#include "majorana/chain.hpp"
#include "majorana/fock.hpp"
#include "majorana/observables.hpp"
#include "majorana/rng.hpp"

namespace majorana {

// All 2^N many-body energies implied by the canonical form: the ground energy
// plus every subset sum of quasiparticle energies. Ascending.
inline std::vector<double> canonical_spectrum(const CanonicalForm& canon) {
  if (canon.n_sites > 20)
    throw std::invalid_argument("canonical_spectrum: 2^n_sites enumeration capped at n_sites=20");
  const double e0 = ground_energy(canon);
  const std::uint32_t dim = 1u << canon.n_sites;
  std::vector<double> spectrum;
  spectrum.reserve(dim);
  for (std::uint32_t mask = 0; mask < dim; ++mask) {
    double e = e0;
    for (int m = 0; m < canon.n_sites; ++m)
      if ((mask >> m) & 1u) e += canon.epsilons[static_cast<std::size_t>(m)];
    spectrum.push_back(e);
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

// One randomized cross-validation against the brute-force oracle. Parameters
// (t, signed Delta, mu) are uniform on [-2, 2]; the Delta sign is carried as
// theta = pi so the phase machinery is exercised too. With noise_v0 > 0 both
// sides additionally share a disorder draw.
struct OracleTrial {
  ChainParams params;
  bool degenerate = false;
  bool parity_ok = false;
  double dev_energy = 0.0;
  double dev_density = 0.0;
  double dev_spectrum = 0.0;

  bool within(double tol) const {
    return parity_ok && dev_energy <= tol && dev_density <= tol && dev_spectrum <= tol;
  }
};

inline OracleTrial run_oracle_trial(std::uint64_t seed, std::uint64_t trial, int max_sites = 7,
                                    double noise_v0 = 0.0) {
  if (max_sites < 2 || max_sites > fock_max_sites)
    throw std::invalid_argument("run_oracle_trial: max_sites must be in [2, 10]");

  ChainParams params;
  params.n_sites =
      2 + static_cast<int>(rng::stream(seed, trial, 1000) %
                           static_cast<std::uint64_t>(max_sites - 1));
  params.t = rng::uniform(rng::stream(seed, trial, 0), -2.0, 2.0);
  const double delta_signed = rng::uniform(rng::stream(seed, trial, 1), -2.0, 2.0);
  params.delta_abs = std::abs(delta_signed);
  params.theta = delta_signed < 0.0 ? std::numbers::pi : 0.0;
  params.mu = rng::uniform(rng::stream(seed, trial, 2), -2.0, 2.0);

  SitePotentials pots;
  if (noise_v0 > 0.0) pots = sample_noise({noise_v0, rng::mix64(seed), trial}, params.n_sites);

  const CanonicalForm canon = canonicalize(build_majorana_matrix(params, pots));
  const GroundStateReport report = ground_state_report(canon);
  const OracleGround oracle = oracle_ground(params, pots);

  OracleTrial result;
  result.params = params;
  result.degenerate = oracle.degenerate;

  // At exact ground degeneracy the oracle pair spans both parities; compare
  // against the member whose density profile matches.
  const double dev_main = (report.densities - oracle.densities).cwiseAbs().maxCoeff();
  if (oracle.degenerate) {
    const double dev_partner =
        (report.densities - oracle.partner_densities).cwiseAbs().maxCoeff();
    if (dev_partner < dev_main) {
      result.dev_density = dev_partner;
      result.parity_ok = report.parity == oracle.partner_parity;
      result.dev_energy = std::abs(report.energy - oracle.partner_energy);
    } else {
      result.dev_density = dev_main;
      result.parity_ok = report.parity == oracle.parity;
      result.dev_energy = std::abs(report.energy - oracle.energy);
    }
  } else {
    result.dev_density = dev_main;
    result.parity_ok = report.parity == oracle.parity;
    result.dev_energy = std::abs(report.energy - oracle.energy);
  }

  const std::vector<double> from_canon = canonical_spectrum(canon);
  const std::vector<double> from_fock = oracle_spectrum(params, pots);
  double dev = 0.0;
  for (std::size_t i = 0; i < from_canon.size(); ++i)
    dev = std::max(dev, std::abs(from_canon[i] - from_fock[i]));
  result.dev_spectrum = dev;
  return result;
}

}  // namespace majorana
