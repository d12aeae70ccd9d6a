#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "majorana/canonical.hpp"
#include "majorana/chain.hpp"
#include "majorana/errors.hpp"
#include "majorana/observables.hpp"
#include "majorana/parallel.hpp"
#include "majorana/phase_scan.hpp"

namespace majorana {

// Effective coupling between the dot fermion and the chain's lowest mode,
// built from the mode's amplitudes on the last site's two Majoranas:
//   S = scale * [ -1/2 (-t + |Delta|) T_{2N-1,1} + (i/2) (t + |Delta|) T_{2N,1} ],
// T as in quasiparticle_transform. |S| is gauge invariant; the phase follows
// the gauge of rows 0, 1 of W, so fix the gauge first for reproducibility.
inline std::complex<double> coupling_constant(const CanonicalForm& canon,
                                              const ChainParams& chain,
                                              double coupling_scale = 1.0) {
  const int n = 2 * canon.n_sites;
  if (n < 2) throw std::invalid_argument("coupling_constant: empty form");
  const std::complex<double> i_unit(0.0, 1.0);
  const std::complex<double> t_first(canon.w(0, n - 2), canon.w(1, n - 2));  // T_{2N-1,1}
  const std::complex<double> t_second(canon.w(0, n - 1), canon.w(1, n - 1));  // T_{2N,1}
  return coupling_scale * (-0.5 * (-chain.t + chain.delta_abs) * t_first +
                           0.5 * i_unit * (chain.t + chain.delta_abs) * t_second);
}

// Two-level reduction of (dot at bias v) + (zero mode with coupling s):
// quasiparticle energy e_plus and the dot ground-state amplitudes c1, c2 with
// |c1|^2 + |c2|^2 = 1 by construction. |c1| = |c2| = 1/sqrt(2) at v = mu.
struct PerturbativeAmplitudes {
  double e_plus = 0.0;
  std::complex<double> c1, c2;
};

inline PerturbativeAmplitudes perturbative_amplitudes(double v, double mu,
                                                      std::complex<double> s) {
  if (std::abs(s) == 0.0)
    throw std::invalid_argument("perturbative_amplitudes: zero coupling, amplitudes undefined");
  PerturbativeAmplitudes amps;
  const double detuning = 0.5 * (v - mu);
  amps.e_plus = std::hypot(detuning, std::abs(s));
  const std::complex<double> rho = -(detuning + amps.e_plus) / s;
  const double norm = std::sqrt(1.0 + std::norm(rho));
  amps.c1 = rho / norm;
  amps.c2 = 1.0 / norm;
  return amps;
}

// Chain plus dot as an (N+1)-site chain: the dot is site N+1 at potential
// offset v, and the last bond's Majorana couplings are scaled by
// coupling_scale. Diagonalized exactly through canonicalize.
inline CanonicalForm exact_extended_chain(const ChainParams& chain, double v,
                                          double coupling_scale = 1.0) {
  ChainParams extended = chain;
  extended.n_sites = chain.n_sites + 1;
  SitePotentials pots;
  pots.values.assign(static_cast<std::size_t>(extended.n_sites), 0.0);
  pots.values.back() = v;
  MajoranaForm form = build_majorana_matrix(extended, pots);
  if (coupling_scale != 1.0) {
    const int n = 2 * chain.n_sites;  // first dot Majorana (0-based column n)
    form.matrix(n - 1, n) *= coupling_scale;
    form.matrix(n, n - 1) *= coupling_scale;
    form.matrix(n - 2, n + 1) *= coupling_scale;
    form.matrix(n + 1, n - 2) *= coupling_scale;
  }
  return canonicalize(form);
}

struct DotSweepSpec {
  ChainParams chain;
  double v_min = 0.0, v_max = 0.0;
  int v_count = 1;
  double coupling_scale = 1.0;
  bool clamp_to_gap = true;   // drop bias points with e_plus >= bare gap
  bool compute_exact = false;  // also diagonalize the extended chain per point
  double energy_tol = 0.002;
};

struct SweepPoint {
  double v = 0.0;
  std::complex<double> s;
  double e_plus = 0.0;
  double c1_abs2 = 0.0, c2_abs2 = 0.0;
  // Extended-chain check, NaN unless computed. The chain keeps an exact zero
  // mode for every bias (exact_eps1 ~ 0); the dot-hybridized level is
  // exact_eps2 ~ 2 e_plus while it stays inside the gap.
  double exact_eps1 = std::numeric_limits<double>::quiet_NaN();
  double exact_eps2 = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<double> excluded_v;  // bias points removed by the clamp
  double gap = 0.0;                // bare-chain excitation gap
  std::complex<double> s;          // coupling at the requested scale
  double localization = 0.0;       // of the gauge-fixed lowest pair
};

inline SweepResult sweep_bias(const DotSweepSpec& spec, int n_threads = 0) {
  if (spec.v_count < 1) throw std::invalid_argument("sweep_bias: v_count must be >= 1");

  CanonicalForm canon = canonicalize(build_majorana_matrix(spec.chain));
  SweepResult result;
  result.localization = gauge_fix_lowest_pair(canon);
  result.s = coupling_constant(canon, spec.chain, spec.coupling_scale);
  result.gap = excitation_gap(canon, spec.energy_tol);
  if (std::abs(result.s) == 0.0)
    throw std::invalid_argument("sweep_bias: coupling constant is zero, amplitudes undefined");

  const std::vector<double> biases = grid_axis(spec.v_min, spec.v_max, spec.v_count);
  for (double v : biases) {
    const PerturbativeAmplitudes amps = perturbative_amplitudes(v, spec.chain.mu, result.s);
    if (spec.clamp_to_gap && !std::isnan(result.gap) && amps.e_plus >= result.gap) {
      result.excluded_v.push_back(v);
      continue;
    }
    SweepPoint point;
    point.v = v;
    point.s = result.s;
    point.e_plus = amps.e_plus;
    point.c1_abs2 = std::norm(amps.c1);
    point.c2_abs2 = std::norm(amps.c2);
    result.points.push_back(point);
  }
  if (result.points.empty())
    throw empty_result_error("sweep_bias: every bias point was clamped away by the gap");

  if (spec.compute_exact) {
    parallel_for_index(static_cast<int>(result.points.size()), n_threads, [&](int i) {
      SweepPoint& point = result.points[static_cast<std::size_t>(i)];
      const CanonicalForm extended =
          exact_extended_chain(spec.chain, point.v, spec.coupling_scale);
      point.exact_eps1 = extended.epsilons[0];
      point.exact_eps2 = extended.epsilons[1];
    });
  }
  return result;
}

}  // namespace majorana
