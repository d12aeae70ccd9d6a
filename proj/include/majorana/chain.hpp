#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "majorana/rng.hpp"

namespace majorana {

// Open Kitaev chain
//   H = sum_j [ -t a_j^dag a_{j+1} + |Delta| e^{i theta} a_j a_{j+1} + h.c. ]
//       - sum_j (mu - V_j) (a_j^dag a_j - 1/2).
// The pairing phase is absorbed into the Majorana operators
//   gamma_{2j-1} = e^{i theta/2} a_j + e^{-i theta/2} a_j^dag,
//   gamma_{2j}   = -i (e^{i theta/2} a_j - e^{-i theta/2} a_j^dag),
// so the quadratic form below depends on |Delta| only.
struct ChainParams {
  int n_sites = 1;
  double t = 1.0;
  double delta_abs = 0.0;  // |Delta| >= 0; a signed Delta is (|Delta|, theta = pi)
  double theta = 0.0;
  double mu = 0.0;
};

// On-site potential offsets V_j; the effective chemical potential is mu - V_j.
struct SitePotentials {
  std::vector<double> values;
};

// Disorder draw identity. draw_index selects the realization within a seed's
// stream, so (seed, draw_index) fully determines the potentials.
struct NoiseConfig {
  double v0 = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t draw_index = 0;
};

// V_j uniform on (-v0, v0), keyed by (seed, draw_index, site).
inline SitePotentials sample_noise(const NoiseConfig& cfg, int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("sample_noise: n_sites must be >= 1");
  SitePotentials pots;
  pots.values.resize(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    const std::uint64_t word =
        rng::stream(cfg.seed, cfg.draw_index, static_cast<std::uint64_t>(j));
    pots.values[static_cast<std::size_t>(j)] = 2.0 * cfg.v0 * (rng::uniform_open01(word) - 0.5);
  }
  return pots;
}

// H = (i/4) sum_{kl} A_{kl} gamma_k gamma_l with A real antisymmetric, 2N x 2N.
struct MajoranaForm {
  int n_sites = 0;
  Eigen::MatrixXd matrix;
  ChainParams params;
  SitePotentials potentials;  // empty means clean
};

inline MajoranaForm build_majorana_matrix(const ChainParams& params,
                                          const SitePotentials& potentials = {}) {
  if (params.n_sites < 1)
    throw std::invalid_argument("build_majorana_matrix: n_sites must be >= 1");
  if (params.delta_abs < 0.0)
    throw std::invalid_argument("build_majorana_matrix: delta_abs must be >= 0");
  if (!potentials.values.empty() &&
      potentials.values.size() != static_cast<std::size_t>(params.n_sites))
    throw std::invalid_argument("build_majorana_matrix: potentials size != n_sites");

  const int n_sites = params.n_sites;
  MajoranaForm form;
  form.n_sites = n_sites;
  form.params = params;
  form.potentials = potentials;
  form.matrix = Eigen::MatrixXd::Zero(2 * n_sites, 2 * n_sites);
  Eigen::MatrixXd& a = form.matrix;

  auto set_pair = [&a](int row, int col, double value) {
    a(row, col) = value;
    a(col, row) = -value;
  };

  for (int j = 0; j < n_sites; ++j) {
    const double v = potentials.values.empty() ? 0.0 : potentials.values[static_cast<std::size_t>(j)];
    set_pair(2 * j, 2 * j + 1, -(params.mu - v));
  }
  for (int j = 0; j + 1 < n_sites; ++j) {
    set_pair(2 * j + 1, 2 * j + 2, params.t + params.delta_abs);
    set_pair(2 * j, 2 * j + 3, -params.t + params.delta_abs);
  }
  return form;
}

// Infinite-chain quasiparticle branches at momentum k.
inline std::pair<double, double> bulk_dispersion(const ChainParams& params, double k) {
  const double axial = 2.0 * params.t * std::cos(k) + params.mu;
  const double planar = 2.0 * params.delta_abs * std::sin(k);
  const double eps = std::hypot(axial, planar);
  return {eps, -eps};
}

// Minimum of the positive branch over an inclusive uniform grid on [-pi, pi].
// The default sample count puts k = 0, +-pi/2, +-pi exactly on the grid.
inline double bulk_gap(const ChainParams& params, int k_samples = 10001) {
  if (k_samples < 2) throw std::invalid_argument("bulk_gap: k_samples must be >= 2");
  const double pi = std::numbers::pi;
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k_samples; ++i) {
    const double k = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(k_samples - 1);
    gap = std::min(gap, bulk_dispersion(params, k).first);
  }
  return gap;
}

}  // namespace majorana
