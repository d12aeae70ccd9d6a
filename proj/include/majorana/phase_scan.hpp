#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "majorana/canonical.hpp"
#include "majorana/chain.hpp"
#include "majorana/errors.hpp"
#include "majorana/parallel.hpp"

namespace majorana {

// Inclusive uniform grid; count == 1 collapses to {lo}.
inline std::vector<double> grid_axis(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid_axis: count must be >= 1");
  if (hi < lo) throw std::invalid_argument("grid_axis: hi must be >= lo");
  std::vector<double> axis(static_cast<std::size_t>(count));
  if (count == 1) {
    axis[0] = lo;
    return axis;
  }
  for (int i = 0; i < count; ++i)
    axis[static_cast<std::size_t>(i)] =
        lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(count - 1);
  return axis;
}

struct GridSpec {
  int n_sites = 1;
  double t = 1.0;
  double delta_min = 0.0, delta_max = 0.0;
  int delta_count = 1;
  double mu_min = 0.0, mu_max = 0.0;
  int mu_count = 1;
  double energy_tol = 0.002;
  bool strict = false;  // also require eps2 > 10 * energy_tol
};

// One grid cell. Clean scans set n_seeds = 0 and survival_fraction to the
// 0/1 classification; noisy scans report eps1/eps2 of the first realization
// (seed index 0) and classify by majority of realizations.
struct PhasePoint {
  double delta = 0.0, mu = 0.0;
  double eps1 = 0.0, eps2 = 0.0;
  bool has_zero_mode = false;
  double survival_fraction = 0.0;
  int n_seeds = 0;
};

enum class NoiseMode {
  fresh_per_cell,    // independent draw per (cell, seed index)
  fixed_across_grid  // one potential per seed index, shared by every cell
};

namespace detail {

inline void validate_grid(const GridSpec& g) {
  if (g.n_sites < 1) throw std::invalid_argument("scan: n_sites must be >= 1");
  if (g.delta_count < 1 || g.mu_count < 1)
    throw std::invalid_argument("scan: axis counts must be >= 1");
  if (g.delta_min < 0.0) throw std::invalid_argument("scan: delta_min must be >= 0");
  if (!(g.energy_tol > 0.0)) throw std::invalid_argument("scan: energy_tol must be > 0");
}

inline bool classify(const GridSpec& g, double eps1, double eps2) {
  if (!(eps1 < g.energy_tol)) return false;
  if (g.strict && !(eps2 > 10.0 * g.energy_tol)) return false;
  return true;
}

template <class Cell>
[[noreturn]] inline void rethrow_with_cell(const Cell& cell, const std::exception& e) {
  throw numerical_error("scan cell (delta=" + std::to_string(cell.first) +
                        ", mu=" + std::to_string(cell.second) + "): " + e.what());
}

}  // namespace detail

// Clean phase diagram over the (delta, mu) grid, row-major with delta outer
// and mu inner: cell_index = delta_index * mu_count + mu_index. That index
// convention also keys the disorder draws in scan_with_noise, so it is part
// of the output contract, not an implementation detail.
inline std::vector<PhasePoint> scan_phase(const GridSpec& grid, int n_threads = 0) {
  detail::validate_grid(grid);
  const std::vector<double> deltas = grid_axis(grid.delta_min, grid.delta_max, grid.delta_count);
  const std::vector<double> mus = grid_axis(grid.mu_min, grid.mu_max, grid.mu_count);
  const int total = grid.delta_count * grid.mu_count;

  std::vector<PhasePoint> points(static_cast<std::size_t>(total));
  parallel_for_index(total, n_threads, [&](int idx) {
    const double delta = deltas[static_cast<std::size_t>(idx / grid.mu_count)];
    const double mu = mus[static_cast<std::size_t>(idx % grid.mu_count)];
    try {
      const ChainParams params{grid.n_sites, grid.t, delta, 0.0, mu};
      const CanonicalForm canon = canonicalize(build_majorana_matrix(params));
      PhasePoint& p = points[static_cast<std::size_t>(idx)];
      p.delta = delta;
      p.mu = mu;
      p.eps1 = canon.epsilons[0];
      p.eps2 = grid.n_sites > 1 ? canon.epsilons[1] : std::numeric_limits<double>::quiet_NaN();
      p.has_zero_mode = detail::classify(grid, p.eps1, p.eps2);
      p.survival_fraction = p.has_zero_mode ? 1.0 : 0.0;
      p.n_seeds = 0;
    } catch (const std::exception& e) {
      detail::rethrow_with_cell(std::make_pair(delta, mu), e);
    }
  });
  return points;
}

// Disordered phase diagram: n_seeds realizations per cell with V_j uniform on
// (-v0, v0). A cell keeps its zero mode when the per-realization
// classification survives in more than `majority` of the draws.
inline std::vector<PhasePoint> scan_with_noise(const GridSpec& grid, double v0, int n_seeds,
                                               std::uint64_t base_seed,
                                               NoiseMode mode = NoiseMode::fresh_per_cell,
                                               int n_threads = 0, double majority = 0.5) {
  detail::validate_grid(grid);
  if (v0 < 0.0) throw std::invalid_argument("scan_with_noise: v0 must be >= 0");
  if (n_seeds < 1) throw std::invalid_argument("scan_with_noise: n_seeds must be >= 1");
  const std::vector<double> deltas = grid_axis(grid.delta_min, grid.delta_max, grid.delta_count);
  const std::vector<double> mus = grid_axis(grid.mu_min, grid.mu_max, grid.mu_count);
  const int total = grid.delta_count * grid.mu_count;

  std::vector<PhasePoint> points(static_cast<std::size_t>(total));
  parallel_for_index(total, n_threads, [&](int idx) {
    const double delta = deltas[static_cast<std::size_t>(idx / grid.mu_count)];
    const double mu = mus[static_cast<std::size_t>(idx % grid.mu_count)];
    try {
      const ChainParams params{grid.n_sites, grid.t, delta, 0.0, mu};
      PhasePoint& p = points[static_cast<std::size_t>(idx)];
      p.delta = delta;
      p.mu = mu;
      p.n_seeds = n_seeds;
      int survived = 0;
      for (int s = 0; s < n_seeds; ++s) {
        const std::uint64_t draw =
            mode == NoiseMode::fresh_per_cell
                ? static_cast<std::uint64_t>(idx) * static_cast<std::uint64_t>(n_seeds) +
                      static_cast<std::uint64_t>(s)
                : static_cast<std::uint64_t>(s);
        const SitePotentials pots = sample_noise({v0, base_seed, draw}, grid.n_sites);
        const CanonicalForm canon = canonicalize(build_majorana_matrix(params, pots));
        const double eps1 = canon.epsilons[0];
        const double eps2 =
            grid.n_sites > 1 ? canon.epsilons[1] : std::numeric_limits<double>::quiet_NaN();
        if (detail::classify(grid, eps1, eps2)) ++survived;
        if (s == 0) {
          p.eps1 = eps1;
          p.eps2 = eps2;
        }
      }
      p.survival_fraction = static_cast<double>(survived) / static_cast<double>(n_seeds);
      p.has_zero_mode = p.survival_fraction > majority;
    } catch (const std::exception& e) {
      detail::rethrow_with_cell(std::make_pair(delta, mu), e);
    }
  });
  return points;
}

// Largest mu with a surviving zero mode, one value per delta row; NaN rows
// have no zero-mode cell at all.
inline std::vector<double> phase_boundary(const std::vector<PhasePoint>& points, int delta_count,
                                          int mu_count) {
  if (points.size() != static_cast<std::size_t>(delta_count) * static_cast<std::size_t>(mu_count))
    throw std::invalid_argument("phase_boundary: size mismatch with grid shape");
  std::vector<double> boundary(static_cast<std::size_t>(delta_count),
                               std::numeric_limits<double>::quiet_NaN());
  for (int di = 0; di < delta_count; ++di)
    for (int mi = 0; mi < mu_count; ++mi) {
      const PhasePoint& p = points[static_cast<std::size_t>(di * mu_count + mi)];
      if (p.has_zero_mode) boundary[static_cast<std::size_t>(di)] = p.mu;
    }
  return boundary;
}

}  // namespace majorana
