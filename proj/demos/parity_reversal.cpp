// Dot-driven reversal: sweep the bias on a quantum dot coupled to the end of
// a topological chain and watch the ground-state weight move between the two
// dot occupation states. A smaller coupling scale gives a sharper reversal
// around the resonance V = mu.
//
//   ./parity_reversal [n_sites] [scale]

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>

#include "majorana/majorana.hpp"

int main(int argc, char** argv) {
  majorana::DotSweepSpec spec;
  spec.chain.n_sites = argc > 1 ? std::atoi(argv[1]) : 50;
  spec.chain.delta_abs = 0.8;
  spec.chain.mu = 0.4;
  spec.coupling_scale = argc > 2 ? std::atof(argv[2]) : 0.1;
  spec.v_min = -2.6;
  spec.v_max = 3.4;
  spec.v_count = 31;
  spec.compute_exact = true;

  const majorana::SweepResult sweep = majorana::sweep_bias(spec);
  std::printf("chain of %d sites, coupling scale %g\n", spec.chain.n_sites, spec.coupling_scale);
  std::printf("coupling S = %.6f%+.6fi (|S| = %.6f), bare gap = %.6f\n", sweep.s.real(),
              sweep.s.imag(), std::abs(sweep.s), sweep.gap);
  std::printf("%zu bias points kept, %zu clamped outside the gap\n\n", sweep.points.size(),
              sweep.excluded_v.size());

  std::printf("%-8s %-10s %-10s %-12s %-12s\n", "V", "|c1|^2", "|c2|^2", "2*e_plus",
              "exact eps2");
  for (const majorana::SweepPoint& p : sweep.points)
    std::printf("%-8.2f %-10.6f %-10.6f %-12.6f %-12.6f\n", p.v, p.c1_abs2, p.c2_abs2,
                2.0 * p.e_plus, p.exact_eps2);
  std::printf("\nthe weights cross 1/2 at V = mu = %g; the exact chain keeps its zero mode at "
              "every bias\n",
              spec.chain.mu);
  return 0;
}
